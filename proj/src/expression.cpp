#include "errbound/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

namespace errbound {

struct Expression::Node {
  enum class Op { Number, Var, Add, Sub, Mul, Div, Pow, Neg, Exp };
  Op op;
  double number = 0.0;
  std::shared_ptr<const Node> lhs, rhs;

  double eval(double t) const {
    switch (op) {
      case Op::Number: return number;
      case Op::Var: return t;
      case Op::Add: return lhs->eval(t) + rhs->eval(t);
      case Op::Sub: return lhs->eval(t) - rhs->eval(t);
      case Op::Mul: return lhs->eval(t) * rhs->eval(t);
      case Op::Div: return lhs->eval(t) / rhs->eval(t);
      case Op::Pow: return std::pow(lhs->eval(t), rhs->eval(t));
      case Op::Neg: return -lhs->eval(t);
      case Op::Exp: return std::exp(lhs->eval(t));
    }
    return 0.0;
  }
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src) {}

  NodePtr run() {
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size())
      throw ExpressionError("unexpected trailing input '" + src_.substr(pos_) + "'", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (true) {
      if (eat('+')) {
        lhs = make(Node::Op::Add, lhs, parse_term());
      } else if (eat('-')) {
        lhs = make(Node::Op::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    while (true) {
      if (eat('*')) {
        lhs = make(Node::Op::Mul, lhs, parse_unary());
      } else if (eat('/')) {
        lhs = make(Node::Op::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    if (eat('-')) return make(Node::Op::Neg, parse_unary());
    if (eat('+')) return parse_unary();
    return parse_power();
  }

  // Right-associative; the exponent may carry its own unary sign.
  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (eat('^')) return make(Node::Op::Pow, base, parse_unary());
    return base;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) throw ExpressionError("unexpected end of expression", pos_);
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = parse_expr();
      if (!eat(')')) throw ExpressionError("missing ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
    throw ExpressionError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr parse_number() {
    const char* begin = src_.data() + pos_;
    const char* end = src_.data() + src_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc())
      throw ExpressionError("malformed number", pos_);
    pos_ += static_cast<std::size_t>(ptr - begin);
    auto n = std::make_shared<Node>();
    n->op = Node::Op::Number;
    n->number = value;
    return n;
  }

  NodePtr parse_ident() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    const std::string name = src_.substr(start, pos_ - start);
    if (name == "t") return make(Node::Op::Var);
    if (name == "exp") {
      if (!eat('(')) throw ExpressionError("exp expects '('", pos_);
      NodePtr arg = parse_expr();
      if (!eat(')')) throw ExpressionError("missing ')' after exp argument", pos_);
      return make(Node::Op::Exp, arg);
    }
    throw ExpressionError("unknown identifier '" + name + "'", start);
  }

  const std::string& src_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& source) {
  Parser p(source);
  return Expression(p.run(), source);
}

double Expression::operator()(double t) const { return root_->eval(t); }

}  // namespace errbound
