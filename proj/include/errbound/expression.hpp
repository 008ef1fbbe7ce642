#pragma once

#include <memory>
#include <string>

#include "errbound/errors.hpp"

namespace errbound {

// Arithmetic expressions in the single variable t, supporting
// + - * / ^, unary minus, parentheses, numeric literals and exp(...).
// Parsed once, evaluated per node.
class Expression {
 public:
  static Expression parse(const std::string& source);

  double operator()(double t) const;
  const std::string& source() const { return source_; }

  struct Node;

 private:
  Expression(std::shared_ptr<const Node> root, std::string source)
      : root_(std::move(root)), source_(std::move(source)) {}
  std::shared_ptr<const Node> root_;
  std::string source_;
};

struct ExpressionError : ValidationError {
  ExpressionError(const std::string& msg, std::size_t position)
      : ValidationError(msg), position(position) {}
  std::size_t position;
};

}  // namespace errbound
