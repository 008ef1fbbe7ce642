#pragma once

#include <vector>

#include "errbound/errors.hpp"

namespace errbound {

// Truncated power series in one expansion variable: c_0 + c_1 x + ... + c_N x^N.
// Evaluating a smooth right-hand side on Jet::variable(v, N) produces the
// Taylor coefficients of f around v directly, with the 1/n! factors included.
class Jet {
 public:
  explicit Jet(int order) : c_(static_cast<std::size_t>(order) + 1, 0.0) {}

  static Jet constant(double value, int order) {
    Jet j(order);
    j.c_[0] = value;
    return j;
  }

  // The series v + x: expansion variable seeded with derivative one.
  static Jet variable(double value, int order) {
    Jet j(order);
    j.c_[0] = value;
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double coeff(int k) const { return c_[k]; }
  double& coeff(int k) { return c_[k]; }
  const std::vector<double>& coeffs() const { return c_; }

 private:
  std::vector<double> c_;
};

Jet operator-(const Jet& a);
Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);

Jet operator+(const Jet& a, double s);
Jet operator+(double s, const Jet& a);
Jet operator-(const Jet& a, double s);
Jet operator-(double s, const Jet& a);
Jet operator*(const Jet& a, double s);
Jet operator*(double s, const Jet& a);
Jet operator/(const Jet& a, double s);
Jet operator/(double s, const Jet& a);

Jet exp(const Jet& a);
// Integer powers by repeated multiplication; exact for polynomial inputs.
Jet pow(const Jet& a, int n);
// Real exponent; requires a positive constant term.
Jet pow(const Jet& a, double p);

}  // namespace errbound
