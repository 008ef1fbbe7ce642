#include "errbound/jet.hpp"

#include <cmath>

namespace errbound {

namespace {

void require_same_order(const Jet& a, const Jet& b, const char* what) {
  if (a.order() != b.order())
    throw ValidationError(std::string(what) + ": jets of different truncation order");
}

}  // namespace

Jet operator-(const Jet& a) {
  Jet out(a.order());
  for (int k = 0; k <= a.order(); ++k) out.coeff(k) = -a.coeff(k);
  return out;
}

Jet operator+(const Jet& a, const Jet& b) {
  require_same_order(a, b, "jet add");
  Jet out(a.order());
  for (int k = 0; k <= a.order(); ++k) out.coeff(k) = a.coeff(k) + b.coeff(k);
  return out;
}

Jet operator-(const Jet& a, const Jet& b) {
  require_same_order(a, b, "jet sub");
  Jet out(a.order());
  for (int k = 0; k <= a.order(); ++k) out.coeff(k) = a.coeff(k) - b.coeff(k);
  return out;
}

Jet operator*(const Jet& a, const Jet& b) {
  require_same_order(a, b, "jet mul");
  const int n = a.order();
  Jet out(n);
  for (int k = 0; k <= n; ++k) {
    double s = 0.0;
    for (int i = 0; i <= k; ++i) s += a.coeff(i) * b.coeff(k - i);
    out.coeff(k) = s;
  }
  return out;
}

Jet operator/(const Jet& a, const Jet& b) {
  require_same_order(a, b, "jet div");
  if (b.coeff(0) == 0.0)
    throw SingularJetError("jet division by series with zero constant term");
  const int n = a.order();
  Jet out(n);
  for (int k = 0; k <= n; ++k) {
    double s = a.coeff(k);
    for (int i = 1; i <= k; ++i) s -= b.coeff(i) * out.coeff(k - i);
    out.coeff(k) = s / b.coeff(0);
  }
  return out;
}

Jet operator+(const Jet& a, double s) {
  Jet out = a;
  out.coeff(0) += s;
  return out;
}
Jet operator+(double s, const Jet& a) { return a + s; }

Jet operator-(const Jet& a, double s) { return a + (-s); }
Jet operator-(double s, const Jet& a) { return -a + s; }

Jet operator*(const Jet& a, double s) {
  Jet out(a.order());
  for (int k = 0; k <= a.order(); ++k) out.coeff(k) = a.coeff(k) * s;
  return out;
}
Jet operator*(double s, const Jet& a) { return a * s; }

Jet operator/(const Jet& a, double s) {
  Jet out(a.order());
  for (int k = 0; k <= a.order(); ++k) out.coeff(k) = a.coeff(k) / s;
  return out;
}

Jet operator/(double s, const Jet& a) { return Jet::constant(s, a.order()) / a; }

Jet exp(const Jet& a) {
  const int n = a.order();
  Jet out(n);
  out.coeff(0) = std::exp(a.coeff(0));
  for (int k = 1; k <= n; ++k) {
    double s = 0.0;
    for (int i = 1; i <= k; ++i) s += i * a.coeff(i) * out.coeff(k - i);
    out.coeff(k) = s / k;
  }
  return out;
}

Jet pow(const Jet& a, int n) {
  if (n < 0) return 1.0 / pow(a, -n);
  Jet out = Jet::constant(1.0, a.order());
  for (int i = 0; i < n; ++i) out = out * a;
  return out;
}

Jet pow(const Jet& a, double p) {
  if (a.coeff(0) <= 0.0)
    throw SingularJetError("jet pow with real exponent needs a positive constant term");
  const int n = a.order();
  Jet out(n);
  out.coeff(0) = std::pow(a.coeff(0), p);
  // From a*g' = p*g*a': k*a0*g_k = sum_{i=1..k} (i*(p+1) - k) * a_i * g_{k-i}.
  for (int k = 1; k <= n; ++k) {
    double s = 0.0;
    for (int i = 1; i <= k; ++i) s += (i * (p + 1.0) - k) * a.coeff(i) * out.coeff(k - i);
    out.coeff(k) = s / (k * a.coeff(0));
  }
  return out;
}

}  // namespace errbound
