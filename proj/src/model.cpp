#include "errbound/model.hpp"

#include <cmath>
#include <utility>

#include "errbound/surrogate.hpp"

namespace errbound {

std::vector<double> taylor_coeffs_jet(const JetProgram& f, double v, double t,
                                      int max_order) {
  if (max_order < 0) throw ValidationError("taylor_coeffs_jet: negative order");
  Jet result = f(Jet::variable(v, max_order), t);
  return result.coeffs();
}

OdeModel::OdeModel(std::string name, TaylorFn taylor, double t0, double u0)
    : name_(std::move(name)), taylor_(std::move(taylor)), t0_(t0), u0_(u0) {
  if (!std::isfinite(t0_) || !std::isfinite(u0_))
    throw ValidationError("OdeModel: initial condition must be finite and real");
}

OdeModel OdeModel::from_jet_program(std::string name, JetProgram f, double t0, double u0) {
  TaylorFn taylor = [f = std::move(f)](double v, double t, int max_order) {
    return taylor_coeffs_jet(f, v, t, max_order);
  };
  return OdeModel(std::move(name), std::move(taylor), t0, u0);
}

std::vector<double> OdeModel::taylor_coeffs(double v, double t, int max_order) const {
  std::vector<double> c = taylor_(v, t, max_order);
  if (static_cast<int>(c.size()) != max_order + 1)
    throw Error("OdeModel: taylor provider returned wrong coefficient count");
  return c;
}

RiccatiModel::RiccatiModel(std::string name, ScalarFn A, ScalarFn B, ScalarFn C,
                           double t0, double u0)
    : name_(std::move(name)),
      A_(std::move(A)),
      B_(std::move(B)),
      C_(std::move(C)),
      t0_(t0),
      u0_(u0) {
  if (!std::isfinite(t0_) || !std::isfinite(u0_))
    throw ValidationError("RiccatiModel: initial condition must be finite and real");
}

OdeModel RiccatiModel::to_ode_model() const {
  TaylorFn taylor = [A = A_, B = B_, C = C_](double v, double t, int max_order) {
    const double a = A(t), b = B(t), c = C(t);
    std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
    out[0] = c * v * v + b * v + a;
    if (max_order >= 1) out[1] = 2.0 * c * v + b;
    if (max_order >= 2) out[2] = c;
    return out;
  };
  return OdeModel(name_, std::move(taylor), t0_, u0_);
}

SampledFn residual(const OdeModel& model, const Surrogate& s) {
  if (s.grid.t_start != model.t0())
    throw GridMismatchError("residual: surrogate grid does not start at the model t0");
  require_same_grid(s.v, s.dv, "residual");
  SampledFn r(s.grid);
  for (int i = 0; i < s.grid.n_points; ++i)
    r.values[i] = s.dv.values[i] + model.f(s.v.values[i], s.grid.node(i));
  require_finite(r, "residual");
  return r;
}

double loss(const OdeModel& model, const Surrogate& s) {
  SampledFn r = residual(model, s);
  SampledFn r2 = map_fn(r, [](double x) { return x * x; });
  const double mean_sq = cumulative_trapezoid(r2).values.back() / s.grid.length();
  const double ic = model.u0() - s.v_at_start();
  return mean_sq + ic * ic;
}

OdeModel preset_population() {
  constexpr double T = 10.0, k = 5.0, alpha = 2.0, beta = -40.0;
  JetProgram f = [=](const Jet& u, double) {
    return -T * u * (1.0 - u / k) + alpha * u + beta * u / (1.0 + u * u);
  };
  return OdeModel::from_jet_program("population", std::move(f), /*t0=*/0.0, /*u0=*/2.0);
}

RiccatiModel preset_cosmology() {
  constexpr double u0 = 6.91;
  constexpr double gamma = 1.47e4;
  constexpr double beta = 2.56e-4;
  constexpr double g = -1.16;
  constexpr int n = 2;
  ScalarFn A = [=](double t) {
    const double e = std::exp(u0 * t);
    const double w = 1.0 - e;
    const double wn = std::pow(w, n);
    const double num = 3.0 * u0 * u0 * e * (1.0 + g * wn - g * wn * wn);
    const double den = 2.0 * (beta + e * (1.0 + beta * gamma * std::exp(4.0 * u0 * t)));
    return num / den;
  };
  ScalarFn B = [=](double t) {
    const double num = u0 * (1.0 + 4.0 * beta * gamma * std::exp(3.0 * u0 * t));
    const double den =
        2.0 * (1.0 + beta * std::exp(-u0 * t) * (1.0 + gamma * std::exp(4.0 * u0 * t)));
    return num / den;
  };
  ScalarFn C = [](double) { return 1.0; };
  return RiccatiModel("cosmology", std::move(A), std::move(B), std::move(C),
                      /*t0=*/-1.0, /*u0=*/u0);
}

OdeModel linear_model(double lambda, double t0, double u0) {
  JetProgram f = [lambda](const Jet& u, double) { return lambda * u; };
  return OdeModel::from_jet_program("linear", std::move(f), t0, u0);
}

}  // namespace errbound
