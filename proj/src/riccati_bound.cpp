#include "errbound/riccati_bound.hpp"

#include <cmath>
#include <string>

namespace errbound {

namespace {

SampledFn sample_f1(const RiccatiModel& model, const Surrogate& s) {
  SampledFn f1(s.grid);
  for (int i = 0; i < s.grid.n_points; ++i) {
    const double t = s.grid.node(i);
    f1.values[i] = 2.0 * model.C(t) * s.v.values[i] + model.B(t);
  }
  require_finite(f1, "split_q: F_1");
  return f1;
}

int first_invalid_node(const ExactBoundConstants& c) {
  for (std::size_t i = 0; i < c.validity.size(); ++i)
    if (!c.validity[i]) return static_cast<int>(i);
  return static_cast<int>(c.validity.size());
}

}  // namespace

std::pair<SampledFn, SampledFn> split_q(const RiccatiModel& model, const Surrogate& s) {
  SampledFn f1 = sample_f1(model, s);
  SampledFn up = map_fn(f1, [](double x) { return std::max(0.0, x); });
  SampledFn down = map_fn(f1, [](double x) { return std::min(0.0, x); });
  return {cumulative_trapezoid(up), cumulative_trapezoid(down)};
}

double compute_R(const RiccatiModel& model, const Surrogate& s, const SampledFn& residual,
                 const SampledFn& q_up, const SampledFn& q_down) {
  require_same_grid(residual, q_up, "compute_R");
  require_same_grid(residual, q_down, "compute_R");
  const double ic = std::abs(model.u0() - s.v_at_start());
  SampledFn weighted =
      zip_fn(residual, q_down, [](double r, double qd) { return std::abs(r) * std::exp(qd); });
  SampledFn mass = cumulative_trapezoid(weighted);
  SampledFn candidate = zip_fn(q_up, mass, [ic](double qu, double m) {
    return ic * std::exp(-qu) + m;
  });
  return grid_max(candidate);
}

double compute_K(const RiccatiModel& model, const SampledFn& q_down) {
  SampledFn candidate(q_down.grid);
  for (int i = 0; i < q_down.size(); ++i)
    candidate.values[i] =
        std::abs(model.C(q_down.grid.node(i))) * std::exp(-q_down.values[i]);
  require_finite(candidate, "compute_K");
  return grid_max(candidate);
}

ExactBoundConstants exact_bound_constants(const RiccatiModel& model, const Surrogate& s) {
  if (s.grid.t_start != model.t0())
    throw GridMismatchError(
        "exact_bound_constants: surrogate grid does not start at the model t0");
  ExactBoundConstants c{SampledFn(s.grid), SampledFn(s.grid), 0.0, 0.0, {}};
  auto [up, down] = split_q(model, s);
  c.q_up = std::move(up);
  c.q_down = std::move(down);
  SampledFn r = residual(model.to_ode_model(), s);
  c.R = compute_R(model, s, r, c.q_up, c.q_down);
  c.K = compute_K(model, c.q_down);
  c.validity.resize(static_cast<std::size_t>(s.grid.n_points), 0);
  for (int i = 0; i < s.grid.n_points; ++i) {
    const double x = c.R * c.K * (s.grid.node(i) - s.grid.t_start);
    c.validity[static_cast<std::size_t>(i)] = x < 1.0 ? 1 : 0;
  }
  return c;
}

SampledFn per_order_bound(const ExactBoundConstants& constants, int j,
                          const TimeGrid& grid) {
  if (j < 0) throw ValidationError("per_order_bound: negative order");
  SampledFn out(grid);
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = constants.R * constants.K * (grid.node(i) - grid.t_start);
    out.values[i] = constants.R * std::pow(x, j) * std::exp(-constants.q_down.values[i]);
  }
  return out;
}

SampledFn exact_bound_tail(const ExactBoundConstants& constants, int J,
                           const TimeGrid& grid) {
  SampledFn tail(grid);
  for (int i = 0; i < grid.n_points; ++i) {
    if (!constants.validity[static_cast<std::size_t>(i)]) continue;
    const double x = constants.R * constants.K * (grid.node(i) - grid.t_start);
    tail.values[i] = constants.R * std::pow(x, J + 1) *
                     std::exp(-constants.q_down.values[i]) / (1.0 - x);
  }
  return tail;
}

BoundCurve exact_bound(EtaSeries& series, int J, const ExactBoundConstants& constants) {
  if (J < 0) throw ValidationError("exact_bound: negative order");
  const TimeGrid& grid = series.grid();
  const int cutoff = first_invalid_node(constants);
  if (cutoff <= 1) {
    const double rk = constants.R * constants.K * grid.length();
    throw BoundInapplicableError(
        "exact_bound: R*K*(t - t0) reaches 1 before the first interior node "
        "(R*K*(t_end - t0) = " +
            std::to_string(rk) + ")",
        rk);
  }

  BoundCurve curve(grid);
  curve.kind = BoundKind::exact;
  curve.J = J;
  curve.R = constants.R;
  curve.K = constants.K;
  curve.valid.assign(constants.validity.begin(), constants.validity.end());

  SampledFn head = series.sum_series(J);
  SampledFn tail = exact_bound_tail(constants, J, grid);
  for (int i = 0; i < grid.n_points; ++i)
    curve.values[i] = curve.valid[static_cast<std::size_t>(i)]
                          ? std::abs(head.values[i]) + tail.values[i]
                          : 0.0;
  for (int j = 0; j <= J; ++j) {
    curve.diagnostics.mean_abs.push_back(grid_mean_abs(series.order(j)));
    SampledFn a = map_fn(series.order(j), [](double x) { return std::abs(x); });
    curve.diagnostics.max_abs.push_back(grid_max(a));
  }
  curve.converged = cutoff == grid.n_points;
  return curve;
}

BoundCurve exact_bound(const RiccatiModel& model, const Surrogate& s, int J) {
  ExactBoundConstants constants = exact_bound_constants(model, s);
  EtaSeries series(model.to_ode_model(), s, EtaSeriesConfig{std::max(J, 12), 600.0});
  return exact_bound(series, J, constants);
}

int select_J_for_tolerance(const ExactBoundConstants& constants, double eps,
                           const TimeGrid& grid) {
  if (!(eps > 0.0)) throw ValidationError("select_J_for_tolerance: eps must be > 0");
  for (std::size_t i = 0; i < constants.validity.size(); ++i)
    if (!constants.validity[i])
      throw BoundInapplicableError(
          "select_J_for_tolerance: R*K*(t - t0) must stay below 1 on the whole "
          "domain; first failure at node " +
              std::to_string(i),
          constants.R * constants.K * grid.length());
  if (constants.R == 0.0) return 0;

  // Node 0 is excluded: the ratio tends to zero as t -> t0.
  double worst = 0.0;
  for (int i = 1; i < grid.n_points; ++i) {
    const double x = constants.R * constants.K * (grid.node(i) - grid.t_start);
    if (x == 0.0) continue;
    const double num =
        std::log(eps / constants.R * (1.0 - x) * std::exp(constants.q_down.values[i]));
    const double candidate = num / std::log(x);
    worst = std::max(worst, candidate);
  }
  const double j_real = std::ceil(worst - 1.0);
  return j_real < 0.0 ? 0 : static_cast<int>(j_real);
}

}  // namespace errbound
