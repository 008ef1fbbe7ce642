#include "errbound/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace errbound {

void ToleranceConfig::validate() const {
  if (!(eps_abs_P > 0 && eps_rel_P > 0 && eps_abs_J > 0 && eps_rel_J > 0))
    throw ValidationError("ToleranceConfig: tolerances must be positive");
  if (!(eps_abs_P > eps_abs_J && eps_rel_P > eps_rel_J))
    throw ValidationError("ToleranceConfig: the P pair must be looser than the J pair");
  if (max_order < 0) throw ValidationError("ToleranceConfig: max_order must be >= 0");
}

namespace {

void fill_diagnostics(EtaSeries& series, int J, OrderDiagnostics& d) {
  d.mean_abs.clear();
  d.max_abs.clear();
  for (int j = 0; j <= J; ++j) {
    SampledFn a = map_fn(series.order(j), [](double x) { return std::abs(x); });
    d.mean_abs.push_back(grid_mean_abs(series.order(j)));
    d.max_abs.push_back(grid_max(a));
  }
}

// Shared accumulation so that tight(0, J) and loose(J) are bit-identical.
SampledFn signed_head_plus_abs_tail(EtaSeries& series, int P, int J) {
  series.order(J);
  SampledFn head(series.grid());
  for (int j = 0; j <= P; ++j) {
    const SampledFn& eta = series.order(j);
    for (int i = 0; i < head.size(); ++i) head.values[i] += eta.values[i];
  }
  SampledFn out = map_fn(head, [](double x) { return std::abs(x); });
  for (int j = P + 1; j <= J; ++j) {
    const SampledFn& eta = series.order(j);
    for (int i = 0; i < out.size(); ++i) out.values[i] += std::abs(eta.values[i]);
  }
  return out;
}

// Worst violation of |eta_m| < eps_abs + eps_rel |v| over the grid;
// negative means the criterion holds everywhere.
double criterion_margin(EtaSeries& series, int m, double eps_abs, double eps_rel) {
  const SampledFn& eta = series.order(m);
  const SampledFn& v = series.surrogate().v;
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < eta.size(); ++i) {
    const double allowance = eps_abs + eps_rel * std::abs(v.values[i]);
    worst = std::max(worst, std::abs(eta.values[i]) - allowance);
  }
  return worst;
}

}  // namespace

BoundCurve loose_bound(EtaSeries& series, int J) {
  BoundCurve curve(series.grid());
  curve.kind = BoundKind::loose;
  curve.J = J;
  curve.values = signed_head_plus_abs_tail(series, 0, J);
  fill_diagnostics(series, J, curve.diagnostics);
  return curve;
}

BoundCurve tight_bound(EtaSeries& series, int P, int J) {
  if (P < 0 || P > J)
    throw ValidationError("tight_bound: need 0 <= P <= J, got P = " + std::to_string(P) +
                          ", J = " + std::to_string(J));
  BoundCurve curve(series.grid());
  curve.kind = BoundKind::tight;
  curve.P = P;
  curve.J = J;
  curve.values = signed_head_plus_abs_tail(series, P, J);
  fill_diagnostics(series, J, curve.diagnostics);
  return curve;
}

int select_order(EtaSeries& series, const ToleranceConfig& tol, TolerancePair which,
                 int start_from) {
  tol.validate();
  const double eps_abs = which == TolerancePair::P ? tol.eps_abs_P : tol.eps_abs_J;
  const double eps_rel = which == TolerancePair::P ? tol.eps_rel_P : tol.eps_rel_J;
  int best_order = start_from;
  double best_margin = std::numeric_limits<double>::infinity();
  for (int m = start_from; m <= tol.max_order; ++m) {
    const double margin = criterion_margin(series, m, eps_abs, eps_rel);
    if (margin < 0.0) return m;
    if (margin < best_margin) {
      best_margin = margin;
      best_order = m;
    }
  }
  throw NonConvergenceError(
      "select_order: no order up to " + std::to_string(tol.max_order) +
          " meets the tolerance; best was order " + std::to_string(best_order) +
          " violating by " + std::to_string(best_margin),
      best_order, best_margin);
}

bool check_convergence(std::span<const SampledFn> orders, int J) {
  if (J < 0 || J >= static_cast<int>(orders.size()))
    throw ValidationError("check_convergence: orders 0..J must be present");
  double max_j = 0.0;
  for (double x : orders[J].values) max_j = std::max(max_j, std::abs(x));
  for (int j = 0; j < J; ++j)
    if (!(max_j < grid_mean_abs(orders[j]))) return false;
  return true;
}

bool check_convergence(EtaSeries& series, int J) {
  series.order(J);
  return check_convergence(series.orders(), J);
}

BoundCurve approximate_bound_pipeline(EtaSeries& series, const ToleranceConfig& tol) {
  tol.validate();
  bool selection_ok = true;
  int P = 0;
  int J = 0;
  try {
    P = select_order(series, tol, TolerancePair::P, 0);
    J = select_order(series, tol, TolerancePair::J, P);
  } catch (const NonConvergenceError& e) {
    selection_ok = false;
    P = std::min(P, e.best_order);
    J = std::max(P, e.best_order);
  } catch (const OverflowError&) {
    // Orders blew past double range: settle for what was computed.
    selection_ok = false;
    J = std::max(0, series.computed_orders() - 1);
    P = std::min(P, J);
  }

  BoundCurve curve = tight_bound(series, P, J);
  curve.diagnostics.selection_ok = selection_ok;
  curve.diagnostics.convergence_at_J = check_convergence(series, J);
  curve.diagnostics.convergence_at_P = check_convergence(series, P);
  curve.converged = selection_ok && curve.diagnostics.convergence_at_J;
  return curve;
}

BoundCurve approximate_bound_pipeline(const OdeModel& model, const Surrogate& s,
                                      const ToleranceConfig& tol) {
  tol.validate();
  EtaSeries series(model, s, EtaSeriesConfig{tol.max_order, 600.0});
  return approximate_bound_pipeline(series, tol);
}

}  // namespace errbound
