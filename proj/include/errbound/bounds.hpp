#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "errbound/eta_series.hpp"

namespace errbound {

// Tolerance pairs for truncation-order selection. The P pair must be strictly
// looser than the J pair in both components.
struct ToleranceConfig {
  double eps_abs_P = 1e-6;
  double eps_rel_P = 1e-3;
  double eps_abs_J = 1e-7;
  double eps_rel_J = 1e-4;
  int max_order = 12;

  void validate() const;
};

enum class BoundKind { loose, tight, exact };

struct OrderDiagnostics {
  std::vector<double> mean_abs;  // trapezoidal mean of |eta_j|, j = 0..J
  std::vector<double> max_abs;   // grid max of |eta_j|
  bool selection_ok = true;      // both order searches met their criterion
  bool convergence_at_J = true;  // decreasing-order check at J
  bool convergence_at_P = true;  // recorded only, never enforced
};

struct BoundCurve {
  BoundKind kind;
  SampledFn values;
  std::optional<int> P;  // engaged for tight/exact curves
  int J = 0;
  bool converged = true;
  OrderDiagnostics diagnostics;
  std::vector<std::uint8_t> valid;  // per-node applicability mask
  std::optional<double> R, K;       // exact-bound constants

  explicit BoundCurve(const TimeGrid& g)
      : kind(BoundKind::loose),
        values(g),
        valid(static_cast<std::size_t>(g.n_points), 1) {}
};

// Sum of |eta_j| up to J.
BoundCurve loose_bound(EtaSeries& series, int J);

// |sum of the first P+1 orders| plus the absolute values of orders P+1..J.
// With P = 0 this reproduces loose_bound bit for bit.
BoundCurve tight_bound(EtaSeries& series, int P, int J);

enum class TolerancePair { P, J };

// Smallest order m in [start_from, max_order] with
// |eta_m(t)| < eps_abs + eps_rel |v(t)| at every node. Throws
// NonConvergenceError (carrying the best candidate and its violation) when no
// order qualifies.
int select_order(EtaSeries& series, const ToleranceConfig& tol, TolerancePair which,
                 int start_from = 0);

// True when every previously kept order dominates the newest one:
// max |eta_J| < mean |eta_j| for all j < J. Vacuously true at J = 0.
bool check_convergence(EtaSeries& series, int J);
bool check_convergence(std::span<const SampledFn> orders, int J);

// Full order-selection pipeline: picks P with the loose pair, resumes the J
// search from P with the tight pair, runs the convergence check at J, and
// returns the tight curve. Selection failure or a failed convergence check
// flags the curve instead of aborting.
BoundCurve approximate_bound_pipeline(const OdeModel& model, const Surrogate& s,
                                      const ToleranceConfig& tol);
BoundCurve approximate_bound_pipeline(EtaSeries& series, const ToleranceConfig& tol);

}  // namespace errbound
