#pragma once

#include <span>
#include <vector>

#include "errbound/grid.hpp"
#include "errbound/model.hpp"
#include "errbound/surrogate.hpp"

namespace errbound {

struct EtaSeriesConfig {
  int max_order = 12;        // deepest series order this instance may compute
  double exp_budget = 600.0; // |q| beyond this switches the integrals to log space
};

// Table of the multi-index sums S[n][j] = sum over compositions
// j_1 + ... + j_n = j of orders[j_1] * ... * orders[j_n], built with the
// Cauchy-product recursion S[n][j] = sum_a S[n-1][j-a] * orders[a].
class ConvolutionTable {
 public:
  // Fills every S[n][j] with n <= up_to_n, j <= up_to_j. Requires
  // orders[0..up_to_j] to be present; idempotent for already-filled entries.
  void extend(std::span<const SampledFn> orders, int up_to_n, int up_to_j);

  bool has(int n, int j) const;
  const SampledFn& at(int n, int j) const;

  // Number of compositions of j into n non-negative parts.
  static std::int64_t composition_count(int n, int j);

 private:
  std::vector<std::vector<SampledFn>> rows_;  // rows_[n-1][j]
};

// The error-series orders of the defect equation
//   d(eta)/dt + f(v + eta, t) - f(v, t) + r(t) = 0,
// computed recursively on the shared grid. Order 0 absorbs the whole initial
// mismatch; every higher order starts at zero. Construction samples the
// residual, the Taylor rows F_n along the surrogate, and
// q = integral of F_1; orders are computed lazily and cached.
class EtaSeries {
 public:
  EtaSeries(OdeModel model, Surrogate surrogate, EtaSeriesConfig config = {});

  const TimeGrid& grid() const { return surrogate_.grid; }
  const OdeModel& model() const { return model_; }
  const Surrogate& surrogate() const { return surrogate_; }
  const EtaSeriesConfig& config() const { return config_; }

  const SampledFn& residual() const { return residual_; }
  const SampledFn& q() const { return q_; }
  double initial_mismatch() const { return initial_mismatch_; }

  // F_n sampled along the surrogate, 1 <= n <= max_order + 1.
  const SampledFn& taylor_row(int n) const;

  // eta_j; computes and caches orders 0..j on demand.
  const SampledFn& order(int j);
  int computed_orders() const { return static_cast<int>(orders_.size()); }

  // Node-wise sum of eta_0..eta_J.
  SampledFn sum_series(int J);

  ConvolutionTable& table() { return table_; }
  std::span<const SampledFn> orders() const { return orders_; }

  bool log_space() const { return log_space_; }

 private:
  void compute_next_order();
  SampledFn integrate_weighted(const SampledFn& w, double head) const;

  OdeModel model_;
  Surrogate surrogate_;
  EtaSeriesConfig config_;
  SampledFn residual_;
  SampledFn q_;
  std::vector<SampledFn> taylor_rows_;   // [n-1] holds F_n samples
  std::vector<bool> taylor_row_zero_;    // row is identically zero
  SampledFn exp_q_, exp_neg_q_;          // unused in log-space mode
  bool log_space_ = false;
  double initial_mismatch_ = 0.0;
  std::vector<SampledFn> orders_;
  ConvolutionTable table_;
};

// One-shot q = cumulative integral of F_1 along the surrogate.
SampledFn compute_q(const OdeModel& model, const Surrogate& s);

}  // namespace errbound
