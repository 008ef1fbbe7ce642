#include "errbound/eta_series.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace errbound {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// value = sign * exp(ln); sign in {-1, 0, +1}.
struct SignedLog {
  double ln = kNegInf;
  double sign = 0.0;
};

SignedLog sl_from(double x) {
  if (x == 0.0) return {};
  return {std::log(std::abs(x)), x > 0.0 ? 1.0 : -1.0};
}

SignedLog sl_add(SignedLog a, SignedLog b) {
  if (a.sign == 0.0) return b;
  if (b.sign == 0.0) return a;
  if (a.ln < b.ln) std::swap(a, b);
  const double m = a.sign + b.sign * std::exp(b.ln - a.ln);
  if (m == 0.0) return {};
  return {a.ln + std::log(std::abs(m)), m > 0.0 ? 1.0 : -1.0};
}

SignedLog sl_negate(SignedLog a) { return {a.ln, -a.sign}; }

}  // namespace

void ConvolutionTable::extend(std::span<const SampledFn> orders, int up_to_n,
                              int up_to_j) {
  if (up_to_n < 1 || up_to_j < 0) return;
  if (static_cast<int>(orders.size()) <= up_to_j)
    throw ValidationError("ConvolutionTable: extend requires orders 0.." +
                          std::to_string(up_to_j));
  if (static_cast<int>(rows_.size()) < up_to_n) rows_.resize(up_to_n);

  for (int j = static_cast<int>(rows_[0].size()); j <= up_to_j; ++j)
    rows_[0].push_back(orders[j]);

  for (int n = 2; n <= up_to_n; ++n) {
    auto& row = rows_[n - 1];
    auto& prev = rows_[n - 2];
    for (int j = static_cast<int>(row.size()); j <= up_to_j; ++j) {
      SampledFn s(orders[0].grid);
      for (int a = 0; a <= j; ++a) {
        const SampledFn& left = prev[j - a];
        const SampledFn& eta = orders[a];
        for (int i = 0; i < s.size(); ++i)
          s.values[i] += left.values[i] * eta.values[i];
      }
      row.push_back(std::move(s));
    }
  }
}

bool ConvolutionTable::has(int n, int j) const {
  return n >= 1 && j >= 0 && n <= static_cast<int>(rows_.size()) &&
         j < static_cast<int>(rows_[n - 1].size());
}

const SampledFn& ConvolutionTable::at(int n, int j) const {
  if (!has(n, j))
    throw Error("ConvolutionTable: S[" + std::to_string(n) + "][" + std::to_string(j) +
                "] not built");
  return rows_[n - 1][j];
}

std::int64_t ConvolutionTable::composition_count(int n, int j) {
  // binomial(j + n - 1, n - 1)
  std::int64_t c = 1;
  for (int i = 1; i <= n - 1; ++i) c = c * (j + i) / i;
  return c;
}

EtaSeries::EtaSeries(OdeModel model, Surrogate surrogate, EtaSeriesConfig config)
    : model_(std::move(model)),
      surrogate_(std::move(surrogate)),
      config_(config),
      residual_(errbound::residual(model_, surrogate_)),
      q_(surrogate_.grid),
      exp_q_(surrogate_.grid),
      exp_neg_q_(surrogate_.grid) {
  if (config_.max_order < 0)
    throw ValidationError("EtaSeries: max_order must be non-negative");

  const TimeGrid& g = surrogate_.grid;
  const int rows = config_.max_order + 1;
  taylor_rows_.assign(rows, SampledFn(g));
  taylor_row_zero_.assign(rows, true);
  for (int i = 0; i < g.n_points; ++i) {
    const std::vector<double> c =
        model_.taylor_coeffs(surrogate_.v.values[i], g.node(i), rows);
    for (int n = 1; n <= rows; ++n) {
      taylor_rows_[n - 1].values[i] = c[n];
      if (c[n] != 0.0) taylor_row_zero_[n - 1] = false;
    }
  }
  for (int n = 1; n <= rows; ++n)
    require_finite(taylor_rows_[n - 1], "EtaSeries: Taylor coefficients");

  q_ = cumulative_trapezoid(taylor_rows_[0]);
  double q_extreme = 0.0;
  for (double v : q_.values) q_extreme = std::max(q_extreme, std::abs(v));
  log_space_ = q_extreme > config_.exp_budget;
  if (!log_space_) {
    exp_q_ = map_fn(q_, [](double x) { return std::exp(x); });
    exp_neg_q_ = map_fn(q_, [](double x) { return std::exp(-x); });
  }

  initial_mismatch_ = model_.u0() - surrogate_.v_at_start();
}

const SampledFn& EtaSeries::taylor_row(int n) const {
  if (n < 1 || n > static_cast<int>(taylor_rows_.size()))
    throw ValidationError("EtaSeries: Taylor row " + std::to_string(n) +
                          " outside the configured order cap");
  return taylor_rows_[n - 1];
}

// e^{-q(t)} * (head - integral_{t0}^t w e^{q}), the shared shape of every
// series order. In log-space mode the running integral is accumulated as a
// signed log magnitude so that e^{q} never materializes on its own.
SampledFn EtaSeries::integrate_weighted(const SampledFn& w, double head) const {
  const TimeGrid& g = surrogate_.grid;
  SampledFn out(g);
  int bad_node = -1;
  if (!log_space_) {
    const double h = g.step();
    double acc = 0.0;
    out.values[0] = head;
    for (int i = 1; i < g.n_points; ++i) {
      acc += h * 0.5 *
             (w.values[i] * exp_q_.values[i] + w.values[i - 1] * exp_q_.values[i - 1]);
      out.values[i] = exp_neg_q_.values[i] * (head - acc);
      if (!std::isfinite(out.values[i]) && bad_node < 0) bad_node = i;
    }
  } else {
    const double log_half_h = std::log(0.5 * g.step());
    const SignedLog head_sl = sl_from(head);
    SignedLog acc;  // running value of the weighted integral
    SignedLog prev_term = sl_from(w.values[0]);
    prev_term.ln += q_.values[0];
    out.values[0] = head;
    for (int i = 1; i < g.n_points; ++i) {
      SignedLog term = sl_from(w.values[i]);
      term.ln += q_.values[i];
      SignedLog incr = sl_add(term, prev_term);
      incr.ln += log_half_h;
      acc = sl_add(acc, incr);
      prev_term = term;
      const SignedLog total = sl_add(head_sl, sl_negate(acc));
      out.values[i] = total.sign * std::exp(total.ln - q_.values[i]);
      if (!std::isfinite(out.values[i]) && bad_node < 0) bad_node = i;
    }
  }
  if (bad_node >= 0)
    throw OverflowError("EtaSeries: series order overflows double range at node " +
                            std::to_string(bad_node) + " (t = " +
                            std::to_string(g.node(bad_node)) + ")",
                        bad_node, g.node(bad_node));
  return out;
}

void EtaSeries::compute_next_order() {
  const int j = static_cast<int>(orders_.size());
  const TimeGrid& g = surrogate_.grid;
  if (j == 0) {
    orders_.push_back(integrate_weighted(residual_, initial_mismatch_));
    return;
  }
  SampledFn w(g);
  for (int n = 2; n <= j + 1; ++n) {
    if (taylor_row_zero_[n - 1]) continue;  // term drops out; skip its table row
    table_.extend(orders_, n, j + 1 - n);
    const SampledFn& f_row = taylor_rows_[n - 1];
    const SampledFn& s_row = table_.at(n, j + 1 - n);
    for (int i = 0; i < g.n_points; ++i)
      w.values[i] += f_row.values[i] * s_row.values[i];
  }
  orders_.push_back(integrate_weighted(w, 0.0));
}

const SampledFn& EtaSeries::order(int j) {
  if (j < 0) throw ValidationError("EtaSeries: negative order requested");
  if (j > config_.max_order)
    throw ValidationError("EtaSeries: order " + std::to_string(j) +
                          " beyond the configured cap " +
                          std::to_string(config_.max_order));
  while (computed_orders() <= j) compute_next_order();
  return orders_[j];
}

SampledFn EtaSeries::sum_series(int J) {
  order(J);
  SampledFn sum(surrogate_.grid);
  for (int j = 0; j <= J; ++j)
    for (int i = 0; i < sum.size(); ++i) sum.values[i] += orders_[j].values[i];
  return sum;
}

SampledFn compute_q(const OdeModel& model, const Surrogate& s) {
  if (s.grid.t_start != model.t0())
    throw GridMismatchError("compute_q: surrogate grid does not start at the model t0");
  SampledFn f1(s.grid);
  for (int i = 0; i < s.grid.n_points; ++i)
    f1.values[i] = model.taylor_coeffs(s.v.values[i], s.grid.node(i), 1)[1];
  return cumulative_trapezoid(f1);
}

}  // namespace errbound
