#pragma once

#include "errbound/bounds.hpp"
#include "errbound/eta_series.hpp"
#include "errbound/model.hpp"
#include "errbound/surrogate.hpp"

namespace errbound {

// Ingredients of the guaranteed Riccati bound. q_up accumulates the
// non-negative part of F_1 = 2 C v + B and is non-decreasing; q_down the
// non-positive part and is non-increasing; their sum recovers q.
// R bounds the damped initial mismatch plus residual mass, K the weighted
// quadratic coefficient. The bound only applies where R*K*(t - t0) < 1.
struct ExactBoundConstants {
  SampledFn q_up;
  SampledFn q_down;
  double R = 0.0;
  double K = 0.0;
  std::vector<std::uint8_t> validity;  // R*K*(t - t0) < 1 per node
};

std::pair<SampledFn, SampledFn> split_q(const RiccatiModel& model, const Surrogate& s);

double compute_R(const RiccatiModel& model, const Surrogate& s, const SampledFn& residual,
                 const SampledFn& q_up, const SampledFn& q_down);

double compute_K(const RiccatiModel& model, const SampledFn& q_down);

ExactBoundConstants exact_bound_constants(const RiccatiModel& model, const Surrogate& s);

// R * (R K (t - t0))^j * e^{-q_down(t)}, the proven ceiling for |eta_j|.
SampledFn per_order_bound(const ExactBoundConstants& constants, int j,
                          const TimeGrid& grid);

// |sum of eta_0..eta_J| plus the closed geometric tail. Nodes past the point
// where R K (t - t0) reaches 1 are masked out and carry no value; if no node
// beyond t0 is valid the bound is inapplicable.
BoundCurve exact_bound(const RiccatiModel& model, const Surrogate& s, int J);
BoundCurve exact_bound(EtaSeries& series, int J, const ExactBoundConstants& constants);

// Tail values alone, for diagnostics; masked nodes carry zero.
SampledFn exact_bound_tail(const ExactBoundConstants& constants, int J,
                           const TimeGrid& grid);

// Smallest order making the tail smaller than eps everywhere, evaluated with
// the closed ceiling formula. Requires validity on the whole grid.
int select_J_for_tolerance(const ExactBoundConstants& constants, double eps,
                           const TimeGrid& grid);

}  // namespace errbound
