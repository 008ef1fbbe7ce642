#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "errbound/bounds.hpp"
#include "errbound/riccati_bound.hpp"

namespace errbound {

struct ExperimentOptions {
  std::string out_dir;
  std::uint64_t seed = 20240101;
  int n_points = 10001;
  int mode_count = 3;
  std::vector<double> scales;  // empty = per-figure defaults
  ToleranceConfig tol;         // approximate-bound experiment
  double eps_tail = 1e-8;      // exact-bound experiment
};

// Per-surrogate results of the approximate-bound experiment.
struct ApproxRung {
  double scale = 0.0;
  double loss = 0.0;
  int P = 0, J = 0;
  bool converged = false;
  double sup_error = 0.0;
  double sup_bound = 0.0;
  double coverage = 0.0;  // fraction of nodes with bound >= |error|
};

// Per-surrogate results of the exact-bound experiment, with the bound
// evaluated at J = 0, J = 1 and J chosen for the tail tolerance.
struct ExactRung {
  double scale = 0.0;
  double loss = 0.0;
  double R = 0.0, K = 0.0;
  int J_eps = 0;
  double tail_sup = 0.0;        // sup of the tail term at J_eps
  double sup_error = 0.0;
  double coverage_J0 = 0.0;
  double coverage_J1 = 0.0;
  double coverage_Jeps = 0.0;
  double sup_gap_Jeps = 0.0;    // sup of (bound - |error|) at J_eps
  double sup_series_dev = 0.0;  // sup of |sum eta_j - (u - v)| at J_eps
};

struct ApproxExperimentReport {
  std::vector<ApproxRung> rungs;
};
struct ExactExperimentReport {
  std::vector<ExactRung> rungs;
};

// Builds the loss ladder on the population problem, runs the order-selection
// pipeline per rung, and writes error/bound/orders CSVs plus constants.txt
// under out_dir/rung<i>/ and a summary.csv.
ApproxExperimentReport run_experiment_approx(const ExperimentOptions& opt);

// Same structure on the structure-growth Riccati problem with the guaranteed
// bound at the three orders.
ExactExperimentReport run_experiment_exact(const ExperimentOptions& opt);

}  // namespace errbound
