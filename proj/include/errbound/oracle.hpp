#pragma once

#include <cstdint>

#include "errbound/grid.hpp"
#include "errbound/model.hpp"

namespace errbound {

struct OracleStats {
  std::int64_t accepted = 0;
  std::int64_t rejected = 0;
  double max_error_estimate = 0.0;  // largest accepted normalized local error
};

// Ground-truth solution sampled on the requested grid. du holds -f(u_i, t_i),
// i.e. the governing equation's derivative at the computed samples.
struct OracleSolution {
  TimeGrid grid;
  SampledFn u;
  SampledFn du;
  OracleStats stats;
};

// Adaptive Dormand-Prince 5(4) with PI step control and quartic dense output,
// integrating du/dt = -f(u, t) from (model.t0, model.u0) across the grid.
OracleSolution solve_reference(const OdeModel& model, const TimeGrid& grid,
                               double rtol = 1e-11, double atol = 1e-16);

// Fixed-step endpoint value with the same tableau; used to probe the
// integrator's convergence order.
double integrate_fixed_steps(const OdeModel& model, double t_end, int n_steps);

}  // namespace errbound
