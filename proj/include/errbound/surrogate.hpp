#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "errbound/grid.hpp"
#include "errbound/model.hpp"
#include "errbound/oracle.hpp"

namespace errbound {

struct SurrogateProvenance {
  enum class Kind { PerturbedOracle, ExternalCsv, Analytic };
  Kind kind = Kind::Analytic;
  double scale = 0.0;
  int mode_count = 0;
  std::uint64_t seed = 0;
  std::string source;  // file path or construction name
};

// An approximate solution sampled on a grid together with its exact
// derivative channel. The derivative is never produced by differencing v.
struct Surrogate {
  TimeGrid grid;
  SampledFn v;
  SampledFn dv;
  SurrogateProvenance provenance;

  double v_at_start() const { return v.values.front(); }
};

// Reference solution plus a smooth seeded perturbation of unit sup-norm
// scaled by `scale`; the derivative channel carries the analytic derivative
// of the perturbation.
Surrogate perturbed_oracle(const OdeModel& model, const TimeGrid& grid, double scale,
                           int mode_count, std::uint64_t seed);

// Same, reusing an already computed reference solution.
Surrogate perturbed_oracle(const OdeModel& model, const OracleSolution& oracle,
                           double scale, int mode_count, std::uint64_t seed);

// One surrogate per scale, sharing the seed (and hence the perturbation
// shape). Scales must be strictly decreasing and the resulting losses must
// strictly decrease; otherwise construction fails.
std::vector<Surrogate> loss_ladder(const OdeModel& model, const TimeGrid& grid,
                                   const std::vector<double>& scales,
                                   std::uint64_t seed, int mode_count = 3);

Surrogate analytic_surrogate(const TimeGrid& grid, std::string name,
                             const std::function<double(double)>& v,
                             const std::function<double(double)>& dv);

}  // namespace errbound
