#include "errbound/surrogate.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace errbound {

namespace {

// Uniform double in [-1, 1] from raw 64-bit output; avoids distribution
// implementations that vary across standard libraries.
double uniform_pm1(std::mt19937_64& rng) {
  const double r = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * r - 1.0;
}

// Smooth perturbation shape of unit grid sup-norm: a Gaussian bump that
// vanishes nowhere (so the initial condition is perturbed too) plus a few
// sine modes that vanish at both endpoints.
struct Perturbation {
  std::vector<double> coeff;  // c_0 bump weight, c_1..c_M mode weights
  double t0, span;
  double norm = 1.0;

  double bump(double s) const { return std::exp(-4.0 * (s - 0.5) * (s - 0.5)); }
  double dbump(double s) const { return -8.0 * (s - 0.5) * bump(s) / span; }

  double value(double t) const {
    const double s = (t - t0) / span;
    double p = coeff[0] * bump(s);
    for (std::size_t m = 1; m < coeff.size(); ++m)
      p += coeff[m] * std::sin(m * std::numbers::pi * s);
    return p / norm;
  }
  double deriv(double t) const {
    const double s = (t - t0) / span;
    double dp = coeff[0] * dbump(s);
    for (std::size_t m = 1; m < coeff.size(); ++m)
      dp += coeff[m] * (m * std::numbers::pi / span) *
            std::cos(m * std::numbers::pi * s);
    return dp / norm;
  }
};

Perturbation make_perturbation(const TimeGrid& grid, int mode_count, std::uint64_t seed) {
  if (mode_count < 1)
    throw ValidationError("perturbed_oracle: mode_count must be at least 1");
  Perturbation p;
  p.t0 = grid.t_start;
  p.span = grid.length();
  std::mt19937_64 rng(seed);
  p.coeff.resize(static_cast<std::size_t>(mode_count) + 1);
  for (auto& c : p.coeff) c = uniform_pm1(rng);
  if (std::abs(p.coeff[0]) < 1e-300) p.coeff[0] = 1.0;
  double sup = 0.0;
  for (int i = 0; i < grid.n_points; ++i)
    sup = std::max(sup, std::abs(p.value(grid.node(i))));
  p.norm = sup;
  return p;
}

}  // namespace

Surrogate perturbed_oracle(const OdeModel& model, const OracleSolution& oracle,
                           double scale, int mode_count, std::uint64_t seed) {
  if (scale < 0.0) throw ValidationError("perturbed_oracle: scale must be >= 0");
  const TimeGrid& grid = oracle.grid;
  Perturbation p = make_perturbation(grid, mode_count, seed);

  Surrogate s{grid, SampledFn(grid), SampledFn(grid),
              SurrogateProvenance{SurrogateProvenance::Kind::PerturbedOracle, scale,
                                  mode_count, seed, model.name()}};
  for (int i = 0; i < grid.n_points; ++i) {
    const double t = grid.node(i);
    s.v.values[i] = oracle.u.values[i] + scale * p.value(t);
    s.dv.values[i] = oracle.du.values[i] + scale * p.deriv(t);
  }
  return s;
}

Surrogate perturbed_oracle(const OdeModel& model, const TimeGrid& grid, double scale,
                           int mode_count, std::uint64_t seed) {
  return perturbed_oracle(model, solve_reference(model, grid), scale, mode_count, seed);
}

std::vector<Surrogate> loss_ladder(const OdeModel& model, const TimeGrid& grid,
                                   const std::vector<double>& scales,
                                   std::uint64_t seed, int mode_count) {
  if (scales.empty()) throw ValidationError("loss_ladder: no scales given");
  for (std::size_t i = 1; i < scales.size(); ++i)
    if (!(scales[i] < scales[i - 1]))
      throw ValidationError("loss_ladder: scales must be strictly decreasing");

  OracleSolution oracle = solve_reference(model, grid);
  std::vector<Surrogate> rungs;
  rungs.reserve(scales.size());
  for (double scale : scales)
    rungs.push_back(perturbed_oracle(model, oracle, scale, mode_count, seed));

  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rungs.size(); ++i) {
    const double l = loss(model, rungs[i]);
    if (!(l < prev))
      throw ValidationError(
          "loss_ladder: losses are not strictly decreasing (rung " + std::to_string(i) +
          "); retry with a different seed");
    prev = l;
  }
  return rungs;
}

Surrogate analytic_surrogate(const TimeGrid& grid, std::string name,
                             const std::function<double(double)>& v,
                             const std::function<double(double)>& dv) {
  Surrogate s{grid, sample(grid, v), sample(grid, dv),
              SurrogateProvenance{SurrogateProvenance::Kind::Analytic, 0.0, 0, 0,
                                  std::move(name)}};
  require_finite(s.v, "analytic_surrogate: v");
  require_finite(s.dv, "analytic_surrogate: dv");
  return s;
}

}  // namespace errbound
