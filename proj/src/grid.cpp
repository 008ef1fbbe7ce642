#include "errbound/grid.hpp"

#include <cmath>
#include <string>

namespace errbound {

TimeGrid::TimeGrid(double t_start, double t_end, int n_points)
    : t_start(t_start), t_end(t_end), n_points(n_points) {
  if (!(std::isfinite(t_start) && std::isfinite(t_end)))
    throw ValidationError("TimeGrid: endpoints must be finite");
  if (!(t_end > t_start))
    throw ValidationError("TimeGrid: t_end must be greater than t_start");
  if (n_points < 2) throw ValidationError("TimeGrid: n_points must be at least 2");
}

SampledFn::SampledFn(const TimeGrid& g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
  if (static_cast<int>(values.size()) != grid.n_points)
    throw ValidationError("SampledFn: value count does not match grid");
}

SampledFn sample(const TimeGrid& grid, const std::function<double(double)>& f) {
  SampledFn out(grid);
  for (int i = 0; i < grid.n_points; ++i) out.values[i] = f(grid.node(i));
  return out;
}

void require_same_grid(const SampledFn& a, const SampledFn& b, const char* what) {
  if (!(a.grid == b.grid))
    throw GridMismatchError(std::string(what) + ": operands live on different grids");
}

void require_finite(const SampledFn& f, const char* what) {
  for (int i = 0; i < f.size(); ++i) {
    if (!std::isfinite(f.values[i]))
      throw ValidationError(std::string(what) + ": non-finite value at node " +
                            std::to_string(i));
  }
}

SampledFn cumulative_trapezoid(const SampledFn& f) {
  require_finite(f, "cumulative_trapezoid");
  const double h = f.grid.step();
  SampledFn g(f.grid);
  g.values[0] = 0.0;
  for (int i = 1; i < f.size(); ++i)
    g.values[i] = g.values[i - 1] + h * 0.5 * (f.values[i] + f.values[i - 1]);
  return g;
}

double grid_max(const SampledFn& f) {
  require_finite(f, "grid_max");
  double m = f.values[0];
  for (int i = 1; i < f.size(); ++i) m = std::max(m, f.values[i]);
  return m;
}

double grid_mean_abs(const SampledFn& f) {
  SampledFn a = map_fn(f, [](double x) { return std::abs(x); });
  return cumulative_trapezoid(a).values.back() / f.grid.length();
}

}  // namespace errbound
