#pragma once

#include <functional>
#include <vector>

#include "errbound/errors.hpp"

namespace errbound {

// Uniform time grid over [t_start, t_end], endpoints inclusive.
// Every sampled quantity in the library lives on one of these; operations
// combining two samples require the grids to be identical.
struct TimeGrid {
  double t_start;
  double t_end;
  int n_points;

  TimeGrid(double t_start, double t_end, int n_points);

  double step() const { return (t_end - t_start) / (n_points - 1); }
  double length() const { return t_end - t_start; }

  // Endpoints are returned exactly; interior nodes as t_start + i*h.
  double node(int i) const {
    if (i == 0) return t_start;
    if (i == n_points - 1) return t_end;
    return t_start + i * step();
  }

  bool operator==(const TimeGrid&) const = default;
};

// A real-valued function sampled at every grid node.
struct SampledFn {
  TimeGrid grid;
  std::vector<double> values;

  SampledFn(const TimeGrid& g) : grid(g), values(g.n_points, 0.0) {}
  SampledFn(const TimeGrid& g, std::vector<double> v);

  double operator[](int i) const { return values[i]; }
  double& operator[](int i) { return values[i]; }
  int size() const { return static_cast<int>(values.size()); }
};

SampledFn sample(const TimeGrid& grid, const std::function<double(double)>& f);

void require_same_grid(const SampledFn& a, const SampledFn& b, const char* what);
void require_finite(const SampledFn& f, const char* what);

// Cumulative trapezoidal integral: g(0) = 0 and
// g(i) = g(i-1) + h*(f(i) + f(i-1))/2, evaluated with exactly this recurrence.
SampledFn cumulative_trapezoid(const SampledFn& f);

// Maximum of the sampled values (signed, not absolute).
double grid_max(const SampledFn& f);

// Trapezoidal mean of |f| over the domain:
// cumulative_trapezoid(|f|) at t_end divided by (t_end - t_start).
double grid_mean_abs(const SampledFn& f);

template <class F>
SampledFn map_fn(const SampledFn& a, F&& f) {
  SampledFn out(a.grid);
  for (int i = 0; i < a.size(); ++i) out.values[i] = f(a.values[i]);
  return out;
}

template <class F>
SampledFn zip_fn(const SampledFn& a, const SampledFn& b, F&& f) {
  require_same_grid(a, b, "zip_fn");
  SampledFn out(a.grid);
  for (int i = 0; i < a.size(); ++i) out.values[i] = f(a.values[i], b.values[i]);
  return out;
}

}  // namespace errbound
