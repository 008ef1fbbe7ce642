#include "errbound/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "errbound/csv.hpp"
#include "errbound/model.hpp"
#include "errbound/oracle.hpp"
#include "errbound/surrogate.hpp"

namespace errbound {

namespace {

namespace fs = std::filesystem;

std::string rung_dir(const std::string& out_dir, std::size_t i) {
  fs::path p = fs::path(out_dir) / ("rung" + std::to_string(i));
  fs::create_directories(p);
  return p.string();
}

std::string format17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

SampledFn abs_error_curve(const OracleSolution& oracle, const Surrogate& s) {
  return zip_fn(oracle.u, s.v, [](double u, double v) { return std::abs(u - v); });
}

double coverage_fraction(const BoundCurve& bound, const SampledFn& abs_error) {
  int covered = 0, considered = 0;
  for (int i = 0; i < abs_error.size(); ++i) {
    if (!bound.valid[static_cast<std::size_t>(i)]) continue;
    ++considered;
    if (bound.values[i] >= abs_error.values[i]) ++covered;
  }
  return considered == 0 ? 0.0 : static_cast<double>(covered) / considered;
}

double sup_valid(const BoundCurve& bound, const SampledFn& f) {
  double m = 0.0;
  for (int i = 0; i < f.size(); ++i)
    if (bound.valid[static_cast<std::size_t>(i)]) m = std::max(m, f.values[i]);
  return m;
}

void write_orders_csv(const std::string& path, EtaSeries& series, int J) {
  std::vector<CsvColumn> cols;
  for (int j = 0; j <= J; ++j)
    cols.push_back({"eta_" + std::to_string(j), series.order(j).values, {}});
  write_curve_csv(path, series.grid(), cols);
}

}  // namespace

ApproxExperimentReport run_experiment_approx(const ExperimentOptions& opt) {
  ExperimentOptions o = opt;
  if (o.scales.empty()) o.scales = {1e-1, 1e-3, 1e-5};
  o.tol.validate();

  const OdeModel model = preset_population();
  const TimeGrid grid(model.t0(), 1.0, o.n_points);
  const OracleSolution oracle = solve_reference(model, grid);
  const std::vector<Surrogate> rungs =
      loss_ladder(model, grid, o.scales, o.seed, o.mode_count);

  ApproxExperimentReport report;
  if (o.out_dir.size()) fs::create_directories(o.out_dir);
  std::ofstream summary(fs::path(o.out_dir.empty() ? "." : o.out_dir) / "summary.csv");
  summary << "rung,scale,loss,P,J,converged,sup_error,sup_bound,coverage\n";

  for (std::size_t i = 0; i < rungs.size(); ++i) {
    const Surrogate& s = rungs[i];
    const std::string dir = rung_dir(o.out_dir.empty() ? "." : o.out_dir, i);

    EtaSeries series(model, s, EtaSeriesConfig{o.tol.max_order, 600.0});
    BoundCurve bound = approximate_bound_pipeline(series, o.tol);
    SampledFn abs_err = abs_error_curve(oracle, s);

    ApproxRung r;
    r.scale = o.scales[i];
    r.loss = loss(model, s);
    r.P = bound.P.value_or(0);
    r.J = bound.J;
    r.converged = bound.converged;
    r.sup_error = grid_max(abs_err);
    r.sup_bound = sup_valid(bound, bound.values);
    r.coverage = coverage_fraction(bound, abs_err);
    report.rungs.push_back(r);

    write_curve_csv(dir + "/error.csv", grid, {{"abs_error", abs_err.values, {}}});
    write_curve_csv(dir + "/bound_tight.csv", grid,
                    {{"bound", bound.values.values, bound.valid}});
    write_orders_csv(dir + "/orders.csv", series, bound.J);
    std::ofstream constants(dir + "/constants.txt");
    constants << "kind=tight\n"
              << "scale=" << format17(r.scale) << "\n"
              << "loss=" << format17(r.loss) << "\n"
              << "P=" << r.P << "\n"
              << "J=" << r.J << "\n"
              << "converged=" << (r.converged ? 1 : 0) << "\n"
              << "sup_error=" << format17(r.sup_error) << "\n"
              << "sup_bound=" << format17(r.sup_bound) << "\n"
              << "coverage=" << format17(r.coverage) << "\n";

    summary << i << "," << format17(r.scale) << "," << format17(r.loss) << "," << r.P
            << "," << r.J << "," << (r.converged ? 1 : 0) << ","
            << format17(r.sup_error) << "," << format17(r.sup_bound) << ","
            << format17(r.coverage) << "\n";
  }
  return report;
}

ExactExperimentReport run_experiment_exact(const ExperimentOptions& opt) {
  ExperimentOptions o = opt;
  if (o.scales.empty()) o.scales = {1e-2, 1e-4, 1e-6};

  const RiccatiModel riccati = preset_cosmology();
  const OdeModel model = riccati.to_ode_model();
  const TimeGrid grid(model.t0(), 0.0, o.n_points);
  const OracleSolution oracle = solve_reference(model, grid);
  const std::vector<Surrogate> rungs =
      loss_ladder(model, grid, o.scales, o.seed, o.mode_count);

  ExactExperimentReport report;
  if (o.out_dir.size()) fs::create_directories(o.out_dir);
  std::ofstream summary(fs::path(o.out_dir.empty() ? "." : o.out_dir) / "summary.csv");
  summary << "rung,scale,loss,R,K,J_eps,tail_sup,sup_error,coverage_J0,coverage_J1,"
             "coverage_Jeps,sup_gap_Jeps,sup_series_dev\n";

  for (std::size_t i = 0; i < rungs.size(); ++i) {
    const Surrogate& s = rungs[i];
    const std::string dir = rung_dir(o.out_dir.empty() ? "." : o.out_dir, i);

    ExactBoundConstants constants = exact_bound_constants(riccati, s);
    const int j_eps = select_J_for_tolerance(constants, o.eps_tail, grid);
    EtaSeries series(model, s, EtaSeriesConfig{std::max(12, j_eps), 600.0});

    BoundCurve b0 = exact_bound(series, 0, constants);
    BoundCurve b1 = exact_bound(series, 1, constants);
    BoundCurve beps = exact_bound(series, j_eps, constants);
    SampledFn abs_err = abs_error_curve(oracle, s);
    SampledFn tail = exact_bound_tail(constants, j_eps, grid);

    SampledFn series_dev = series.sum_series(j_eps);
    for (int n = 0; n < series_dev.size(); ++n)
      series_dev.values[n] =
          std::abs(series_dev.values[n] - (oracle.u.values[n] - s.v.values[n]));
    SampledFn gap = zip_fn(beps.values, abs_err, [](double b, double e) { return b - e; });

    ExactRung r;
    r.scale = o.scales[i];
    r.loss = loss(model, s);
    r.R = constants.R;
    r.K = constants.K;
    r.J_eps = j_eps;
    r.tail_sup = sup_valid(beps, tail);
    r.sup_error = grid_max(abs_err);
    r.coverage_J0 = coverage_fraction(b0, abs_err);
    r.coverage_J1 = coverage_fraction(b1, abs_err);
    r.coverage_Jeps = coverage_fraction(beps, abs_err);
    r.sup_gap_Jeps = sup_valid(beps, gap);
    r.sup_series_dev = sup_valid(beps, series_dev);
    report.rungs.push_back(r);

    write_curve_csv(dir + "/error.csv", grid, {{"abs_error", abs_err.values, {}}});
    write_curve_csv(dir + "/bound_J0.csv", grid, {{"bound", b0.values.values, b0.valid}});
    write_curve_csv(dir + "/bound_J1.csv", grid, {{"bound", b1.values.values, b1.valid}});
    write_curve_csv(dir + "/bound_Jeps.csv", grid,
                    {{"bound", beps.values.values, beps.valid}});
    write_orders_csv(dir + "/orders.csv", series, std::min(j_eps, 6));
    std::ofstream constants_file(dir + "/constants.txt");
    constants_file << "kind=exact\n"
                   << "scale=" << format17(r.scale) << "\n"
                   << "loss=" << format17(r.loss) << "\n"
                   << "R=" << format17(r.R) << "\n"
                   << "K=" << format17(r.K) << "\n"
                   << "J_eps=" << r.J_eps << "\n"
                   << "tail_sup=" << format17(r.tail_sup) << "\n"
                   << "sup_error=" << format17(r.sup_error) << "\n"
                   << "coverage_J0=" << format17(r.coverage_J0) << "\n"
                   << "coverage_J1=" << format17(r.coverage_J1) << "\n"
                   << "coverage_Jeps=" << format17(r.coverage_Jeps) << "\n"
                   << "sup_gap_Jeps=" << format17(r.sup_gap_Jeps) << "\n"
                   << "sup_series_dev=" << format17(r.sup_series_dev) << "\n";

    summary << i << "," << format17(r.scale) << "," << format17(r.loss) << ","
            << format17(r.R) << "," << format17(r.K) << "," << r.J_eps << ","
            << format17(r.tail_sup) << "," << format17(r.sup_error) << ","
            << format17(r.coverage_J0) << "," << format17(r.coverage_J1) << ","
            << format17(r.coverage_Jeps) << "," << format17(r.sup_gap_Jeps) << ","
            << format17(r.sup_series_dev) << "\n";
  }
  return report;
}

}  // namespace errbound
