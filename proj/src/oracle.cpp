#include "errbound/oracle.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace errbound {

namespace {

// Dormand-Prince 5(4) tableau, with the Shampine quartic dense-output matrix.
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;

constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;

constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                 B5 = -2187.0 / 6784, B6 = 11.0 / 84;

constexpr double E1 = -71.0 / 57600, E3 = 71.0 / 16695, E4 = -71.0 / 1920,
                 E5 = 17253.0 / 339200, E6 = -22.0 / 525, E7 = 1.0 / 40;

constexpr double P[7][4] = {
    {1.0, -8048581381.0 / 2820520608.0, 8663915743.0 / 2820520608.0,
     -12715105075.0 / 11282082432.0},
    {0.0, 0.0, 0.0, 0.0},
    {0.0, 131558114200.0 / 32700410799.0, -68118460800.0 / 10900136933.0,
     87487479700.0 / 32700410799.0},
    {0.0, -1754552775.0 / 470086768.0, 14199869525.0 / 1410260304.0,
     -10690763975.0 / 1880347072.0},
    {0.0, 127303824393.0 / 49829197408.0, -318862633887.0 / 49829197408.0,
     701980252875.0 / 199316789632.0},
    {0.0, -282668133.0 / 205662961.0, 2019193451.0 / 616988883.0,
     -1453857185.0 / 822651844.0},
    {0.0, 40617522.0 / 29380423.0, -110615467.0 / 29380423.0,
     69997945.0 / 29380423.0}};

constexpr std::int64_t kMaxSteps = 10'000'000;

struct StepResult {
  double u_new;
  double k7;       // slope at (t+h, u_new); FSAL stage
  double err;      // normalized local error estimate
  double k[7];
};

}  // namespace

// One embedded step from (t, u) with slope k1 = rhs(t, u).
template <class Rhs>
static StepResult dopri5_step(const Rhs& rhs, double t, double u, double k1, double h,
                              double rtol, double atol) {
  StepResult s{};
  const double k2 = rhs(t + C2 * h, u + h * (A21 * k1));
  const double k3 = rhs(t + C3 * h, u + h * (A31 * k1 + A32 * k2));
  const double k4 = rhs(t + C4 * h, u + h * (A41 * k1 + A42 * k2 + A43 * k3));
  const double k5 =
      rhs(t + C5 * h, u + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4));
  const double k6 =
      rhs(t + h, u + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5));
  s.u_new = u + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
  s.k7 = rhs(t + h, s.u_new);
  const double e =
      h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * s.k7);
  const double sc = atol + rtol * std::max(std::abs(u), std::abs(s.u_new));
  s.err = std::abs(e) / sc;
  s.k[0] = k1;
  s.k[1] = k2;
  s.k[2] = k3;
  s.k[3] = k4;
  s.k[4] = k5;
  s.k[5] = k6;
  s.k[6] = s.k7;
  return s;
}

OracleSolution solve_reference(const OdeModel& model, const TimeGrid& grid, double rtol,
                               double atol) {
  if (!(rtol > 0.0) || !(atol > 0.0))
    throw ValidationError("solve_reference: tolerances must be positive");
  if (grid.t_start != model.t0())
    throw GridMismatchError("solve_reference: grid does not start at the model t0");

  auto rhs = [&model](double t, double w) { return -model.f(w, t); };

  OracleSolution sol{grid, SampledFn(grid), SampledFn(grid), OracleStats{}};
  sol.u.values[0] = model.u0();

  const double t_end = grid.t_end;
  double t = model.t0();
  double u = model.u0();
  double k1 = rhs(t, u);
  const double hmax = grid.length();

  // Automatic initial step (Hairer's algorithm).
  double h;
  {
    const double sk = atol + rtol * std::abs(u);
    const double dnf = (k1 / sk) * (k1 / sk);
    const double dny = (u / sk) * (u / sk);
    h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
    h = std::min(h, hmax);
    const double u1 = u + h * k1;
    const double f1 = rhs(t + h, u1);
    const double der2 = std::abs(f1 - k1) / sk / h;
    const double der12 = std::max(der2, std::sqrt(dnf));
    const double h1 =
        (der12 <= 1e-15) ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 0.2);
    h = std::min({100.0 * h, h1, hmax});
  }

  constexpr double safe = 0.9, beta = 0.04;
  constexpr double expo1 = 0.2 - beta * 0.75;
  constexpr double facc1 = 5.0, facc2 = 0.1;  // bounds on the step divisor
  double facold = 1e-4;
  bool rejected = false;
  int next_node = 1;

  while (t < t_end) {
    if (sol.stats.accepted + sol.stats.rejected > kMaxSteps)
      throw SolverFailure("solve_reference: step limit exceeded at t = " +
                              std::to_string(t),
                          t);
    if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0))
      throw SolverFailure("solve_reference: step size underflow at t = " +
                              std::to_string(t),
                          t);
    bool last = false;
    if (t + 1.01 * h >= t_end) {
      h = t_end - t;
      last = true;
    }

    StepResult s = dopri5_step(rhs, t, u, k1, h, rtol, atol);

    const double fac11 = std::pow(s.err, expo1);
    if (s.err <= 1.0) {
      // Accepted; fill grid nodes covered by this step via the dense output.
      double q[4];
      for (int j = 0; j < 4; ++j) {
        double acc = 0.0;
        for (int st = 0; st < 7; ++st) acc += s.k[st] * P[st][j];
        q[j] = acc;
      }
      const double t_new = last ? t_end : t + h;
      while (next_node < grid.n_points && grid.node(next_node) <= t_new) {
        const double tn = grid.node(next_node);
        if (tn == t_new) {
          sol.u.values[next_node] = s.u_new;
        } else {
          const double theta = (tn - t) / h;
          const double poly = ((q[3] * theta + q[2]) * theta + q[1]) * theta + q[0];
          sol.u.values[next_node] = u + h * theta * poly;
        }
        ++next_node;
      }

      sol.stats.accepted += 1;
      sol.stats.max_error_estimate = std::max(sol.stats.max_error_estimate, s.err);
      facold = std::max(s.err, 1e-4);
      double fac = fac11 / std::pow(facold, beta);
      fac = std::max(facc2, std::min(facc1, fac / safe));
      double hnew = h / fac;
      if (rejected) hnew = std::min(hnew, h);
      rejected = false;
      t = t_new;
      u = s.u_new;
      k1 = s.k7;
      h = std::min(hnew, hmax);
    } else {
      sol.stats.rejected += 1;
      rejected = true;
      h = h / std::min(facc1, fac11 / safe);
    }
  }

  // The loop always lands exactly on t_end, so every node is filled.
  if (next_node < grid.n_points) {
    sol.u.values[grid.n_points - 1] = u;
    ++next_node;
  }

  for (int i = 0; i < grid.n_points; ++i)
    sol.du.values[i] = -model.f(sol.u.values[i], grid.node(i));
  require_finite(sol.u, "solve_reference: solution");
  require_finite(sol.du, "solve_reference: derivative");
  return sol;
}

double integrate_fixed_steps(const OdeModel& model, double t_end, int n_steps) {
  if (n_steps < 1) throw ValidationError("integrate_fixed_steps: need at least one step");
  auto rhs = [&model](double t, double w) { return -model.f(w, t); };
  const double h = (t_end - model.t0()) / n_steps;
  double t = model.t0();
  double u = model.u0();
  double k1 = rhs(t, u);
  for (int i = 0; i < n_steps; ++i) {
    StepResult s = dopri5_step(rhs, t, u, k1, h, 1.0, 1.0);
    u = s.u_new;
    k1 = s.k7;
    t = model.t0() + (i + 1) * h;
  }
  return u;
}

}  // namespace errbound
