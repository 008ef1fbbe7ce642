#pragma once

#include <functional>
#include <string>
#include <vector>

#include "errbound/grid.hpp"
#include "errbound/jet.hpp"

namespace errbound {

struct Surrogate;

using JetProgram = std::function<Jet(const Jet& u, double t)>;
using TaylorFn = std::function<std::vector<double>(double v, double t, int max_order)>;
using ScalarFn = std::function<double(double t)>;

// Evaluates a jet program at u = v and returns the Taylor coefficients
// F_0..F_max_order of f in u; F_n carries the 1/n! factor.
std::vector<double> taylor_coeffs_jet(const JetProgram& f, double v, double t,
                                      int max_order);

// A scalar first-order problem du/dt + f(u, t) = 0 with u(t0) = u0.
// The model is fully described by its Taylor-coefficient provider; the plain
// right-hand side is the order-zero coefficient, so both always agree.
class OdeModel {
 public:
  OdeModel(std::string name, TaylorFn taylor, double t0, double u0);
  static OdeModel from_jet_program(std::string name, JetProgram f, double t0, double u0);

  double f(double u, double t) const { return taylor_(u, t, 0)[0]; }
  std::vector<double> taylor_coeffs(double v, double t, int max_order) const;

  const std::string& name() const { return name_; }
  double t0() const { return t0_; }
  double u0() const { return u0_; }

 private:
  std::string name_;
  TaylorFn taylor_;
  double t0_;
  double u0_;
};

// du/dt + C(t) u^2 + B(t) u + A(t) = 0. Taylor coefficients terminate at
// order two: F_1 = 2 C v + B, F_2 = C, F_n = 0 beyond.
class RiccatiModel {
 public:
  RiccatiModel(std::string name, ScalarFn A, ScalarFn B, ScalarFn C, double t0, double u0);

  double A(double t) const { return A_(t); }
  double B(double t) const { return B_(t); }
  double C(double t) const { return C_(t); }
  double f(double u, double t) const { return C_(t) * u * u + B_(t) * u + A_(t); }

  OdeModel to_ode_model() const;

  const std::string& name() const { return name_; }
  double t0() const { return t0_; }
  double u0() const { return u0_; }

 private:
  std::string name_;
  ScalarFn A_, B_, C_;
  double t0_;
  double u0_;
};

// Defect of the surrogate in the governing equation: r_i = dv_i + f(v_i, t_i).
SampledFn residual(const OdeModel& model, const Surrogate& s);

// Mean-square residual over the domain plus the squared initial-condition
// mismatch.
double loss(const OdeModel& model, const Surrogate& s);

// Benchmark problems.
//
// Population model on I = [0, 1]:
//   du/dt - T u (1 - u/k) + alpha u + beta u / (1 + u^2) = 0,
//   T = 10, k = 5, alpha = 2, beta = -40, u0 = 2.
OdeModel preset_population();

// Structure-growth model on I = [-1, 0], a Riccati equation with C = 1 and
// exponential-profile coefficients; u0 = 6.91.
RiccatiModel preset_cosmology();

// f = lambda * u; handy degenerate case where every order beyond the first
// vanishes.
OdeModel linear_model(double lambda, double t0, double u0);

}  // namespace errbound
