#pragma once

#include <stdexcept>
#include <string>

namespace errbound {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad user input: configs, mismatched grids, malformed files.
struct ValidationError : Error {
  using Error::Error;
};

struct GridMismatchError : ValidationError {
  using ValidationError::ValidationError;
};

// A sampled quantity stopped being representable in doubles.
struct OverflowError : Error {
  OverflowError(const std::string& msg, int node, double time)
      : Error(msg), node(node), time(time) {}
  int node;
  double time;
};

// Truncated division/expansion around a singular point.
struct SingularJetError : Error {
  using Error::Error;
};

// Order selection exhausted the configured cap.
struct NonConvergenceError : Error {
  NonConvergenceError(const std::string& msg, int best_order, double worst_violation)
      : Error(msg), best_order(best_order), worst_violation(worst_violation) {}
  int best_order;
  double worst_violation;
};

// The geometric tail of the exact bound is not summable anywhere past t0.
struct BoundInapplicableError : Error {
  BoundInapplicableError(const std::string& msg, double rk_at_end)
      : Error(msg), rk_at_end(rk_at_end) {}
  double rk_at_end;
};

// Adaptive integrator could not continue.
struct SolverFailure : Error {
  SolverFailure(const std::string& msg, double t_reached)
      : Error(msg), t_reached(t_reached) {}
  double t_reached;
};

struct CsvError : ValidationError {
  CsvError(const std::string& msg, long line) : ValidationError(msg), line(line) {}
  long line;
};

}  // namespace errbound
