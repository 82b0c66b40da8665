#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "minext/trace.hpp"

namespace minext {

// Invalid domain/submanifold/weight/instance input. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure inside a solver: non-convergence, degenerate quadrature
// (singular Gram), or infeasible constraints. The CLI maps this to exit code 3.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// Iteration-budget exhaustion; keeps the descent trace for the report.
class ConvergenceError : public SolverError {
 public:
  ConvergenceError(const std::string& what, Trace trace)
      : SolverError(what), trace_(std::move(trace)) {}
  const Trace& trace() const { return trace_; }

 private:
  Trace trace_;
};

}  // namespace minext
