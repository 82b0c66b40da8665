#pragma once

#include <Eigen/Core>

#include "minext/function_space.hpp"
#include "minext/lp_solver.hpp"
#include "minext/trace.hpp"

namespace minext {

// One reweighting step: omega = (|F|^2 + eps)^{(p-2)/2} e^{-phi} at the nodes,
// the regularized density of the tilted potential phi + (2-p) log|F|.
WeightField reweight(const Eigen::VectorXcd& values, double p,
                     const Eigen::VectorXd& base_density, double eps);

struct IrlsSchedule {
  double eps0 = 1e-2;
  double decay = 4.0;  // eps_m = max(floor, eps0 * decay^-m)
  int max_iterations = 200;
  double step_tol = 1e-8;  // on ||F_next - F|| / (1 + ||F||)
};

// Loop state after an inner solve.
struct IrlsState {
  Eigen::VectorXcd coeffs;
  double eps = 0.0;
  double objective = 0.0;      // smoothed p-energy at eps
  Eigen::VectorXd density;     // the reweighted density the solve used
};

struct IrlsResult {
  IrlsState state;  // converged iterate; density is the one its solve used
  Trace trace;      // per-iteration (eps, objective, step, stationarity)
  int iterations = 0;
  bool pseudo_solved = false;  // any inner solve hit the rank-deficient path
};

// Reweighted least-squares iteration for the minimal p-energy extension:
// solve the L^2 problem under reweight(F_m), repeat until the iterate stops
// moving and the smoothing has reached its floor (prob.eps). The smoothing
// drops to the floor immediately once the iterate stalls at the current
// level, so fixed points are recognized in a handful of solves. p = 2 is a
// single plain least-squares solve. Throws ConvergenceError past the
// iteration cap.
IrlsResult irls_solve(const LpProblem& prob, const Eigen::VectorXcd& start_coeffs,
                      const IrlsSchedule& schedule = {});

// Default start: the minimizer under the base density e^{-phi} alone.
IrlsResult irls_solve(const LpProblem& prob, const IrlsSchedule& schedule = {});

// ||F - argmin_G ||G||^2_{reweight(F)}|| / (1 + ||F||) in the L^2(e^{-phi})
// norm: zero exactly when F is its own reweighted least-squares minimizer.
double fixed_point_residual(const LpProblem& prob, const Eigen::VectorXcd& coeffs);

// Relative gap |sum w |F|^2 omega - sum w |F|^p e^{-phi}| / sum w |F|^p e^{-phi}:
// the two ways of writing the minimal p-energy must agree at small eps.
double norm_transfer_gap(const LpProblem& prob, const Eigen::VectorXcd& coeffs);

// true iff the trace objective is non-increasing within every constant-eps
// segment, up to 1e-12 absolute slack per step.
bool descent_check(const Trace& trace);

// Agreement evidence between the two solvers for the same problem.
struct FixedPointCertificate {
  double iterate_difference = 0.0;  // last IRLS step size
  double cross_distance = 0.0;      // ||F_irls - F_direct|| in L^2(e^{-phi})
  double identity_residual = 0.0;   // difference orthogonality against F_direct

  friend bool operator==(const FixedPointCertificate&, const FixedPointCertificate&) = default;
};

FixedPointCertificate make_fixed_point_certificate(const LpProblem& prob,
                                                   const IrlsResult& irls,
                                                   const Eigen::VectorXcd& direct_coeffs);

}  // namespace minext
