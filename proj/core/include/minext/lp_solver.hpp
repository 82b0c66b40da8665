#pragma once

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "minext/problem.hpp"
#include "minext/trace.hpp"

namespace minext {

// Smoothed p-energy minimization over the feasible set,
//   J_eps(c) = sum_q w_q (|g(z_q)|^2 + eps)^{p/2} e^{-phi(z_q)},
// the direct route to the minimal extension for 0 < p <= 2.
struct LpProblem {
  std::shared_ptr<const Discretization> data;
  double p = 1.0;
  double eps = 1e-8;  // final smoothing level

  void validate() const;  // throws ConfigError unless 0 < p <= 2, eps >= 0
};

// First-order certificate attached to a direct solve.
struct MinimizerCertificate {
  double objective = 0.0;    // J_eps at the returned iterate
  double residual = 0.0;     // normalized stationarity violation
  double dispersion = 0.0;   // max pairwise coefficient distance across starts
  bool starts_agree = true;  // dispersion within the convexity tolerance

  friend bool operator==(const MinimizerCertificate&, const MinimizerCertificate&) = default;
};

struct DirectResult {
  Eigen::VectorXcd coeffs;
  MinimizerCertificate certificate;
  Trace trace;  // accepted descent steps of the winning start
};

// J_eps and its gradient (conjugate-packed: the real gradient with respect to
// (Re, Im) of the free coordinates, read as Re g + i Im g). Descent direction
// in free coordinates is -gradient; d/dt J(c + t N d) = Re(grad . d).
double objective_value(const LpProblem& prob, const Eigen::VectorXcd& coeffs);
double objective_and_gradient(const LpProblem& prob, const Eigen::VectorXcd& coeffs,
                              Eigen::VectorXcd* grad_free);

// Stationarity violation of the smoothed energy: the largest normalized
// pairing |<F, h>_rho| / (||F||_rho ||h||_rho) over free directions h, in the
// inner product with density rho = (|F|^2 + eps)^{(p-2)/2} e^{-phi}.
double variational_residual_p(const LpProblem& prob, const Eigen::VectorXcd& coeffs);

// Gradient descent on the free subspace with Barzilai-Borwein steps, Armijo
// backtracking, and smoothing continuation 1e-2 -> eps. Every start must be
// feasible; the best final iterate wins, ties broken by lexicographically
// smallest coefficient vector. Throws ConvergenceError when a smoothing stage
// exhausts its iteration budget away from stationarity.
DirectResult solve_lp_direct(const LpProblem& prob, const std::vector<Eigen::VectorXcd>& starts);

// Particular solution plus seeded Gaussian free-part perturbations; start 0 is
// always the unperturbed particular solution.
std::vector<Eigen::VectorXcd> make_starts(const Discretization& data, int count,
                                          std::uint64_t seed);

// Evidence about uniqueness for 0 < p < 1: cluster the converged iterates of
// `trials` random starts by coefficient distance.
struct UniquenessCluster {
  Eigen::VectorXcd coeffs;
  double objective = 0.0;
  int members = 0;
};

struct UniquenessReport {
  std::vector<UniquenessCluster> clusters;  // sorted by objective
  double dispersion = 0.0;                  // max pairwise distance, all starts
};

UniquenessReport uniqueness_probe(const LpProblem& prob, int trials, std::uint64_t seed);

}  // namespace minext
