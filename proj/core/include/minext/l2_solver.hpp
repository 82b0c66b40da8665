#pragma once

#include <Eigen/Core>
#include <memory>

#include "minext/problem.hpp"

namespace minext {

// Quadratic minimization of ||F||^2 against a fixed density over the affine
// feasible set. The density is the weight e^{-phi} times any nonnegative
// reweighting factor.
struct L2Problem {
  std::shared_ptr<const Discretization> data;
  Eigen::VectorXd density;  // per-node, >= 0, same length as data->quad.weights
};

struct L2Result {
  Eigen::VectorXcd coeffs;      // full coefficient vector, feasible
  Eigen::VectorXcd y;           // free-coordinate solution
  double objective = 0.0;       // sum w * density * |F|^2
  double orthogonality = 0.0;   // stationarity residual at the solution
  bool pseudo_solved = false;   // normal matrix was rank-deficient
};

// Normal-equation solve through the free-column design matrix. Falls back to
// an eigenvalue-thresholded pseudoinverse when the Gram block is singular.
L2Result solve_l2(const L2Problem& prob);

// Independent path: full Gram matrix, block elimination of the constrained
// coordinates. Used as a cross-check, not in the solve pipeline.
L2Result solve_l2_via_gram(const L2Problem& prob);

// max_a |<F, m_a>_density| / (||F|| ||m_a||) over free directions m_a.
// Zero when there are no free directions or F vanishes.
double orthogonality_residual(const L2Problem& prob, const Eigen::VectorXcd& coeffs);

}  // namespace minext
