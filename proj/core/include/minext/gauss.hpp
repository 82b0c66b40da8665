#pragma once

#include <Eigen/Core>

namespace minext {

// One-dimensional Gauss rule on [0, 1].
struct Rule1D {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

// Gauss-Legendre: sum w_i f(x_i) == integral_0^1 f, exact for deg(f) <= 2n-1.
Rule1D gauss_legendre_01(int npts);

// Gauss-Jacobi with weight (1-x)^beta: sum w_i f(x_i) == integral_0^1 (1-x)^beta f(x) dx,
// exact for deg(f) <= 2n-1. Requires beta > -1.
Rule1D gauss_jacobi_01(int npts, double beta);

}  // namespace minext
