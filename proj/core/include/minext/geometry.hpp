#pragma once

#include <complex>
#include <string>

#include <Eigen/Core>

namespace minext {

enum class DomainKind { Disc, Polydisc, Ball };
enum class SubmanifoldKind { CoordinateSubspace, PointSet };

std::string to_string(DomainKind kind);
std::string to_string(SubmanifoldKind kind);

// A model domain in C^n: the disc (n = 1), a polydisc with a common per-factor
// radius, or the Euclidean ball.
struct DomainSpec {
  DomainKind kind = DomainKind::Disc;
  int n = 1;
  double radius = 1.0;

  void validate() const;  // throws ConfigError
  // Real-2n-dimensional volume.
  double volume() const;
  // Strict interior test.
  bool contains(const Eigen::VectorXcd& z) const;
};

// The submanifold S carrying the interpolation data: either the coordinate
// subspace {z_{n-k+1} = ... = z_n = 0} of codimension k, or a finite point set
// (codimension n at each point).
struct SubmanifoldSpec {
  SubmanifoldKind kind = SubmanifoldKind::CoordinateSubspace;
  int codim = 1;
  Eigen::MatrixXcd points;  // PointSet only: one point per row

  void validate(const DomainSpec& domain) const;
};

// Diagonal-quadratic plurisubharmonic weight
//   phi(z) = alpha*|z|^2 + sum_j beta_j*|z_j|^2 + c,
// kept plurisubharmonic by requiring alpha >= 0 and beta_j >= 0.
struct WeightSpec {
  double alpha = 0.0;
  Eigen::VectorXd beta;  // empty means all zero
  double c = 0.0;

  void validate(const DomainSpec& domain) const;
  double phi(const Eigen::VectorXcd& z) const;
};

// Nodes and positive real-volume weights turning integral_Omega f dV into
// sum_q w_q f(z_q), exact for monomial densities z^a conj(z)^b with
// |a|+|b| <= d_exact.
struct QuadratureRule {
  Eigen::MatrixXcd nodes;   // N x n
  Eigen::VectorXd weights;  // N
  int d_exact = -1;

  Eigen::Index size() const { return weights.size(); }
};

// Tensor rule per disc factor (polar Gauss-Legendre radial x equispaced
// angular), conical Gauss-Jacobi product for the ball. Exact for all monomial
// densities of total degree <= 2*order.
QuadratureRule build_domain_quadrature(const DomainSpec& domain, int order);

// Rule on S: the induced model domain in n-k variables for a coordinate
// subspace (a single unit-weight node at the origin when k = n), the atomic
// unit-weight sum over points for a point set.
QuadratureRule build_submanifold_quadrature(const DomainSpec& domain, const SubmanifoldSpec& S,
                                            int order);

// S viewed as a model domain in n-k variables (CoordinateSubspace only).
DomainSpec submanifold_as_domain(const DomainSpec& domain, const SubmanifoldSpec& S);

// Embed points of S back into C^n (append k zeros for a coordinate subspace).
Eigen::MatrixXcd embed_submanifold_points(const DomainSpec& domain, const SubmanifoldSpec& S,
                                          const Eigen::MatrixXcd& s_points);

// e^{-phi} per point; strictly positive.
Eigen::VectorXd eval_weight(const WeightSpec& w, const Eigen::MatrixXcd& points);

// Volume of the unit ball in C^k: pi^k / k!.
double sigma(int k);

}  // namespace minext
