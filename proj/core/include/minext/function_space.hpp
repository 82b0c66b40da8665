#pragma once

#include <variant>
#include <vector>

#include <Eigen/Core>

#include "minext/geometry.hpp"

namespace minext {

// Truncated monomial basis of C[z_1..z_n]: all multi-indices with total degree
// <= degree, in graded-lexicographic order (total degree first, then lex).
// The ordering is fixed globally so coefficient vectors compare across runs.
struct Basis {
  int n = 0;
  int degree = 0;
  std::vector<Eigen::VectorXi> indices;

  Eigen::Index size() const { return static_cast<Eigen::Index>(indices.size()); }
};

Basis build_basis(int n, int degree);

// Partition of the basis relative to S. For a coordinate subspace the split is
// index-based: "constrained" monomials survive restriction to S (their
// coefficients are pinned by the data), "free" monomials vanish on S. For a
// point set the split is not index-based; the linear constraint system of
// point evaluations is recorded instead.
struct BasisSplit {
  std::vector<Eigen::Index> constrained;
  std::vector<Eigen::Index> free;
  Eigen::MatrixXcd constraint_matrix;  // PointSet: one row per point evaluation
};

BasisSplit split_basis(const Basis& basis, const SubmanifoldSpec& S);

// A holomorphic candidate g(z) = sum_a c_a z^a on its domain.
struct HoloFunction {
  DomainSpec domain;
  Basis basis;
  Eigen::VectorXcd coeffs;
};

// Monomial value matrix: column b holds z^{a_b} over the given points.
Eigen::MatrixXcd vandermonde(const Basis& basis, const Eigen::MatrixXcd& points);

// g at each point.
Eigen::VectorXcd evaluate(const HoloFunction& g, const Eigen::MatrixXcd& points);

// Positive density sampled at quadrature nodes (e^{-phi} or a reweighting).
struct WeightField {
  Eigen::VectorXd values;
};

// Restriction g|_S: a holomorphic function in n-k variables for a coordinate
// subspace, the vector of point values for a point set.
std::variant<HoloFunction, Eigen::VectorXcd> restrict_to(const HoloFunction& g,
                                                         const SubmanifoldSpec& S);

// Hermitian PSD matrix G_ab = sum_q w_q m_a(z_q) conj(m_b(z_q)) omega(z_q).
Eigen::MatrixXcd gram(const Basis& basis, const WeightField& density,
                      const QuadratureRule& quad);
Eigen::MatrixXcd gram(const Eigen::MatrixXcd& phi, const WeightField& density,
                      const QuadratureRule& quad);

// Weighted p-energy sum_q w_q |g(z_q)|^p omega(z_q) (not its p-th root).
double p_norm_p(const HoloFunction& g, double p, const WeightField& density,
                const QuadratureRule& quad);
double p_energy(const Eigen::VectorXcd& values, double p, const Eigen::VectorXd& quad_weights,
                const Eigen::VectorXd& density);

}  // namespace minext
