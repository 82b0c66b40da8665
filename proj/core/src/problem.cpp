#include "minext/problem.hpp"

#include <Eigen/Dense>

#include "minext/errors.hpp"

namespace minext {

namespace {

// Coordinate-subspace data transfer: f is given on the S-basis (leading n-k
// variables, same degree cap); its coefficients pin the constrained slots.
Eigen::VectorXcd particular_from_subspace(const Basis& basis, const BasisSplit& split,
                                          const SubmanifoldSpec& S,
                                          const Eigen::VectorXcd& f_data) {
  const int keep = basis.n - S.codim;
  const Basis s_basis = build_basis(keep, basis.degree);
  if (f_data.size() > s_basis.size())
    throw ConfigError("data: more coefficients than the restricted basis holds");
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(basis.size());
  for (Eigen::Index slot = 0; slot < static_cast<Eigen::Index>(split.constrained.size());
       ++slot) {
    const Eigen::Index b = split.constrained[static_cast<std::size_t>(slot)];
    const Eigen::VectorXi head = basis.indices[static_cast<std::size_t>(b)].head(keep);
    for (Eigen::Index s = 0; s < f_data.size(); ++s) {
      if (s_basis.indices[static_cast<std::size_t>(s)] == head) {
        c[b] = f_data[s];
        break;
      }
    }
  }
  return c;
}

}  // namespace

std::shared_ptr<const Discretization> assemble_problem(const DomainSpec& domain,
                                                       const SubmanifoldSpec& S,
                                                       const WeightSpec& weight,
                                                       const Eigen::VectorXcd& f_data, int degree,
                                                       int quad_order) {
  domain.validate();
  S.validate(domain);
  weight.validate(domain);
  if (degree < 0) throw ConfigError("degree must be >= 0");

  auto disc = std::make_shared<Discretization>();
  disc->domain = domain;
  disc->S = S;
  disc->weight = weight;
  disc->f_data = f_data;
  disc->basis = build_basis(domain.n, degree);
  disc->split = split_basis(disc->basis, S);
  disc->quad = build_domain_quadrature(domain, quad_order);
  disc->phi = vandermonde(disc->basis, disc->quad.nodes);
  disc->base_density = eval_weight(weight, disc->quad.nodes);

  const Eigen::Index nb = disc->basis.size();
  if (S.kind == SubmanifoldKind::CoordinateSubspace) {
    disc->c_particular = particular_from_subspace(disc->basis, disc->split, S, f_data);
    const Eigen::Index nf = static_cast<Eigen::Index>(disc->split.free.size());
    disc->null_map = Eigen::MatrixXcd::Zero(nb, nf);
    for (Eigen::Index j = 0; j < nf; ++j) {
      disc->null_map(disc->split.free[static_cast<std::size_t>(j)], j) = 1.0;
    }
  } else {
    const Eigen::MatrixXcd& A = disc->split.constraint_matrix;
    if (f_data.size() != A.rows())
      throw ConfigError("data: need one prescribed value per point");
    // Minimal-Euclidean-norm particular solution and an orthonormal kernel
    // basis from a column-pivoted complete orthogonal factorization.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(A);
    disc->c_particular = cod.solve(f_data);
    const Eigen::Index rank = cod.rank();
    const Eigen::MatrixXcd z = cod.matrixZ();
    // ker A = P * Z^H * [0; I]: the trailing columns of P Z^H.
    Eigen::MatrixXcd kernel = (cod.colsPermutation() * z.adjoint()).rightCols(nb - rank);
    disc->null_map = kernel;
    const double feas = (A * disc->c_particular - f_data).norm();
    if (feas > 1e-8 * (1.0 + f_data.norm()))
      throw SolverError("no extension: point constraints are inconsistent at this degree");
  }
  disc->phi_free = disc->phi * disc->null_map;
  disc->fixed_values = disc->phi * disc->c_particular;
  return disc;
}

Eigen::VectorXcd naive_extension(const Discretization& disc) {
  Eigen::VectorXcd c = disc.c_particular;
  if (disc.n_free() > 0) c += disc.null_map.col(0);
  return c;
}

}  // namespace minext
