#pragma once

#include <memory>

#include <Eigen/Core>

#include "minext/function_space.hpp"
#include "minext/geometry.hpp"

namespace minext {

// Everything both solvers consume, assembled once per instance: basis and
// split, quadrature, monomial values at the nodes, the base density e^{-phi},
// and an affine parametrization of the feasible set
//     c(y) = c_particular + null_map * y
// whose columns span the admissible variations (monomials vanishing on S for
// a coordinate subspace, an orthonormal kernel basis of the evaluation system
// for a point set).
struct Discretization {
  DomainSpec domain;
  SubmanifoldSpec S;
  WeightSpec weight;
  Basis basis;
  BasisSplit split;
  QuadratureRule quad;

  Eigen::MatrixXcd phi;           // node x basis monomial values
  Eigen::VectorXd base_density;   // e^{-phi(z_q)}
  Eigen::VectorXcd f_data;        // S-basis coefficients or point values
  Eigen::VectorXcd c_particular;  // feasible coefficients, variation part zero
  Eigen::MatrixXcd null_map;      // basis x n_free
  Eigen::MatrixXcd phi_free;      // phi * null_map
  Eigen::VectorXcd fixed_values;  // phi * c_particular

  Eigen::Index n_free() const { return null_map.cols(); }
  Eigen::Index n_basis() const { return basis.size(); }

  Eigen::VectorXcd coefficients(const Eigen::VectorXcd& y) const {
    return c_particular + null_map * y;
  }
  Eigen::VectorXcd variation_part(const Eigen::VectorXcd& c) const {
    return null_map.adjoint() * (c - c_particular);
  }
  HoloFunction make_function(const Eigen::VectorXcd& coeffs) const {
    return HoloFunction{domain, basis, coeffs};
  }
};

// Builds basis, split, quadrature, node tables and the feasible-set
// parametrization. Throws ConfigError for invalid specs and SolverError when
// point constraints are inconsistent (no extension in the truncated space).
std::shared_ptr<const Discretization> assemble_problem(const DomainSpec& domain,
                                                       const SubmanifoldSpec& S,
                                                       const WeightSpec& weight,
                                                       const Eigen::VectorXcd& f_data, int degree,
                                                       int quad_order);

// The naive extension: data coefficients in place, first admissible variation
// direction added with unit coefficient. A deliberately non-minimal member of
// the feasible set, used by detector checks.
Eigen::VectorXcd naive_extension(const Discretization& disc);

}  // namespace minext
