#pragma once

// Shared instance builders. Each *_spec function returns the raw Specs;
// assemble() turns one into a ready discretization.

#include <cmath>
#include <complex>
#include <memory>

#include <Eigen/Core>

#include "minext/problem.hpp"

namespace testutil {

inline constexpr double kPi = 3.14159265358979323846;

struct Specs {
  minext::DomainSpec domain;
  minext::SubmanifoldSpec S;
  minext::WeightSpec weight;
  Eigen::VectorXcd f;
  int degree = 8;
  int quad_order = 12;
};

// Unit disc, data f = f0 at the origin, weight alpha*|z|^2.
inline Specs disc_spec(std::complex<double> f0 = 1.0, double alpha = 0.0, int degree = 8,
                       int quad_order = 12) {
  Specs s;
  s.domain = {minext::DomainKind::Disc, 1, 1.0};
  s.S.kind = minext::SubmanifoldKind::CoordinateSubspace;
  s.S.codim = 1;
  s.weight.alpha = alpha;
  s.f.resize(1);
  s.f << f0;
  s.degree = degree;
  s.quad_order = quad_order;
  return s;
}

// Unit bidisc, data f(z1) = 1 + z1 on the slice z2 = 0.
inline Specs polydisc_spec(int degree = 6, int quad_order = 6) {
  Specs s;
  s.domain = {minext::DomainKind::Polydisc, 2, 1.0};
  s.S.kind = minext::SubmanifoldKind::CoordinateSubspace;
  s.S.codim = 1;
  s.f.resize(2);
  s.f << 1.0, 1.0;
  s.degree = degree;
  s.quad_order = quad_order;
  return s;
}

// Unit ball in C^2, data f = 1 at the origin.
inline Specs ball_spec(int degree = 6, int quad_order = 6) {
  Specs s;
  s.domain = {minext::DomainKind::Ball, 2, 1.0};
  s.S.kind = minext::SubmanifoldKind::CoordinateSubspace;
  s.S.codim = 2;
  s.f.resize(1);
  s.f << 1.0;
  s.degree = degree;
  s.quad_order = quad_order;
  return s;
}

// Unit disc, interpolation at two interior points.
inline Specs pointset_spec(int degree = 6, int quad_order = 10) {
  Specs s;
  s.domain = {minext::DomainKind::Disc, 1, 1.0};
  s.S.kind = minext::SubmanifoldKind::PointSet;
  s.S.points.resize(2, 1);
  s.S.points(0, 0) = std::complex<double>(0.4, 0.0);
  s.S.points(1, 0) = std::complex<double>(-0.3, 0.2);
  s.f.resize(2);
  s.f << std::complex<double>(1.0, 0.0), std::complex<double>(0.5, -0.25);
  s.degree = degree;
  s.quad_order = quad_order;
  return s;
}

inline std::shared_ptr<const minext::Discretization> assemble(const Specs& s) {
  return minext::assemble_problem(s.domain, s.S, s.weight, s.f, s.degree, s.quad_order);
}

}  // namespace testutil
