#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "minext/errors.hpp"
#include "minext/geometry.hpp"

using namespace minext;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Independent reference: sum of w * prod |z_j|^{2 m_j} over the nodes.
double quad_abs_moment(const QuadratureRule& quad, const Eigen::VectorXi& m) {
  double sum = 0.0;
  for (Eigen::Index q = 0; q < quad.size(); ++q) {
    double term = quad.weights[q];
    for (int j = 0; j < m.size(); ++j) term *= std::pow(std::norm(quad.nodes(q, j)), m[j]);
    sum += term;
  }
  return sum;
}

// Closed form for the polydisc: product of pi r^{2m+2}/(m+1).
double polydisc_moment(double radius, const Eigen::VectorXi& m) {
  double v = 1.0;
  for (int j = 0; j < m.size(); ++j)
    v *= kPi * std::pow(radius, 2 * m[j] + 2) / (m[j] + 1.0);
  return v;
}

// Closed form for the ball: pi^n r^{2(n+|m|)} prod m_j! / (n+|m|)!.
double ball_moment(int n, double radius, const Eigen::VectorXi& m) {
  double v = std::pow(kPi, n);
  int total = 0;
  for (int j = 0; j < m.size(); ++j) {
    total += m[j];
    for (int k = 2; k <= m[j]; ++k) v *= k;
  }
  v *= std::pow(radius, 2 * (n + total));
  for (int k = 2; k <= n + total; ++k) v /= k;
  return v;
}

}  // namespace

TEST_CASE("disc quadrature integrates radial monomials exactly") {
  const DomainSpec disc{DomainKind::Disc, 1, 1.0};
  const int order = 8;
  const QuadratureRule quad = build_domain_quadrature(disc, order);

  CHECK(quad.d_exact == 2 * order);
  CHECK(quad.size() == (order + 1) * (4 * order + 1));
  CHECK(quad.weights.minCoeff() > 0.0);

  Eigen::VectorXi m(1);
  for (int k = 0; k <= order; ++k) {
    m[0] = k;
    const double exact = kPi / (k + 1.0);
    CHECK(std::abs(quad_abs_moment(quad, m) - exact) <= 1e-13 * exact);
  }
}

TEST_CASE("disc quadrature kills asymmetric monomials") {
  const QuadratureRule quad = build_domain_quadrature({DomainKind::Disc, 1, 1.0}, 6);
  // sum w z^2 conj(z)^0 and sum w z^3 conj(z) must vanish by angular symmetry.
  std::complex<double> s20 = 0.0, s31 = 0.0;
  for (Eigen::Index q = 0; q < quad.size(); ++q) {
    const std::complex<double> z = quad.nodes(q, 0);
    s20 += quad.weights[q] * z * z;
    s31 += quad.weights[q] * z * z * z * std::conj(z);
  }
  CHECK(std::abs(s20) <= 1e-14);
  CHECK(std::abs(s31) <= 1e-14);
}

TEST_CASE("disc quadrature respects the radius") {
  const double r = 2.5;
  const QuadratureRule quad = build_domain_quadrature({DomainKind::Disc, 1, r}, 6);
  Eigen::VectorXi m(1);
  m[0] = 0;
  CHECK(std::abs(quad_abs_moment(quad, m) - kPi * r * r) <= 1e-12 * r * r);
  m[0] = 2;
  const double exact = kPi * std::pow(r, 6) / 3.0;
  CHECK(std::abs(quad_abs_moment(quad, m) - exact) <= 1e-12 * exact);
}

TEST_CASE("polydisc quadrature is the tensor rule") {
  const DomainSpec pd{DomainKind::Polydisc, 2, 1.0};
  const QuadratureRule quad = build_domain_quadrature(pd, 4);
  CHECK(quad.d_exact == 8);
  CHECK(quad.nodes.cols() == 2);

  Eigen::VectorXi m(2);
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= 3; ++b) {
      m << a, b;
      const double exact = polydisc_moment(1.0, m);
      CHECK(std::abs(quad_abs_moment(quad, m) - exact) <= 1e-12 * exact);
    }
  }
}

TEST_CASE("ball quadrature matches the simplex closed forms") {
  const DomainSpec ball{DomainKind::Ball, 2, 1.0};
  const QuadratureRule quad = build_domain_quadrature(ball, 6);
  CHECK(quad.d_exact == 12);

  // Tolerances are relative: the rule is exact, the slack is summation
  // roundoff over ~10^3 nodes.
  Eigen::VectorXi m(2);
  m << 0, 0;  // volume pi^2/2
  CHECK(std::abs(quad_abs_moment(quad, m) - kPi * kPi / 2.0) <= 1e-12 * kPi * kPi / 2.0);
  m << 1, 0;  // pi^2/6
  CHECK(std::abs(quad_abs_moment(quad, m) - kPi * kPi / 6.0) <= 1e-12 * kPi * kPi / 6.0);
  m << 1, 1;  // pi^2/24
  CHECK(std::abs(quad_abs_moment(quad, m) - kPi * kPi / 24.0) <= 1e-12 * kPi * kPi / 24.0);
  m << 2, 0;  // pi^2 * 2/4! = pi^2/12
  CHECK(std::abs(quad_abs_moment(quad, m) - kPi * kPi / 12.0) <= 1e-12 * kPi * kPi / 12.0);
  m << 3, 2;
  const double exact = ball_moment(2, 1.0, m);
  CHECK(std::abs(quad_abs_moment(quad, m) - exact) <= 1e-12 * exact);
}

TEST_CASE("ball quadrature respects radius and dimension") {
  const double r = 1.5;
  const QuadratureRule quad = build_domain_quadrature({DomainKind::Ball, 3, r}, 4);
  Eigen::VectorXi m(3);
  m << 0, 0, 0;
  const double vol = std::pow(kPi, 3) * std::pow(r, 6) / 6.0;
  CHECK(std::abs(quad_abs_moment(quad, m) - vol) <= 1e-11 * vol);
  m << 1, 1, 0;
  const double exact = ball_moment(3, r, m);
  CHECK(std::abs(quad_abs_moment(quad, m) - exact) <= 1e-11 * exact);
}

TEST_CASE("domain volume and membership") {
  CHECK(DomainSpec{DomainKind::Disc, 1, 1.0}.volume() == doctest::Approx(kPi));
  CHECK(DomainSpec{DomainKind::Polydisc, 2, 1.0}.volume() == doctest::Approx(kPi * kPi));
  CHECK(DomainSpec{DomainKind::Ball, 2, 1.0}.volume() == doctest::Approx(kPi * kPi / 2.0));

  const DomainSpec ball{DomainKind::Ball, 2, 1.0};
  Eigen::VectorXcd z(2);
  z << std::complex<double>(0.7, 0.0), std::complex<double>(0.0, 0.7);
  CHECK(ball.contains(z));
  z << std::complex<double>(0.8, 0.0), std::complex<double>(0.0, 0.8);
  CHECK(!ball.contains(z));  // |z|^2 = 1.28

  const DomainSpec pd{DomainKind::Polydisc, 2, 1.0};
  z << std::complex<double>(0.99, 0.0), std::complex<double>(0.0, 0.99);
  CHECK(pd.contains(z));
  z << std::complex<double>(1.0, 0.0), std::complex<double>(0.0, 0.5);
  CHECK(!pd.contains(z));  // boundary is outside
}

TEST_CASE("quadrature nodes lie inside the domain") {
  for (DomainKind kind : {DomainKind::Disc, DomainKind::Polydisc, DomainKind::Ball}) {
    const int n = kind == DomainKind::Disc ? 1 : 2;
    const DomainSpec domain{kind, n, 1.0};
    const QuadratureRule quad = build_domain_quadrature(domain, 5);
    for (Eigen::Index q = 0; q < quad.size(); ++q) {
      CHECK(domain.contains(quad.nodes.row(q).transpose()));
    }
  }
}

TEST_CASE("spec validation rejects bad input") {
  CHECK_THROWS_AS(DomainSpec({DomainKind::Disc, 1, 0.0}).validate(), ConfigError);
  CHECK_THROWS_AS(DomainSpec({DomainKind::Disc, 2, 1.0}).validate(), ConfigError);
  CHECK_THROWS_AS(DomainSpec({DomainKind::Ball, 0, 1.0}).validate(), ConfigError);
  CHECK_THROWS_AS(build_domain_quadrature({DomainKind::Disc, 1, 1.0}, 0), ConfigError);

  const DomainSpec pd{DomainKind::Polydisc, 2, 1.0};
  SubmanifoldSpec S;
  S.codim = 0;
  CHECK_THROWS_AS(S.validate(pd), ConfigError);
  S.codim = 3;
  CHECK_THROWS_AS(S.validate(pd), ConfigError);

  SubmanifoldSpec pts;
  pts.kind = SubmanifoldKind::PointSet;
  pts.points.resize(1, 2);
  pts.points(0, 0) = std::complex<double>(1.2, 0.0);  // outside
  pts.points(0, 1) = 0.0;
  CHECK_THROWS_AS(pts.validate(pd), ConfigError);
  pts.points.resize(2, 2);
  pts.points.setZero();  // duplicate points
  CHECK_THROWS_AS(pts.validate(pd), ConfigError);

  WeightSpec w;
  w.alpha = -1.0;
  CHECK_THROWS_AS(w.validate(pd), ConfigError);
  w.alpha = 0.0;
  w.beta.resize(3);
  w.beta.setConstant(1.0);  // wrong length for n = 2
  CHECK_THROWS_AS(w.validate(pd), ConfigError);
}

TEST_CASE("weight evaluation") {
  WeightSpec w;
  w.alpha = 1.0;
  w.beta.resize(2);
  w.beta << 0.5, 0.0;
  w.c = 0.25;
  Eigen::MatrixXcd pts(1, 2);
  pts(0, 0) = std::complex<double>(1.0, 1.0);  // |z1|^2 = 2
  pts(0, 1) = std::complex<double>(0.0, 1.0);  // |z2|^2 = 1
  // phi = 1*(2+1) + 0.5*2 + 0.25 = 4.25
  CHECK(w.phi(pts.row(0).transpose()) == doctest::Approx(4.25));
  const Eigen::VectorXd e = eval_weight(w, pts);
  CHECK(e[0] == doctest::Approx(std::exp(-4.25)));
}

TEST_CASE("submanifold quadrature: coordinate slice is the induced domain rule") {
  const DomainSpec pd{DomainKind::Polydisc, 2, 1.0};
  SubmanifoldSpec S;
  S.codim = 1;
  const QuadratureRule squad = build_submanifold_quadrature(pd, S, 4);
  CHECK(squad.nodes.cols() == 1);
  // Same rule as the disc in one variable.
  const QuadratureRule disc = build_domain_quadrature({DomainKind::Disc, 1, 1.0}, 4);
  REQUIRE(squad.size() == disc.size());
  CHECK((squad.weights - disc.weights).cwiseAbs().maxCoeff() == 0.0);

  const Eigen::MatrixXcd embedded = embed_submanifold_points(pd, S, squad.nodes);
  CHECK(embedded.cols() == 2);
  CHECK(embedded.col(1).cwiseAbs().maxCoeff() == 0.0);
  CHECK((embedded.col(0) - squad.nodes.col(0)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("submanifold quadrature: full-codimension origin") {
  const DomainSpec ball{DomainKind::Ball, 2, 1.0};
  SubmanifoldSpec S;
  S.codim = 2;
  const QuadratureRule squad = build_submanifold_quadrature(ball, S, 4);
  CHECK(squad.size() == 1);
  CHECK(squad.nodes.cols() == 0);
  CHECK(squad.weights[0] == 1.0);
  CHECK_THROWS_AS(submanifold_as_domain(ball, S), ConfigError);
}

TEST_CASE("submanifold quadrature: point set atoms") {
  const DomainSpec disc{DomainKind::Disc, 1, 1.0};
  SubmanifoldSpec S;
  S.kind = SubmanifoldKind::PointSet;
  S.points.resize(2, 1);
  S.points(0, 0) = std::complex<double>(0.4, 0.0);
  S.points(1, 0) = std::complex<double>(-0.3, 0.2);
  const QuadratureRule squad = build_submanifold_quadrature(disc, S, 4);
  CHECK(squad.size() == 2);
  CHECK(squad.weights[0] == 1.0);
  CHECK(squad.weights[1] == 1.0);
  CHECK(squad.nodes(1, 0) == S.points(1, 0));
  const Eigen::MatrixXcd embedded = embed_submanifold_points(disc, S, squad.nodes);
  CHECK((embedded - S.points).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sigma: volume of the unit ball in C^k") {
  CHECK(sigma(1) == doctest::Approx(kPi));
  CHECK(sigma(2) == doctest::Approx(kPi * kPi / 2.0));
  CHECK(sigma(3) == doctest::Approx(kPi * kPi * kPi / 6.0));
}

TEST_CASE("quadrature construction is deterministic") {
  for (DomainKind kind : {DomainKind::Disc, DomainKind::Polydisc, DomainKind::Ball}) {
    const int n = kind == DomainKind::Disc ? 1 : 2;
    const DomainSpec domain{kind, n, 1.0};
    const QuadratureRule a = build_domain_quadrature(domain, 7);
    const QuadratureRule b = build_domain_quadrature(domain, 7);
    REQUIRE(a.size() == b.size());
    CHECK((a.weights - b.weights).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.nodes - b.nodes).cwiseAbs().maxCoeff() == 0.0);
  }
}
