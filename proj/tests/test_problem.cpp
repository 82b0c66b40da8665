#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>

#include "helpers.hpp"
#include "minext/errors.hpp"
#include "minext/problem.hpp"

using namespace minext;

TEST_CASE("disc assembly: particular solution pins the constant") {
  const auto data = testutil::assemble(testutil::disc_spec(std::complex<double>(2.0, -1.0)));
  REQUIRE(data->n_basis() == 9);
  REQUIRE(data->n_free() == 8);
  CHECK(data->c_particular[0] == std::complex<double>(2.0, -1.0));
  CHECK(data->c_particular.tail(8).cwiseAbs().maxCoeff() == 0.0);
  // null_map columns are unit vectors on the free monomials z, z^2, ...
  for (Eigen::Index j = 0; j < data->n_free(); ++j) {
    CHECK(data->null_map.col(j).cwiseAbs().sum() == 1.0);
    CHECK(data->null_map(j + 1, j) == std::complex<double>(1.0, 0.0));
  }
  CHECK(data->base_density.isApproxToConstant(1.0));
  // phi * c roundtrip.
  const Eigen::VectorXcd y = Eigen::VectorXcd::Constant(8, std::complex<double>(0.5, 0.5));
  const Eigen::VectorXcd c = data->coefficients(y);
  CHECK((data->variation_part(c) - y).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("polydisc assembly places the slice data by exponent") {
  const auto data = testutil::assemble(testutil::polydisc_spec(3, 4));
  // Basis of degree 3 in 2 vars: 10 monomials; constrained = z1-only: 4.
  REQUIRE(data->n_basis() == 10);
  REQUIRE(data->n_free() == 6);
  // f = 1 + z1 lands on the exponents (0,0) and (1,0).
  for (Eigen::Index b = 0; b < data->n_basis(); ++b) {
    const Eigen::VectorXi& a = data->basis.indices[static_cast<std::size_t>(b)];
    std::complex<double> want = 0.0;
    if (a[1] == 0 && a[0] == 0) want = 1.0;
    if (a[1] == 0 && a[0] == 1) want = 1.0;
    CHECK(data->c_particular[b] == want);
  }
  // fixed_values are the node values of 1 + z1.
  const Eigen::VectorXcd direct =
      Eigen::VectorXcd::Ones(data->quad.size()) + data->quad.nodes.col(0);
  CHECK((data->fixed_values - direct).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("data longer than the slice basis is rejected") {
  testutil::Specs s = testutil::disc_spec();
  s.degree = 2;
  s.f.resize(2);
  s.f << 1.0, 1.0;  // S is a point: only the constant is admissible
  CHECK_THROWS_AS(testutil::assemble(s), ConfigError);

  testutil::Specs pd = testutil::polydisc_spec(2, 4);
  pd.f.resize(4);
  pd.f.setOnes();  // degree-2 slice basis has only 3 monomials
  CHECK_THROWS_AS(testutil::assemble(pd), ConfigError);
}

TEST_CASE("point-set assembly interpolates and parametrizes the kernel") {
  const auto data = testutil::assemble(testutil::pointset_spec(4, 8));
  REQUIRE(data->n_basis() == 5);
  REQUIRE(data->n_free() == 3);
  // Particular solution interpolates the data.
  const Eigen::MatrixXcd A = data->split.constraint_matrix;
  CHECK((A * data->c_particular - data->f_data).cwiseAbs().maxCoeff() <= 1e-12);
  // Kernel columns are in the nullspace and orthonormal.
  CHECK((A * data->null_map).cwiseAbs().maxCoeff() <= 1e-12);
  const Eigen::MatrixXcd gramk = data->null_map.adjoint() * data->null_map;
  CHECK((gramk - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);
  // Any feasible point stays feasible.
  const Eigen::VectorXcd y = Eigen::VectorXcd::Constant(3, std::complex<double>(0.2, -0.7));
  CHECK((A * data->coefficients(y) - data->f_data).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("inconsistent point constraints fail as unsolvable") {
  testutil::Specs s = testutil::pointset_spec(0, 8);  // constants only
  // Two distinct prescribed values at two points cannot both hold.
  CHECK_THROWS_AS(testutil::assemble(s), SolverError);
}

TEST_CASE("point data length must match the point count") {
  testutil::Specs s = testutil::pointset_spec();
  s.f.resize(1);
  s.f << 1.0;
  CHECK_THROWS_AS(testutil::assemble(s), ConfigError);
}

TEST_CASE("full-codimension slice: only the constant is constrained") {
  const auto data = testutil::assemble(testutil::ball_spec(2, 4));
  REQUIRE(data->n_basis() == 6);
  REQUIRE(data->n_free() == 5);
  CHECK(data->c_particular[0] == std::complex<double>(1.0, 0.0));
}

TEST_CASE("naive extension differs from the particular solution in one direction") {
  const auto data = testutil::assemble(testutil::disc_spec());
  const Eigen::VectorXcd naive = naive_extension(*data);
  const Eigen::VectorXcd diff = naive - data->c_particular;
  CHECK((diff - data->null_map.col(0)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("degree zero with a coordinate slice leaves no freedom") {
  const auto data = testutil::assemble(testutil::disc_spec(1.0, 0.0, 0, 4));
  CHECK(data->n_basis() == 1);
  CHECK(data->n_free() == 0);
  CHECK((naive_extension(*data) - data->c_particular).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("weighted assembly samples the density") {
  const auto data = testutil::assemble(testutil::disc_spec(1.0, 1.0));
  for (Eigen::Index q = 0; q < data->quad.size(); ++q) {
    const double expect = std::exp(-std::norm(data->quad.nodes(q, 0)));
    CHECK(data->base_density[q] == doctest::Approx(expect).epsilon(1e-14));
  }
}
