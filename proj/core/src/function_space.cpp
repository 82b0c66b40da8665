#include "minext/function_space.hpp"

#include <algorithm>
#include <cmath>

#include "minext/errors.hpp"
#include "minext/kahan.hpp"

namespace minext {

namespace {

void append_indices_of_degree(int n, int total, Eigen::VectorXi& scratch, int pos, int left,
                              std::vector<Eigen::VectorXi>& out) {
  if (pos == n - 1) {
    scratch[pos] = left;
    out.push_back(scratch);
    return;
  }
  // Lexicographic within a degree block: larger leading exponent first.
  for (int a = left; a >= 0; --a) {
    scratch[pos] = a;
    append_indices_of_degree(n, total, scratch, pos + 1, left - a, out);
  }
}

}  // namespace

Basis build_basis(int n, int degree) {
  if (n < 0) throw ConfigError("basis: negative variable count");
  if (degree < 0) throw ConfigError("basis: negative degree cap");
  Basis basis;
  basis.n = n;
  basis.degree = degree;
  if (n == 0) {
    basis.indices.push_back(Eigen::VectorXi(0));
    return basis;
  }
  Eigen::VectorXi scratch(n);
  for (int d = 0; d <= degree; ++d) {
    append_indices_of_degree(n, d, scratch, 0, d, basis.indices);
  }
  return basis;
}

BasisSplit split_basis(const Basis& basis, const SubmanifoldSpec& S) {
  BasisSplit split;
  if (S.kind == SubmanifoldKind::PointSet) {
    split.constraint_matrix = vandermonde(basis, S.points);
    return split;
  }
  const int keep = basis.n - S.codim;
  for (Eigen::Index b = 0; b < basis.size(); ++b) {
    const Eigen::VectorXi& a = basis.indices[static_cast<std::size_t>(b)];
    bool vanishes = false;
    for (int j = keep; j < basis.n; ++j) {
      if (a[j] > 0) {
        vanishes = true;
        break;
      }
    }
    (vanishes ? split.free : split.constrained).push_back(b);
  }
  return split;
}

Eigen::MatrixXcd vandermonde(const Basis& basis, const Eigen::MatrixXcd& points) {
  const Eigen::Index npts = points.rows();
  const Eigen::Index nb = basis.size();
  // Per-variable power tables, then one product per basis column.
  std::vector<Eigen::MatrixXcd> powers(static_cast<std::size_t>(basis.n));
  for (int j = 0; j < basis.n; ++j) {
    Eigen::MatrixXcd& table = powers[static_cast<std::size_t>(j)];
    table.resize(npts, basis.degree + 1);
    table.col(0).setOnes();
    for (int d = 1; d <= basis.degree; ++d) {
      table.col(d) = table.col(d - 1).cwiseProduct(points.col(j));
    }
  }
  Eigen::MatrixXcd phi(npts, nb);
  for (Eigen::Index b = 0; b < nb; ++b) {
    const Eigen::VectorXi& a = basis.indices[static_cast<std::size_t>(b)];
    phi.col(b).setOnes();
    for (int j = 0; j < basis.n; ++j) {
      if (a[j] > 0) phi.col(b) = phi.col(b).cwiseProduct(powers[static_cast<std::size_t>(j)].col(a[j]));
    }
  }
  return phi;
}

Eigen::VectorXcd evaluate(const HoloFunction& g, const Eigen::MatrixXcd& points) {
  if (g.coeffs.size() != g.basis.size())
    throw ConfigError("evaluate: coefficient/basis length mismatch");
  return vandermonde(g.basis, points) * g.coeffs;
}

std::variant<HoloFunction, Eigen::VectorXcd> restrict_to(const HoloFunction& g,
                                                         const SubmanifoldSpec& S) {
  if (S.kind == SubmanifoldKind::PointSet) {
    return Eigen::VectorXcd(evaluate(g, S.points));
  }
  const int keep = g.basis.n - S.codim;
  HoloFunction out;
  out.basis = build_basis(keep, g.basis.degree);
  if (keep >= 1) {
    out.domain = submanifold_as_domain(g.domain, S);
  } else {
    out.domain = g.domain;
    out.domain.n = 0;  // restriction to a point: the constant term
  }
  out.coeffs = Eigen::VectorXcd::Zero(out.basis.size());
  // Monomials with support in the trailing k variables restrict to zero; the
  // rest reappear as monomials in the leading n-k variables.
  for (Eigen::Index b = 0; b < g.basis.size(); ++b) {
    const Eigen::VectorXi& a = g.basis.indices[static_cast<std::size_t>(b)];
    bool vanishes = false;
    for (int j = keep; j < g.basis.n; ++j) {
      if (a[j] > 0) {
        vanishes = true;
        break;
      }
    }
    if (vanishes) continue;
    const Eigen::VectorXi head = a.head(keep);
    for (Eigen::Index s = 0; s < out.basis.size(); ++s) {
      if (out.basis.indices[static_cast<std::size_t>(s)] == head) {
        out.coeffs[s] = g.coeffs[b];
        break;
      }
    }
  }
  return out;
}

Eigen::MatrixXcd gram(const Eigen::MatrixXcd& phi, const WeightField& density,
                      const QuadratureRule& quad) {
  if (density.values.size() != quad.size() || phi.rows() != quad.size())
    throw ConfigError("gram: node count mismatch");
  const Eigen::VectorXd wd = quad.weights.cwiseProduct(density.values);
  const Eigen::MatrixXcd scaled = wd.cwiseSqrt().asDiagonal() * phi;
  const Eigen::Index nb = phi.cols();
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(nb, nb);
  g.selfadjointView<Eigen::Lower>().rankUpdate(scaled.adjoint());
  for (Eigen::Index i = 0; i < nb; ++i) {
    for (Eigen::Index j = i + 1; j < nb; ++j) g(i, j) = std::conj(g(j, i));
  }
  return g;
}

Eigen::MatrixXcd gram(const Basis& basis, const WeightField& density,
                      const QuadratureRule& quad) {
  return gram(vandermonde(basis, quad.nodes), density, quad);
}

double p_energy(const Eigen::VectorXcd& values, double p, const Eigen::VectorXd& quad_weights,
                const Eigen::VectorXd& density) {
  if (!(p > 0.0)) throw ConfigError("p_energy: p must be positive");
  KahanAccumulator acc;
  for (Eigen::Index q = 0; q < values.size(); ++q) {
    acc.add(quad_weights[q] * std::pow(std::norm(values[q]), 0.5 * p) * density[q]);
  }
  return acc.value();
}

double p_norm_p(const HoloFunction& g, double p, const WeightField& density,
                const QuadratureRule& quad) {
  return p_energy(evaluate(g, quad.nodes), p, quad.weights, density.values);
}

}  // namespace minext
