#include "minext/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "minext/errors.hpp"
#include "minext/gauss.hpp"

namespace minext {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Angular node count per factor: equispaced angles kill every moment
// e^{i m theta} with 0 < |m| <= 2*order exactly as long as |m| < M.
int angular_count(int order) { return 4 * order + 1; }

struct Factor1D {
  std::vector<std::complex<double>> nodes;
  std::vector<double> weights;
};

// Polar rule for one disc factor of radius r: Gauss-Legendre in rho (the rho
// of rho*drho*dtheta absorbed into the weight) times equispaced angles.
Factor1D disc_factor(double r, int order) {
  const Rule1D radial = gauss_legendre_01(order + 1);
  const int m = angular_count(order);
  Factor1D f;
  f.nodes.reserve(static_cast<std::size_t>(radial.nodes.size()) * m);
  f.weights.reserve(f.nodes.capacity());
  for (Eigen::Index i = 0; i < radial.nodes.size(); ++i) {
    const double rho = r * radial.nodes[i];
    const double wr = r * r * radial.weights[i] * radial.nodes[i];
    for (int j = 0; j < m; ++j) {
      const double theta = kTwoPi * j / m;
      f.nodes.push_back(std::polar(rho, theta));
      f.weights.push_back(wr * kTwoPi / m);
    }
  }
  return f;
}

QuadratureRule tensor_polydisc(int n, double r, int order) {
  const Factor1D f = disc_factor(r, order);
  const Eigen::Index per = static_cast<Eigen::Index>(f.nodes.size());
  Eigen::Index total = 1;
  for (int j = 0; j < n; ++j) total *= per;

  QuadratureRule rule;
  rule.nodes.resize(total, n);
  rule.weights.resize(total);
  std::vector<Eigen::Index> digit(n, 0);
  for (Eigen::Index q = 0; q < total; ++q) {
    double w = 1.0;
    for (int j = 0; j < n; ++j) {
      rule.nodes(q, j) = f.nodes[digit[j]];
      w *= f.weights[digit[j]];
    }
    rule.weights[q] = w;
    for (int j = n - 1; j >= 0; --j) {
      if (++digit[j] < per) break;
      digit[j] = 0;
    }
  }
  rule.d_exact = 2 * order;
  return rule;
}

// Ball rule via the conical product on the simplex {t_j >= 0, sum t_j <= 1}
// of squared scaled radii t_j = |z_j|^2 / r^2: substituting
// t_j = u_j * prod_{i<j} (1 - u_i) maps the simplex onto the cube with
// Jacobian prod_j (1-u_j)^(n-j), which each Gauss-Jacobi factor absorbs.
// Angles are equispaced per coordinate as in the disc rule.
QuadratureRule ball_rule(int n, double r, int order) {
  const int nu = order + 1;
  const int m = angular_count(order);
  std::vector<Rule1D> urules(n);
  for (int j = 0; j < n; ++j) urules[j] = gauss_jacobi_01(nu, static_cast<double>(n - 1 - j));

  Eigen::Index total = 1;
  for (int j = 0; j < n; ++j) total *= static_cast<Eigen::Index>(nu) * m;

  QuadratureRule rule;
  rule.nodes.resize(total, n);
  rule.weights.resize(total);

  std::vector<int> udig(n, 0);
  std::vector<int> adig(n, 0);
  std::vector<double> t(n), stretch(n);
  Eigen::Index q = 0;
  const double angw = kTwoPi / m;
  // Outer odometer over radial digits, inner over angular digits.
  while (true) {
    double wu = 1.0;
    double running = 1.0;  // prod_{i<j} (1 - u_i)
    for (int j = 0; j < n; ++j) {
      const double u = urules[j].nodes[udig[j]];
      t[j] = u * running;
      running *= (1.0 - u);
      wu *= urules[j].weights[udig[j]];
    }
    double wbase = wu;
    for (int j = 0; j < n; ++j) wbase *= r * r / 2.0 * angw;
    for (int j = 0; j < n; ++j) stretch[j] = r * std::sqrt(t[j]);

    std::fill(adig.begin(), adig.end(), 0);
    while (true) {
      for (int j = 0; j < n; ++j) {
        rule.nodes(q, j) = std::polar(stretch[j], kTwoPi * adig[j] / m);
      }
      rule.weights[q] = wbase;
      ++q;
      int j = n - 1;
      for (; j >= 0; --j) {
        if (++adig[j] < m) break;
        adig[j] = 0;
      }
      if (j < 0) break;
    }

    int j = n - 1;
    for (; j >= 0; --j) {
      if (++udig[j] < nu) break;
      udig[j] = 0;
    }
    if (j < 0) break;
  }
  rule.d_exact = 2 * order;
  return rule;
}

}  // namespace

std::string to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::Disc: return "disc";
    case DomainKind::Polydisc: return "polydisc";
    case DomainKind::Ball: return "ball";
  }
  return "?";
}

std::string to_string(SubmanifoldKind kind) {
  switch (kind) {
    case SubmanifoldKind::CoordinateSubspace: return "coordinate_subspace";
    case SubmanifoldKind::PointSet: return "point_set";
  }
  return "?";
}

void DomainSpec::validate() const {
  if (n < 1) throw ConfigError("domain: complex dimension must be >= 1");
  if (!(radius > 0.0)) throw ConfigError("domain: radius must be positive");
  if (kind == DomainKind::Disc && n != 1) throw ConfigError("domain: disc requires n = 1");
}

double DomainSpec::volume() const {
  const double disc_area = std::numbers::pi * radius * radius;
  switch (kind) {
    case DomainKind::Disc: return disc_area;
    case DomainKind::Polydisc: return std::pow(disc_area, n);
    case DomainKind::Ball: return sigma(n) * std::pow(radius, 2 * n);
  }
  return 0.0;
}

bool DomainSpec::contains(const Eigen::VectorXcd& z) const {
  if (z.size() != n) return false;
  switch (kind) {
    case DomainKind::Disc:
    case DomainKind::Ball: return z.norm() < radius;
    case DomainKind::Polydisc: return z.cwiseAbs().maxCoeff() < radius;
  }
  return false;
}

void SubmanifoldSpec::validate(const DomainSpec& domain) const {
  if (kind == SubmanifoldKind::CoordinateSubspace) {
    if (codim < 1 || codim > domain.n)
      throw ConfigError("submanifold: codimension must satisfy 1 <= k <= n");
  } else {
    if (points.rows() < 1) throw ConfigError("submanifold: point set is empty");
    if (points.cols() != domain.n)
      throw ConfigError("submanifold: points must have n coordinates");
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      if (!domain.contains(points.row(i).transpose()))
        throw ConfigError("submanifold: point " + std::to_string(i) +
                          " is not strictly interior to the domain");
    }
    // Degenerate clusters make the interpolation constraints ill-conditioned.
    const double min_sep = 1e-6 * domain.radius;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      for (Eigen::Index j = i + 1; j < points.rows(); ++j) {
        if ((points.row(i) - points.row(j)).norm() < min_sep)
          throw ConfigError("submanifold: points " + std::to_string(i) + " and " +
                            std::to_string(j) + " are closer than 1e-6 * radius");
      }
    }
  }
}

void WeightSpec::validate(const DomainSpec& domain) const {
  if (alpha < 0.0) throw ConfigError("weight: alpha must be >= 0");
  if (beta.size() != 0 && beta.size() != domain.n)
    throw ConfigError("weight: beta needs one entry per coordinate (or none)");
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    if (beta[j] < 0.0) throw ConfigError("weight: beta entries must be >= 0");
  }
}

double WeightSpec::phi(const Eigen::VectorXcd& z) const {
  double v = c + alpha * z.squaredNorm();
  for (Eigen::Index j = 0; j < beta.size() && j < z.size(); ++j) {
    v += beta[j] * std::norm(z[j]);
  }
  return v;
}

QuadratureRule build_domain_quadrature(const DomainSpec& domain, int order) {
  domain.validate();
  if (order < 1) throw ConfigError("quadrature: order must be >= 1");
  switch (domain.kind) {
    case DomainKind::Disc: return tensor_polydisc(1, domain.radius, order);
    case DomainKind::Polydisc: return tensor_polydisc(domain.n, domain.radius, order);
    case DomainKind::Ball:
      if (domain.n == 1) return tensor_polydisc(1, domain.radius, order);
      return ball_rule(domain.n, domain.radius, order);
  }
  throw ConfigError("quadrature: unsupported domain kind");
}

DomainSpec submanifold_as_domain(const DomainSpec& domain, const SubmanifoldSpec& S) {
  if (S.kind != SubmanifoldKind::CoordinateSubspace)
    throw ConfigError("submanifold_as_domain: only coordinate subspaces are model domains");
  if (S.codim >= domain.n)
    throw ConfigError("submanifold_as_domain: S is zero-dimensional");
  DomainSpec sub = domain;
  sub.n = domain.n - S.codim;
  if (sub.n == 1) sub.kind = DomainKind::Disc;  // all model kinds coincide in one variable
  return sub;
}

QuadratureRule build_submanifold_quadrature(const DomainSpec& domain, const SubmanifoldSpec& S,
                                            int order) {
  domain.validate();
  S.validate(domain);
  if (S.kind == SubmanifoldKind::PointSet) {
    QuadratureRule rule;
    rule.nodes = S.points;
    rule.weights = Eigen::VectorXd::Ones(S.points.rows());
    rule.d_exact = -1;  // atomic measure, no polynomial exactness claim
    return rule;
  }
  if (S.codim == domain.n) {
    // S = {0}: the induced measure is the unit atom at the origin.
    QuadratureRule rule;
    rule.nodes = Eigen::MatrixXcd::Zero(1, 0);
    rule.weights = Eigen::VectorXd::Ones(1);
    rule.d_exact = -1;
    return rule;
  }
  return build_domain_quadrature(submanifold_as_domain(domain, S), order);
}

Eigen::MatrixXcd embed_submanifold_points(const DomainSpec& domain, const SubmanifoldSpec& S,
                                          const Eigen::MatrixXcd& s_points) {
  if (S.kind == SubmanifoldKind::PointSet) return s_points;
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(s_points.rows(), domain.n);
  full.leftCols(s_points.cols()) = s_points;
  return full;
}

Eigen::VectorXd eval_weight(const WeightSpec& w, const Eigen::MatrixXcd& points) {
  Eigen::VectorXd out(points.rows());
  for (Eigen::Index q = 0; q < points.rows(); ++q) {
    out[q] = std::exp(-w.phi(points.row(q).transpose()));
  }
  return out;
}

double sigma(int k) {
  if (k < 1) throw ConfigError("sigma: k must be >= 1");
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v *= std::numbers::pi / i;
  return v;
}

}  // namespace minext
