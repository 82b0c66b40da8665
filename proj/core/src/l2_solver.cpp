#include "minext/l2_solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>

#include "minext/errors.hpp"
#include "minext/kahan.hpp"

namespace minext {

namespace {

Eigen::VectorXd combined_weights(const L2Problem& prob) {
  return prob.data->quad.weights.cwiseProduct(prob.density);
}

double weighted_norm_sq(const Eigen::VectorXcd& values, const Eigen::VectorXd& wd) {
  KahanAccumulator acc;
  for (Eigen::Index i = 0; i < values.size(); ++i)
    acc.add(wd[i] * std::norm(values[i]));
  return acc.value();
}

// Solve G y = b for Hermitian PSD G; thresholded eigendecomposition when
// Cholesky refuses. Reports whether the fallback fired.
Eigen::VectorXcd solve_psd(const Eigen::MatrixXcd& G, const Eigen::VectorXcd& b,
                           bool* pseudo) {
  *pseudo = false;
  if (G.rows() == 0) return Eigen::VectorXcd(0);
  Eigen::LLT<Eigen::MatrixXcd> llt(G);
  if (llt.info() == Eigen::Success) {
    Eigen::VectorXcd y = llt.solve(b);
    if (y.allFinite()) return y;
  }
  *pseudo = true;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
  if (es.info() != Eigen::Success) throw SolverError("quadratic solve: eigendecomposition failed");
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double cut = 1e-12 * std::max(ev.cwiseAbs().maxCoeff(), 0.0);
  Eigen::VectorXcd t = es.eigenvectors().adjoint() * b;
  for (Eigen::Index i = 0; i < t.size(); ++i)
    t[i] = ev[i] > cut ? t[i] / ev[i] : std::complex<double>(0.0);
  return es.eigenvectors() * t;
}

}  // namespace

L2Result solve_l2(const L2Problem& prob) {
  const Discretization& d = *prob.data;
  const Eigen::VectorXd wd = combined_weights(prob);
  L2Result out;
  if (d.n_free() == 0) {
    out.y = Eigen::VectorXcd(0);
    out.coeffs = d.c_particular;
    out.objective = weighted_norm_sq(d.fixed_values, wd);
    return out;
  }
  // Design-matrix normal equations: rows sqrt(wd) phi_free, target -sqrt(wd) fixed.
  const Eigen::VectorXd sq = wd.cwiseSqrt();
  const Eigen::MatrixXcd A = sq.asDiagonal() * d.phi_free;
  const Eigen::VectorXcd rhs = -(A.adjoint() * (sq.asDiagonal() * d.fixed_values));
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(d.n_free(), d.n_free());
  G.selfadjointView<Eigen::Lower>().rankUpdate(A.adjoint());
  for (Eigen::Index j = 1; j < G.cols(); ++j)
    for (Eigen::Index i = 0; i < j; ++i) G(i, j) = std::conj(G(j, i));
  out.y = solve_psd(G, rhs, &out.pseudo_solved);
  out.coeffs = d.coefficients(out.y);
  out.objective = weighted_norm_sq(d.phi * out.coeffs, wd);
  out.orthogonality = orthogonality_residual(prob, out.coeffs);
  return out;
}

L2Result solve_l2_via_gram(const L2Problem& prob) {
  const Discretization& d = *prob.data;
  const Eigen::VectorXd wd = combined_weights(prob);
  L2Result out;
  if (d.n_free() == 0) {
    out.y = Eigen::VectorXcd(0);
    out.coeffs = d.c_particular;
    out.objective = weighted_norm_sq(d.fixed_values, wd);
    return out;
  }
  // Full-basis Gram, then restrict: minimize (c_p + N y)^H G (c_p + N y).
  const Eigen::MatrixXcd G_full = gram(d.phi, WeightField{prob.density}, d.quad);
  const Eigen::MatrixXcd Gff = d.null_map.adjoint() * G_full * d.null_map;
  const Eigen::VectorXcd rhs = -(d.null_map.adjoint() * (G_full * d.c_particular));
  out.y = solve_psd(Gff, rhs, &out.pseudo_solved);
  out.coeffs = d.coefficients(out.y);
  out.objective = weighted_norm_sq(d.phi * out.coeffs, wd);
  out.orthogonality = orthogonality_residual(prob, out.coeffs);
  return out;
}

double orthogonality_residual(const L2Problem& prob, const Eigen::VectorXcd& coeffs) {
  const Discretization& d = *prob.data;
  if (d.n_free() == 0) return 0.0;
  const Eigen::VectorXd wd = combined_weights(prob);
  const Eigen::VectorXcd fv = d.phi * coeffs;
  const double fn = std::sqrt(weighted_norm_sq(fv, wd));
  if (fn == 0.0) return 0.0;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < d.n_free(); ++j) {
    const Eigen::VectorXcd mv = d.phi_free.col(j);
    KahanAccumulator re, im;
    for (Eigen::Index i = 0; i < fv.size(); ++i) {
      const std::complex<double> t = wd[i] * fv[i] * std::conj(mv[i]);
      re.add(t.real());
      im.add(t.imag());
    }
    const double mn = std::sqrt(weighted_norm_sq(mv, wd));
    if (mn == 0.0) continue;
    const double r = std::hypot(re.value(), im.value()) / (fn * mn);
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace minext
