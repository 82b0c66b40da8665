#include "minext/irls.hpp"

#include <cmath>

#include "minext/errors.hpp"
#include "minext/kahan.hpp"
#include "minext/l2_solver.hpp"

namespace minext {

namespace {

double weighted_norm(const Discretization& d, const Eigen::VectorXcd& values) {
  KahanAccumulator acc;
  for (Eigen::Index i = 0; i < values.size(); ++i)
    acc.add(d.quad.weights[i] * d.base_density[i] * std::norm(values[i]));
  return std::sqrt(acc.value());
}

double smoothed_energy(const Discretization& d, const Eigen::VectorXcd& values, double p,
                       double eps) {
  KahanAccumulator acc;
  for (Eigen::Index i = 0; i < values.size(); ++i)
    acc.add(d.quad.weights[i] * d.base_density[i] * std::pow(std::norm(values[i]) + eps, 0.5 * p));
  return acc.value();
}

}  // namespace

WeightField reweight(const Eigen::VectorXcd& values, double p,
                     const Eigen::VectorXd& base_density, double eps) {
  if (!(eps > 0.0)) throw ConfigError("reweight needs eps > 0");
  Eigen::VectorXd omega(values.size());
  const double expo = 0.5 * (p - 2.0);
  for (Eigen::Index i = 0; i < values.size(); ++i)
    omega[i] = base_density[i] * std::pow(std::norm(values[i]) + eps, expo);
  return WeightField{std::move(omega)};
}

IrlsResult irls_solve(const LpProblem& prob, const Eigen::VectorXcd& start_coeffs,
                      const IrlsSchedule& schedule) {
  prob.validate();
  const Discretization& d = *prob.data;
  const double floor = prob.eps;
  if (!(floor > 0.0)) throw ConfigError("reweighted iteration needs eps > 0");

  IrlsResult out;
  if (prob.p == 2.0) {
    // The reweighting exponent vanishes: one plain least-squares solve.
    L2Result r = solve_l2({prob.data, d.base_density});
    out.state = {r.coeffs, floor, smoothed_energy(d, d.phi * r.coeffs, 2.0, floor),
                 d.base_density};
    out.pseudo_solved = r.pseudo_solved;
    out.iterations = 1;
    out.trace.push_back({0, floor, out.state.objective, 0.0, r.orthogonality});
    return out;
  }

  Eigen::VectorXcd coeffs = start_coeffs;
  Eigen::VectorXcd values = d.phi * coeffs;
  double eps = std::max(floor, schedule.eps0);
  for (int m = 0; m < schedule.max_iterations; ++m) {
    const WeightField omega = reweight(values, prob.p, d.base_density, eps);
    L2Result r = solve_l2({prob.data, omega.values});
    out.pseudo_solved = out.pseudo_solved || r.pseudo_solved;

    const Eigen::VectorXcd new_values = d.phi * r.coeffs;
    const double step = weighted_norm(d, new_values - values);
    const double scale = 1.0 + weighted_norm(d, values);
    coeffs = r.coeffs;
    values = new_values;

    LpProblem at_eps = prob;
    at_eps.eps = eps;
    const double stationarity = variational_residual_p(at_eps, coeffs);
    out.state = {coeffs, eps, smoothed_energy(d, values, prob.p, eps), omega.values};
    out.trace.push_back({m, eps, out.state.objective, step, stationarity});
    out.iterations = m + 1;

    if (step <= schedule.step_tol * scale) {
      if (eps <= floor) return out;
      // Stalled above the floor: the iterate no longer depends on this
      // smoothing level, so drop straight to the floor.
      eps = floor;
    } else {
      eps = std::max(floor, eps / schedule.decay);
    }
  }
  throw ConvergenceError("reweighted iteration: no convergence within the iteration cap",
                         out.trace);
}

IrlsResult irls_solve(const LpProblem& prob, const IrlsSchedule& schedule) {
  prob.validate();
  L2Result base = solve_l2({prob.data, prob.data->base_density});
  return irls_solve(prob, base.coeffs, schedule);
}

double fixed_point_residual(const LpProblem& prob, const Eigen::VectorXcd& coeffs) {
  prob.validate();
  const Discretization& d = *prob.data;
  const Eigen::VectorXcd values = d.phi * coeffs;
  const WeightField omega = reweight(values, prob.p, d.base_density, prob.eps);
  L2Result r = solve_l2({prob.data, omega.values});
  return weighted_norm(d, d.phi * r.coeffs - values) / (1.0 + weighted_norm(d, values));
}

double norm_transfer_gap(const LpProblem& prob, const Eigen::VectorXcd& coeffs) {
  prob.validate();
  const Discretization& d = *prob.data;
  const Eigen::VectorXcd values = d.phi * coeffs;
  const WeightField omega = reweight(values, prob.p, d.base_density, prob.eps);
  KahanAccumulator two_norm, p_norm;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double w = d.quad.weights[i];
    two_norm.add(w * omega.values[i] * std::norm(values[i]));
    p_norm.add(w * d.base_density[i] * std::pow(std::abs(values[i]), prob.p));
  }
  const double denom = p_norm.value();
  if (denom == 0.0) return std::abs(two_norm.value());
  return std::abs(two_norm.value() - denom) / denom;
}

bool descent_check(const Trace& trace) {
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i].eps != trace[i - 1].eps) continue;
    if (trace[i].objective > trace[i - 1].objective + 1e-12) return false;
  }
  return true;
}

FixedPointCertificate make_fixed_point_certificate(const LpProblem& prob,
                                                   const IrlsResult& irls,
                                                   const Eigen::VectorXcd& direct_coeffs) {
  prob.validate();
  const Discretization& d = *prob.data;
  FixedPointCertificate cert;
  cert.iterate_difference = irls.trace.empty() ? 0.0 : irls.trace.back().step;

  const Eigen::VectorXcd vi = d.phi * irls.state.coeffs;
  const Eigen::VectorXcd vd = d.phi * direct_coeffs;
  cert.cross_distance = weighted_norm(d, vi - vd);

  // Orthogonality of the difference against every admissible direction in the
  // inner product reweighted around the direct minimizer.
  if (d.n_free() > 0) {
    const WeightField omega = reweight(vd, prob.p, d.base_density, prob.eps);
    const Eigen::VectorXd wr = d.quad.weights.cwiseProduct(omega.values);
    Eigen::VectorXcd delta_w(vd.size());
    for (Eigen::Index i = 0; i < vd.size(); ++i) delta_w[i] = wr[i] * (vd[i] - vi[i]);
    const Eigen::VectorXcd t = d.phi_free.adjoint() * delta_w;
    double fnorm_sq = 0.0;
    for (Eigen::Index i = 0; i < vd.size(); ++i) fnorm_sq += wr[i] * std::norm(vd[i]);
    if (fnorm_sq > 0.0) {
      const Eigen::MatrixXd P2 = d.phi_free.cwiseAbs2();
      const Eigen::VectorXd col_sq = P2.transpose() * wr;
      for (Eigen::Index j = 0; j < t.size(); ++j) {
        if (col_sq[j] <= 0.0) continue;
        cert.identity_residual =
            std::max(cert.identity_residual, std::abs(t[j]) / std::sqrt(fnorm_sq * col_sq[j]));
      }
    }
  }
  return cert;
}

}  // namespace minext
