#include "minext/lp_solver.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <complex>

#include "minext/errors.hpp"
#include "minext/kahan.hpp"
#include "minext/rng.hpp"

namespace minext {

namespace {

constexpr double kArmijoSlope = 1e-4;
constexpr double kBacktrack = 0.5;
constexpr double kStepMin = 1e-8;
constexpr double kStepMax = 1e2;
constexpr int kMaxIterPerStage = 10000;
constexpr double kStageTol = 1e-7;   // stationarity target at intermediate smoothing
constexpr double kFinalTol = 1e-9;   // target at the final smoothing level
constexpr double kStallTol = 1e-6;   // acceptable when backtracking bottoms out
constexpr double kTieTol = 1e-9;     // objectives equal for tie-breaking purposes

double smoothed_power(double normsq, double eps, double expo) {
  return std::pow(normsq + eps, expo);
}

// Shared per-iterate quantities at fixed smoothing eps.
struct Evaluation {
  double objective = 0.0;
  Eigen::VectorXd rho;      // (|v|^2 + eps)^{(p-2)/2} * e^{-phi}, per node
  Eigen::VectorXcd values;  // g at nodes
};

Evaluation evaluate(const Discretization& d, double p, double eps,
                    const Eigen::VectorXcd& values, bool want_rho) {
  Evaluation ev;
  ev.values = values;
  KahanAccumulator acc;
  const double half_p = 0.5 * p;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    acc.add(d.quad.weights[i] * d.base_density[i] *
            smoothed_power(std::norm(values[i]), eps, half_p));
  }
  ev.objective = acc.value();
  if (want_rho) {
    ev.rho.resize(values.size());
    const double expo = half_p - 1.0;
    for (Eigen::Index i = 0; i < values.size(); ++i)
      ev.rho[i] = d.base_density[i] * smoothed_power(std::norm(values[i]), eps, expo);
  }
  return ev;
}

// Stationarity of J_eps: max_j |<v, m_j>_rho| / (||v||_rho ||m_j||_rho).
// P2 holds |phi_free|^2 entrywise so the column norms are one real product.
Eigen::VectorXcd scale_by(const Eigen::VectorXd& w, const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = w[i] * v[i];
  return out;
}

double residual_from(const Discretization& d, const Eigen::MatrixXd& P2, const Evaluation& ev,
                     Eigen::VectorXcd* pairing_out) {
  const Eigen::VectorXd wr = d.quad.weights.cwiseProduct(ev.rho);
  const Eigen::VectorXcd t = d.phi_free.adjoint() * scale_by(wr, ev.values);
  if (pairing_out) *pairing_out = t;
  double fnorm_sq = 0.0;
  for (Eigen::Index i = 0; i < ev.values.size(); ++i)
    fnorm_sq += wr[i] * std::norm(ev.values[i]);
  if (fnorm_sq <= 0.0) return 0.0;
  const Eigen::VectorXd col_sq = P2.transpose() * wr;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < t.size(); ++j) {
    if (col_sq[j] <= 0.0) continue;
    worst = std::max(worst, std::abs(t[j]) / std::sqrt(fnorm_sq * col_sq[j]));
  }
  return worst;
}

bool lex_less(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

struct StartOutcome {
  Eigen::VectorXcd y;
  double objective = 0.0;  // at the final smoothing level
  Trace trace;
};

// Preconditioned descent state shared across smoothing stages of one start.
class Descent {
 public:
  Descent(const LpProblem& prob, const Eigen::MatrixXd& P2, const Eigen::MatrixXcd& chol_L,
          bool precondition)
      : d_(*prob.data), p_(prob.p), P2_(P2), L_(chol_L), precond_(precondition) {}

  // Runs one smoothing stage to the given stationarity tolerance; appends
  // accepted iterates to the trace. u is the preconditioned free coordinate.
  void run_stage(double eps, double tol, Eigen::VectorXcd& u, Trace& trace) const {
    Eigen::VectorXcd y = unpack(u);
    Evaluation ev = evaluate(d_, p_, eps, d_.fixed_values + d_.phi_free * y, true);
    Eigen::VectorXcd pairing;
    double res = residual_from(d_, P2_, ev, &pairing);
    Eigen::VectorXcd grad_u = pack_grad(p_ * pairing);
    trace.push_back({0, eps, ev.objective, 0.0, res});

    Eigen::VectorXcd u_prev, g_prev;
    double step = 1.0;
    for (int iter = 1; res > tol; ++iter) {
      if (iter > kMaxIterPerStage)
        throw ConvergenceError("direct solve: iteration budget exhausted at smoothing " +
                                   std::to_string(eps),
                               trace);
      if (iter > 1) {
        const Eigen::VectorXcd s = u - u_prev;
        const Eigen::VectorXcd gdiff = grad_u - g_prev;
        const double denom = s.dot(gdiff).real();
        if (denom > 1e-300) step = s.squaredNorm() / denom;
      }
      step = std::clamp(step, kStepMin, kStepMax);

      const double slope = -grad_u.squaredNorm();  // d/dt J(u - t grad)
      double t = step;
      Evaluation trial;
      bool accepted = false;
      for (int bt = 0; bt < 60; ++bt) {
        const Eigen::VectorXcd u_try = u - t * grad_u;
        trial = evaluate(d_, p_, eps, d_.fixed_values + d_.phi_free * unpack(u_try), true);
        if (trial.objective <= ev.objective + kArmijoSlope * t * slope) {
          u_prev = u;
          g_prev = grad_u;
          u = u_try;
          accepted = true;
          break;
        }
        t *= kBacktrack;
      }
      if (!accepted) {
        // Backtracking bottomed out: the quadratic model is exhausted at this
        // floating-point scale. Accept if already near-stationary.
        if (res <= kStallTol) return;
        throw ConvergenceError("direct solve: no descent step at smoothing " +
                                   std::to_string(eps),
                               trace);
      }
      ev = trial;
      res = residual_from(d_, P2_, ev, &pairing);
      grad_u = pack_grad(p_ * pairing);
      trace.push_back({iter, eps, ev.objective, t, res});
    }
  }

  Eigen::VectorXcd pack(const Eigen::VectorXcd& y) const {
    if (!precond_) return y;
    return L_.adjoint().triangularView<Eigen::Upper>() * y;
  }
  Eigen::VectorXcd unpack(const Eigen::VectorXcd& u) const {
    if (!precond_) return u;
    return L_.adjoint().triangularView<Eigen::Upper>().solve(u);
  }
  Eigen::VectorXcd pack_grad(const Eigen::VectorXcd& grad_y) const {
    if (!precond_) return grad_y;
    return L_.triangularView<Eigen::Lower>().solve(grad_y);
  }

 private:
  const Discretization& d_;
  double p_;
  const Eigen::MatrixXd& P2_;
  const Eigen::MatrixXcd& L_;
  bool precond_;
};

std::vector<double> smoothing_schedule(double eps_final) {
  std::vector<double> stages;
  for (double e = 1e-2; e > eps_final; e *= 1e-2) stages.push_back(e);
  stages.push_back(eps_final);
  return stages;
}

}  // namespace

void LpProblem::validate() const {
  if (!data) throw ConfigError("p-energy problem: missing discretization");
  if (!(p > 0.0) || p > 2.0) throw ConfigError("p must lie in (0, 2]");
  if (!(eps >= 0.0)) throw ConfigError("smoothing eps must be >= 0");
}

double objective_value(const LpProblem& prob, const Eigen::VectorXcd& coeffs) {
  prob.validate();
  const Discretization& d = *prob.data;
  return evaluate(d, prob.p, prob.eps, d.phi * coeffs, false).objective;
}

double objective_and_gradient(const LpProblem& prob, const Eigen::VectorXcd& coeffs,
                              Eigen::VectorXcd* grad_free) {
  prob.validate();
  if (prob.p < 2.0 && prob.eps <= 0.0)
    throw ConfigError("gradient needs eps > 0 when p < 2");
  const Discretization& d = *prob.data;
  const Evaluation ev = evaluate(d, prob.p, prob.eps, d.phi * coeffs, grad_free != nullptr);
  if (grad_free) {
    const Eigen::VectorXd wr = d.quad.weights.cwiseProduct(ev.rho);
    *grad_free = prob.p * (d.phi_free.adjoint() * scale_by(wr, ev.values));
  }
  return ev.objective;
}

double variational_residual_p(const LpProblem& prob, const Eigen::VectorXcd& coeffs) {
  prob.validate();
  const Discretization& d = *prob.data;
  if (d.n_free() == 0) return 0.0;
  const Evaluation ev = evaluate(d, prob.p, prob.eps, d.phi * coeffs, true);
  const Eigen::MatrixXd P2 = d.phi_free.cwiseAbs2();
  return residual_from(d, P2, ev, nullptr);
}

std::vector<Eigen::VectorXcd> make_starts(const Discretization& data, int count,
                                          std::uint64_t seed) {
  if (count < 1) throw ConfigError("need at least one start");
  std::vector<Eigen::VectorXcd> starts;
  starts.reserve(static_cast<std::size_t>(count));
  starts.push_back(data.c_particular);
  double scale = data.c_particular.norm();
  if (scale == 0.0) scale = 1.0;
  for (int s = 1; s < count; ++s) {
    RandomStream rng(seed, static_cast<std::uint64_t>(s));
    Eigen::VectorXcd y(data.n_free());
    for (Eigen::Index j = 0; j < y.size(); ++j) y[j] = scale * rng.normal_complex();
    starts.push_back(data.coefficients(y));
  }
  return starts;
}

DirectResult solve_lp_direct(const LpProblem& prob, const std::vector<Eigen::VectorXcd>& starts) {
  prob.validate();
  if (starts.empty()) throw ConfigError("direct solve: no starts given");
  if (!(prob.eps > 0.0)) throw ConfigError("direct solve needs eps > 0");
  const Discretization& d = *prob.data;

  if (d.n_free() == 0) {
    DirectResult out;
    out.coeffs = d.c_particular;
    out.certificate.objective = objective_value(prob, out.coeffs);
    out.certificate.residual = 0.0;
    out.trace.push_back({0, prob.eps, out.certificate.objective, 0.0, 0.0});
    return out;
  }

  // Free-block Gram under the base density conditions every smoothing level:
  // for p = 2 the preconditioned problem is the identity.
  const Eigen::MatrixXd P2 = d.phi_free.cwiseAbs2();
  const Eigen::VectorXd wb = d.quad.weights.cwiseProduct(d.base_density);
  const Eigen::MatrixXcd A = wb.cwiseSqrt().asDiagonal() * d.phi_free;
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(d.n_free(), d.n_free());
  G.selfadjointView<Eigen::Lower>().rankUpdate(A.adjoint());
  for (Eigen::Index j = 1; j < G.cols(); ++j)
    for (Eigen::Index i = 0; i < j; ++i) G(i, j) = std::conj(G(j, i));
  Eigen::LLT<Eigen::MatrixXcd> llt(G);
  const bool precond = llt.info() == Eigen::Success;
  const Eigen::MatrixXcd L = precond ? Eigen::MatrixXcd(llt.matrixL()) : Eigen::MatrixXcd();

  const Descent descent(prob, P2, L, precond);
  const std::vector<double> stages = smoothing_schedule(prob.eps);

  std::vector<StartOutcome> outcomes;
  outcomes.reserve(starts.size());
  for (const Eigen::VectorXcd& c0 : starts) {
    StartOutcome oc;
    Eigen::VectorXcd u = descent.pack(d.variation_part(c0));
    for (std::size_t k = 0; k < stages.size(); ++k) {
      const bool last = k + 1 == stages.size();
      descent.run_stage(stages[k], last ? kFinalTol : kStageTol, u, oc.trace);
    }
    oc.y = descent.unpack(u);
    oc.objective = oc.trace.back().objective;
    outcomes.push_back(std::move(oc));
  }

  // Best objective wins; ties go to the lexicographically smallest
  // coefficient vector so reruns pick the same representative.
  std::size_t best = 0;
  for (std::size_t i = 1; i < outcomes.size(); ++i) {
    const double gap = outcomes[i].objective - outcomes[best].objective;
    if (gap < -kTieTol * (1.0 + std::abs(outcomes[best].objective))) {
      best = i;
    } else if (std::abs(gap) <= kTieTol * (1.0 + std::abs(outcomes[best].objective)) &&
               lex_less(d.coefficients(outcomes[i].y), d.coefficients(outcomes[best].y))) {
      best = i;
    }
  }

  DirectResult out;
  out.coeffs = d.coefficients(outcomes[best].y);
  out.trace = std::move(outcomes[best].trace);
  out.certificate.objective = outcomes[best].objective;
  out.certificate.residual = variational_residual_p(prob, out.coeffs);
  double dispersion = 0.0;
  for (std::size_t i = 0; i < outcomes.size(); ++i)
    for (std::size_t j = i + 1; j < outcomes.size(); ++j)
      dispersion = std::max(
          dispersion, (d.coefficients(outcomes[i].y) - d.coefficients(outcomes[j].y)).norm());
  out.certificate.dispersion = dispersion;
  out.certificate.starts_agree = prob.p < 1.0 || dispersion <= 1e-6;
  return out;
}

UniquenessReport uniqueness_probe(const LpProblem& prob, int trials, std::uint64_t seed) {
  prob.validate();
  if (trials < 1) throw ConfigError("uniqueness probe: trials must be >= 1");
  const Discretization& d = *prob.data;
  const std::vector<Eigen::VectorXcd> starts = make_starts(d, trials, seed);

  std::vector<Eigen::VectorXcd> finals;
  std::vector<double> objectives;
  for (const Eigen::VectorXcd& s : starts) {
    try {
      DirectResult r = solve_lp_direct(prob, {s});
      finals.push_back(std::move(r.coeffs));
      objectives.push_back(r.certificate.objective);
    } catch (const ConvergenceError&) {
      // Non-converged starts carry no minimizer evidence.
    }
  }

  UniquenessReport report;
  for (std::size_t i = 0; i < finals.size(); ++i) {
    bool placed = false;
    for (UniquenessCluster& cl : report.clusters) {
      if ((finals[i] - cl.coeffs).norm() <= 1e-4) {
        ++cl.members;
        if (objectives[i] < cl.objective) {
          cl.objective = objectives[i];
          cl.coeffs = finals[i];
        }
        placed = true;
        break;
      }
    }
    if (!placed) report.clusters.push_back({finals[i], objectives[i], 1});
    for (std::size_t j = 0; j < i; ++j)
      report.dispersion = std::max(report.dispersion, (finals[i] - finals[j]).norm());
  }
  std::sort(report.clusters.begin(), report.clusters.end(),
            [](const UniquenessCluster& a, const UniquenessCluster& b) {
              return a.objective < b.objective;
            });
  return report;
}

}  // namespace minext
