#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "minext/config.hpp"
#include "minext/lp_solver.hpp"

namespace minext {

enum class CheckStatus { Pass, Fail, Skipped };

std::string to_string(CheckStatus s);

struct CheckRow {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::Skipped;

  friend bool operator==(const CheckRow&, const CheckRow&) = default;
};

// One verification run: every shipped check exactly once, in a fixed order,
// against a single instance. Skipped rows mark checks whose inputs never
// materialized (an upstream solver failed); they are not passes.
struct CheckLedger {
  std::vector<CheckRow> rows;
  std::string fingerprint;  // config_fingerprint of the instance

  bool all_passed() const;  // no row failed

  friend bool operator==(const CheckLedger&, const CheckLedger&) = default;
};

// The fixed list of shipped checks, in execution order.
const std::vector<std::string>& shipped_check_names();

// Every mixed moment the rule claims to integrate exactly, against its closed
// form. Returns the worst relative error over the claimed degree range.
double check_quadrature_exactness(const Discretization& data);

// Pointwise quadratic majorant of |F + t h|^p around F at every node for
// random triples (F, h, t). Returns the worst violation beyond roundoff.
double check_quadratic_majorization(const Discretization& data, double p, std::uint64_t seed);

// (1 + x)^a <= 1 + a x for a in (0,1), x >= -1, on a dense grid. Returns the
// worst violation; depends on nothing but the floating-point model.
double check_bernoulli_grid();

// Interpolation-type inequality between the p-energy of g, its norm under the
// reweighted density around the minimizer, and the minimizer's p-energy.
// Returns the normalized positive part of (left side - right side); the
// discrete sums satisfy the inequality exactly, so anything visibly positive
// is an implementation fault. Kernel uses max(|F|^2, eps) so the chain stays
// an exact instance of the two-exponent product inequality.
double check_holder(const LpProblem& prob, const Eigen::VectorXcd& minimizer,
                    const Eigen::VectorXcd& g);

// Equality case g = minimizer: returns |left - right| / right.
double check_holder_equality(const LpProblem& prob, const Eigen::VectorXcd& minimizer);

// On the submanifold the reweighted 2-energy of the data equals its p-energy
// (the integrands agree pointwise where F = f). Returns the relative gap,
// computed on the S-side quadrature rule.
double check_restriction_identity(const LpProblem& prob, const Eigen::VectorXcd& coeffs,
                                  int s_quad_order);

// Max deviation of the restriction of F from the data f: coefficientwise for
// a coordinate subspace, valuewise for a point set.
double check_feasibility(const Discretization& data, const Eigen::VectorXcd& coeffs);

// Test-only knobs: fault injection for the detector tests.
struct LedgerOptions {
  bool corrupt_direct = false;  // perturb the direct minimizer before checking
};

// Runs every shipped check against the instance. Solver errors downgrade the
// dependent rows to Skipped and the solver's own row to Fail; nothing passes
// by omission. Tolerance overrides in cfg.tolerances must name shipped checks.
CheckLedger run_ledger(const InstanceConfig& cfg, const LedgerOptions& options = {});

}  // namespace minext
