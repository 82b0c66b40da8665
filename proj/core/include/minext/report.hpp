#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "minext/irls.hpp"
#include "minext/lp_solver.hpp"
#include "minext/trace.hpp"
#include "minext/verifier.hpp"

namespace minext {

// %.17g: enough digits that reading the string back restores the exact double.
std::string format_g17(double x);

struct DirectReport {
  Eigen::VectorXcd coeffs;
  MinimizerCertificate certificate;
  double m_p = 0.0;  // raw p-energy of the iterate, no smoothing term
  Trace trace;
};

struct IrlsReport {
  Eigen::VectorXcd coeffs;
  double objective = 0.0;  // smoothed objective at the fixed point
  double m_p = 0.0;
  double residual = 0.0;  // fixed-point residual of the returned iterate
  int iterations = 0;
  bool pseudo_solved = false;
  Trace trace;
};

// Everything one invocation produced. The embedded config is the canonical
// text, so the report alone reproduces the run.
struct RunReport {
  std::string fingerprint;
  std::string config;
  std::uint64_t seed = 0;
  std::optional<DirectReport> direct;
  std::optional<IrlsReport> irls;
  std::optional<FixedPointCertificate> certificate;  // set when both solvers ran
  std::optional<CheckLedger> ledger;
  double wall_seconds = 0.0;
};

bool operator==(const DirectReport& a, const DirectReport& b);
bool operator==(const IrlsReport& a, const IrlsReport& b);
bool operator==(const RunReport& a, const RunReport& b);

// JSON round-trips exactly: report_from_json(report_to_json(r)) == r.
std::string report_to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);

// Flat form: one table of trace rows (solver,row,iteration,eps,objective,
// step,residual), a blank line, then a key,value table of the summary
// quantities. Doubles carry 17 significant digits.
std::string report_to_csv(const RunReport& report);

// One sweep cell. Residual and dispersion come from the direct minimizer,
// iteration count from IRLS.
struct SweepRow {
  double p = 0.0;
  int degree = 0;
  double m_p_direct = 0.0;
  double m_p_irls = 0.0;
  double fixed_point_residual = 0.0;
  int iterations = 0;
  double dispersion = 0.0;
};

// Fixed column set; a golden-file test guards the exact bytes of the header.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace minext
