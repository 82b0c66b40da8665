// Batch front-end: solve / verify / sweep over instance config files.
// Exit codes: 0 success, 1 failed verification check, 2 usage or config
// error, 3 solver failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "minext/errors.hpp"
#include "minext/report.hpp"
#include "minext/run.hpp"

namespace {

std::string default_out_dir() {
  const char* dir = std::getenv("MINEXT_OUT_DIR");
  return (dir && *dir) ? dir : ".";
}

std::string resolve_out_path(const std::string& out_flag, const std::string& stem,
                             const std::string& ext) {
  if (!out_flag.empty()) return out_flag;
  return default_out_dir() + "/" + stem + "." + ext;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw minext::ConfigError("cannot open output file: " + path);
  out << text;
  if (!out) throw minext::ConfigError("write failed: " + path);
}

void print_solver_trace(const minext::Trace& trace) {
  std::fprintf(stderr, "  %5s  %10s  %16s  %10s  %10s\n", "iter", "eps", "objective", "step",
               "residual");
  for (const minext::TraceRow& r : trace) {
    std::fprintf(stderr, "  %5d  %10.3e  %16.9e  %10.3e  %10.3e\n", r.iteration, r.eps,
                 r.objective, r.step, r.residual);
  }
}

int cmd_solve(const std::string& config_path, const std::string& method,
              const std::string& out_flag, const std::string& format) {
  const minext::InstanceConfig cfg = minext::load_config(config_path);
  minext::SolveOptions options;
  options.run_direct = method != "irls";
  options.run_irls = method != "direct";
  const minext::RunReport report = minext::run_solve(cfg, options);

  const std::string path = resolve_out_path(out_flag, "solve_" + report.fingerprint, format);
  write_file(path, format == "csv" ? minext::report_to_csv(report)
                                   : minext::report_to_json(report));

  std::printf("instance %s  (p = %g, D = %d)\n", report.fingerprint.c_str(), cfg.p, cfg.degree);
  if (report.direct) {
    std::printf("direct  m_p = %.12g  residual = %.3e  dispersion = %.3e%s\n",
                report.direct->m_p, report.direct->certificate.residual,
                report.direct->certificate.dispersion,
                report.direct->certificate.starts_agree ? "" : "  (starts disagree)");
  }
  if (report.irls) {
    std::printf("irls    m_p = %.12g  fixed-point residual = %.3e  iterations = %d%s\n",
                report.irls->m_p, report.irls->residual, report.irls->iterations,
                report.irls->pseudo_solved ? "  (pseudo-solve engaged)" : "");
  }
  if (report.certificate) {
    std::printf("cross   distance = %.3e  difference orthogonality = %.3e\n",
                report.certificate->cross_distance, report.certificate->identity_residual);
  }
  std::printf("report  %s  (%.2f s)\n", path.c_str(), report.wall_seconds);
  return 0;
}

int cmd_verify(const std::string& config_path, const std::string& out_flag,
               const std::string& format) {
  const minext::InstanceConfig cfg = minext::load_config(config_path);
  const minext::RunReport report = minext::run_verify(cfg);
  const minext::CheckLedger& ledger = *report.ledger;

  const std::string path = resolve_out_path(out_flag, "verify_" + report.fingerprint, format);
  write_file(path, format == "csv" ? minext::report_to_csv(report)
                                   : minext::report_to_json(report));

  std::printf("instance %s  (p = %g, D = %d)\n", ledger.fingerprint.c_str(), cfg.p, cfg.degree);
  int failed = 0, skipped = 0;
  for (const minext::CheckRow& row : ledger.rows) {
    std::printf("%-26s  %11.4e  <= %9.3e  %s\n", row.name.c_str(), row.residual, row.tolerance,
                to_string(row.status).c_str());
    failed += row.status == minext::CheckStatus::Fail;
    skipped += row.status == minext::CheckStatus::Skipped;
  }
  std::printf("verdict: %s  (%zu checks, %d failed, %d skipped)\n",
              ledger.all_passed() ? "pass" : "FAIL", ledger.rows.size(), failed, skipped);
  std::printf("report  %s  (%.2f s)\n", path.c_str(), report.wall_seconds);
  return ledger.all_passed() ? 0 : 1;
}

int cmd_sweep(const std::string& config_path, const std::vector<double>& p_list,
              const std::vector<int>& degree_list, const std::string& out_flag) {
  const minext::InstanceConfig cfg = minext::load_config(config_path);
  const std::vector<minext::SweepRow> rows = minext::run_sweep(cfg, p_list, degree_list);
  const std::string csv = minext::sweep_csv(rows);

  const std::string path =
      resolve_out_path(out_flag, "sweep_" + minext::config_fingerprint(cfg), "csv");
  write_file(path, csv);
  std::fputs(csv.c_str(), stdout);
  std::printf("table   %s  (%zu rows)\n", path.c_str(), rows.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimal weighted p-energy holomorphic extensions"};
  app.require_subcommand(1);

  std::string config_path, out_flag, method = "both", format = "json";
  std::vector<double> p_list;
  std::vector<int> degree_list;

  CLI::App* solve = app.add_subcommand("solve", "run the direct and IRLS solvers");
  solve->add_option("config", config_path, "instance config file")->required();
  solve->add_option("--method", method, "direct, irls, or both")
      ->check(CLI::IsMember({"direct", "irls", "both"}));
  solve->add_option("--out", out_flag, "report path (default: $MINEXT_OUT_DIR)");
  solve->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* verify = app.add_subcommand("verify", "run every shipped check");
  verify->add_option("config", config_path, "instance config file")->required();
  verify->add_option("--out", out_flag, "report path (default: $MINEXT_OUT_DIR)");
  verify->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* sweep = app.add_subcommand("sweep", "solve over a (p, D) grid, emit CSV");
  sweep->add_option("config", config_path, "base instance config file")->required();
  sweep->add_option("--p", p_list, "comma-separated p values, each in (0, 2)")
      ->required()
      ->delimiter(',');
  sweep->add_option("--D", degree_list, "comma-separated degree caps")
      ->required()
      ->delimiter(',');
  sweep->add_option("--out", out_flag, "CSV path (default: $MINEXT_OUT_DIR)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(config_path, method, out_flag, format);
    if (verify->parsed()) return cmd_verify(config_path, out_flag, format);
    return cmd_sweep(config_path, p_list, degree_list, out_flag);
  } catch (const minext::ConvergenceError& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    print_solver_trace(e.trace());
    return 3;
  } catch (const minext::SolverError& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return 3;
  } catch (const minext::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
