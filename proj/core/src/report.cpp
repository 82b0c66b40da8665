#include "minext/report.hpp"

#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>

#include "minext/errors.hpp"

namespace minext {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json complex_vector_to_json(const Eigen::VectorXcd& v) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back({v[i].real(), v[i].imag()});
  return arr;
}

Eigen::VectorXcd complex_vector_from_json(const ordered_json& arr) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(arr.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const auto& pair = arr.at(static_cast<std::size_t>(i));
    v[i] = std::complex<double>(pair.at(0).get<double>(), pair.at(1).get<double>());
  }
  return v;
}

ordered_json trace_to_json(const Trace& trace) {
  ordered_json arr = ordered_json::array();
  for (const TraceRow& r : trace)
    arr.push_back({r.iteration, r.eps, r.objective, r.step, r.residual});
  return arr;
}

Trace trace_from_json(const ordered_json& arr) {
  Trace trace;
  trace.reserve(arr.size());
  for (const auto& row : arr) {
    trace.push_back({row.at(0).get<int>(), row.at(1).get<double>(), row.at(2).get<double>(),
                     row.at(3).get<double>(), row.at(4).get<double>()});
  }
  return trace;
}

CheckStatus status_from_string(const std::string& s) {
  if (s == "pass") return CheckStatus::Pass;
  if (s == "fail") return CheckStatus::Fail;
  if (s == "skipped") return CheckStatus::Skipped;
  throw ConfigError("report: unknown check status '" + s + "'");
}

bool vectors_equal(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

}  // namespace

std::string format_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

bool operator==(const DirectReport& a, const DirectReport& b) {
  return vectors_equal(a.coeffs, b.coeffs) && a.certificate == b.certificate &&
         a.m_p == b.m_p && a.trace == b.trace;
}

bool operator==(const IrlsReport& a, const IrlsReport& b) {
  return vectors_equal(a.coeffs, b.coeffs) && a.objective == b.objective && a.m_p == b.m_p &&
         a.residual == b.residual && a.iterations == b.iterations &&
         a.pseudo_solved == b.pseudo_solved && a.trace == b.trace;
}

bool operator==(const RunReport& a, const RunReport& b) {
  return a.fingerprint == b.fingerprint && a.config == b.config && a.seed == b.seed &&
         a.direct == b.direct && a.irls == b.irls && a.certificate == b.certificate &&
         a.ledger == b.ledger && a.wall_seconds == b.wall_seconds;
}

std::string report_to_json(const RunReport& report) {
  ordered_json j;
  j["fingerprint"] = report.fingerprint;
  j["config"] = report.config;
  j["seed"] = report.seed;
  j["wall_seconds"] = report.wall_seconds;
  if (report.direct) {
    const DirectReport& d = *report.direct;
    ordered_json jd;
    jd["coeffs"] = complex_vector_to_json(d.coeffs);
    jd["objective"] = d.certificate.objective;
    jd["residual"] = d.certificate.residual;
    jd["dispersion"] = d.certificate.dispersion;
    jd["starts_agree"] = d.certificate.starts_agree;
    jd["m_p"] = d.m_p;
    jd["trace"] = trace_to_json(d.trace);
    j["direct"] = std::move(jd);
  }
  if (report.irls) {
    const IrlsReport& r = *report.irls;
    ordered_json jr;
    jr["coeffs"] = complex_vector_to_json(r.coeffs);
    jr["objective"] = r.objective;
    jr["m_p"] = r.m_p;
    jr["residual"] = r.residual;
    jr["iterations"] = r.iterations;
    jr["pseudo_solved"] = r.pseudo_solved;
    jr["trace"] = trace_to_json(r.trace);
    j["irls"] = std::move(jr);
  }
  if (report.certificate) {
    j["certificate"] = {{"iterate_difference", report.certificate->iterate_difference},
                        {"cross_distance", report.certificate->cross_distance},
                        {"identity_residual", report.certificate->identity_residual}};
  }
  if (report.ledger) {
    ordered_json checks = ordered_json::array();
    for (const CheckRow& row : report.ledger->rows) {
      checks.push_back({{"name", row.name},
                        {"residual", row.residual},
                        {"tolerance", row.tolerance},
                        {"status", to_string(row.status)}});
    }
    j["ledger"] = {{"fingerprint", report.ledger->fingerprint}, {"checks", std::move(checks)}};
  }
  return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    throw ConfigError(std::string("report: ") + e.what());
  }
  try {
    RunReport report;
    report.fingerprint = j.at("fingerprint").get<std::string>();
    report.config = j.at("config").get<std::string>();
    report.seed = j.at("seed").get<std::uint64_t>();
    report.wall_seconds = j.at("wall_seconds").get<double>();
    if (j.contains("direct")) {
      const auto& jd = j.at("direct");
      DirectReport d;
      d.coeffs = complex_vector_from_json(jd.at("coeffs"));
      d.certificate.objective = jd.at("objective").get<double>();
      d.certificate.residual = jd.at("residual").get<double>();
      d.certificate.dispersion = jd.at("dispersion").get<double>();
      d.certificate.starts_agree = jd.at("starts_agree").get<bool>();
      d.m_p = jd.at("m_p").get<double>();
      d.trace = trace_from_json(jd.at("trace"));
      report.direct = std::move(d);
    }
    if (j.contains("irls")) {
      const auto& jr = j.at("irls");
      IrlsReport r;
      r.coeffs = complex_vector_from_json(jr.at("coeffs"));
      r.objective = jr.at("objective").get<double>();
      r.m_p = jr.at("m_p").get<double>();
      r.residual = jr.at("residual").get<double>();
      r.iterations = jr.at("iterations").get<int>();
      r.pseudo_solved = jr.at("pseudo_solved").get<bool>();
      r.trace = trace_from_json(jr.at("trace"));
      report.irls = std::move(r);
    }
    if (j.contains("certificate")) {
      const auto& jc = j.at("certificate");
      FixedPointCertificate c;
      c.iterate_difference = jc.at("iterate_difference").get<double>();
      c.cross_distance = jc.at("cross_distance").get<double>();
      c.identity_residual = jc.at("identity_residual").get<double>();
      report.certificate = c;
    }
    if (j.contains("ledger")) {
      const auto& jl = j.at("ledger");
      CheckLedger ledger;
      ledger.fingerprint = jl.at("fingerprint").get<std::string>();
      for (const auto& row : jl.at("checks")) {
        ledger.rows.push_back({row.at("name").get<std::string>(),
                               row.at("residual").get<double>(),
                               row.at("tolerance").get<double>(),
                               status_from_string(row.at("status").get<std::string>())});
      }
      report.ledger = std::move(ledger);
    }
    return report;
  } catch (const ordered_json::exception& e) {
    throw ConfigError(std::string("report: ") + e.what());
  }
}

namespace {

void append_trace_rows(std::ostringstream& out, const char* solver, const Trace& trace) {
  int row = 0;
  for (const TraceRow& r : trace) {
    out << solver << ',' << row++ << ',' << r.iteration << ',' << format_g17(r.eps) << ','
        << format_g17(r.objective) << ',' << format_g17(r.step) << ','
        << format_g17(r.residual) << '\n';
  }
}

}  // namespace

std::string report_to_csv(const RunReport& report) {
  std::ostringstream out;
  out << "solver,row,iteration,eps,objective,step,residual\n";
  if (report.direct) append_trace_rows(out, "direct", report.direct->trace);
  if (report.irls) append_trace_rows(out, "irls", report.irls->trace);

  out << "\nkey,value\n";
  out << "fingerprint," << report.fingerprint << '\n';
  out << "seed," << report.seed << '\n';
  if (report.direct) {
    const DirectReport& d = *report.direct;
    out << "m_p_direct," << format_g17(d.m_p) << '\n';
    out << "objective_direct," << format_g17(d.certificate.objective) << '\n';
    out << "residual_direct," << format_g17(d.certificate.residual) << '\n';
    out << "dispersion," << format_g17(d.certificate.dispersion) << '\n';
    out << "starts_agree," << (d.certificate.starts_agree ? 1 : 0) << '\n';
  }
  if (report.irls) {
    const IrlsReport& r = *report.irls;
    out << "m_p_irls," << format_g17(r.m_p) << '\n';
    out << "objective_irls," << format_g17(r.objective) << '\n';
    out << "residual_irls," << format_g17(r.residual) << '\n';
    out << "iterations_irls," << r.iterations << '\n';
    out << "pseudo_solved," << (r.pseudo_solved ? 1 : 0) << '\n';
  }
  if (report.certificate) {
    out << "iterate_difference," << format_g17(report.certificate->iterate_difference) << '\n';
    out << "cross_distance," << format_g17(report.certificate->cross_distance) << '\n';
    out << "identity_residual," << format_g17(report.certificate->identity_residual) << '\n';
  }
  out << "wall_seconds," << format_g17(report.wall_seconds) << '\n';

  if (report.ledger) {
    out << "\ncheck,residual,tolerance,status\n";
    for (const CheckRow& row : report.ledger->rows) {
      out << row.name << ',' << format_g17(row.residual) << ',' << format_g17(row.tolerance)
          << ',' << to_string(row.status) << '\n';
    }
  }
  return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "p,D,m_p_direct,m_p_irls,fixed_point_residual,iterations,dispersion\n";
  for (const SweepRow& r : rows) {
    out << format_g17(r.p) << ',' << r.degree << ',' << format_g17(r.m_p_direct) << ','
        << format_g17(r.m_p_irls) << ',' << format_g17(r.fixed_point_residual) << ','
        << r.iterations << ',' << format_g17(r.dispersion) << '\n';
  }
  return out.str();
}

}  // namespace minext
