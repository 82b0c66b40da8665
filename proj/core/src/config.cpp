#include "minext/config.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "minext/errors.hpp"

namespace minext {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& tok, int line) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size() || tok.empty()) fail(line, "bad number '" + tok + "'");
  return v;
}

long long to_int(const std::string& tok, int line) {
  char* end = nullptr;
  const long long v = std::strtoll(tok.c_str(), &end, 10);
  if (end != tok.c_str() + tok.size() || tok.empty()) fail(line, "bad integer '" + tok + "'");
  return v;
}

std::uint64_t to_uint(const std::string& tok, int line) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
  if (end != tok.c_str() + tok.size() || tok.empty()) fail(line, "bad integer '" + tok + "'");
  return v;
}

std::complex<double> to_complex(const std::string& tok, int line) {
  const auto comma = tok.find(',');
  if (comma == std::string::npos) fail(line, "complex values are written re,im; got '" + tok + "'");
  return {to_double(tok.substr(0, comma), line), to_double(tok.substr(comma + 1), line)};
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string g17c(std::complex<double> v) { return g17(v.real()) + "," + g17(v.imag()); }

}  // namespace

InstanceConfig parse_config_text(const std::string& text) {
  InstanceConfig cfg;
  std::vector<std::vector<std::complex<double>>> point_rows;
  std::vector<int> point_lines;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find_first_of("#;");
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section != "domain" && section != "submanifold" && section != "weight" &&
          section != "data" && section != "solve" && section != "tolerances")
        fail(line, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) fail(line, "empty key");
    if (section.empty()) fail(line, "key '" + key + "' outside any section");

    if (section == "domain") {
      if (key == "kind") {
        if (value == "disc")
          cfg.domain.kind = DomainKind::Disc;
        else if (value == "polydisc")
          cfg.domain.kind = DomainKind::Polydisc;
        else if (value == "ball")
          cfg.domain.kind = DomainKind::Ball;
        else
          fail(line, "domain kind must be disc, polydisc or ball");
      } else if (key == "n") {
        cfg.domain.n = static_cast<int>(to_int(value, line));
      } else if (key == "radius") {
        cfg.domain.radius = to_double(value, line);
      } else {
        fail(line, "unknown key '" + key + "' in [domain]");
      }
    } else if (section == "submanifold") {
      if (key == "kind") {
        if (value == "coordinate")
          cfg.S.kind = SubmanifoldKind::CoordinateSubspace;
        else if (value == "points")
          cfg.S.kind = SubmanifoldKind::PointSet;
        else
          fail(line, "submanifold kind must be coordinate or points");
      } else if (key == "codim") {
        cfg.S.codim = static_cast<int>(to_int(value, line));
      } else if (key == "point") {
        std::vector<std::complex<double>> row;
        for (const std::string& tok : split_ws(value)) row.push_back(to_complex(tok, line));
        if (row.empty()) fail(line, "empty point");
        point_rows.push_back(std::move(row));
        point_lines.push_back(line);
      } else {
        fail(line, "unknown key '" + key + "' in [submanifold]");
      }
    } else if (section == "weight") {
      if (key == "alpha") {
        cfg.weight.alpha = to_double(value, line);
      } else if (key == "beta") {
        const auto toks = split_ws(value);
        cfg.weight.beta.resize(static_cast<Eigen::Index>(toks.size()));
        for (std::size_t i = 0; i < toks.size(); ++i)
          cfg.weight.beta[static_cast<Eigen::Index>(i)] = to_double(toks[i], line);
      } else if (key == "c") {
        cfg.weight.c = to_double(value, line);
      } else {
        fail(line, "unknown key '" + key + "' in [weight]");
      }
    } else if (section == "data") {
      if (key == "f") {
        const auto toks = split_ws(value);
        cfg.f_data.resize(static_cast<Eigen::Index>(toks.size()));
        for (std::size_t i = 0; i < toks.size(); ++i)
          cfg.f_data[static_cast<Eigen::Index>(i)] = to_complex(toks[i], line);
      } else {
        fail(line, "unknown key '" + key + "' in [data]");
      }
    } else if (section == "solve") {
      if (key == "p")
        cfg.p = to_double(value, line);
      else if (key == "degree")
        cfg.degree = static_cast<int>(to_int(value, line));
      else if (key == "quad_order")
        cfg.quad_order = static_cast<int>(to_int(value, line));
      else if (key == "eps")
        cfg.eps = to_double(value, line);
      else if (key == "seed")
        cfg.seed = to_uint(value, line);
      else if (key == "starts")
        cfg.starts = static_cast<int>(to_int(value, line));
      else
        fail(line, "unknown key '" + key + "' in [solve]");
    } else {  // tolerances
      cfg.tolerances[key] = to_double(value, line);
    }
  }

  if (!point_rows.empty()) {
    cfg.S.points.resize(static_cast<Eigen::Index>(point_rows.size()),
                        static_cast<Eigen::Index>(point_rows.front().size()));
    for (std::size_t i = 0; i < point_rows.size(); ++i) {
      if (point_rows[i].size() != point_rows.front().size())
        fail(point_lines[i], "points must all have the same number of coordinates");
      for (std::size_t j = 0; j < point_rows[i].size(); ++j)
        cfg.S.points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            point_rows[i][j];
    }
  }
  if (cfg.S.kind == SubmanifoldKind::PointSet) cfg.S.codim = cfg.domain.n;

  cfg.domain.validate();
  cfg.S.validate(cfg.domain);
  cfg.weight.validate(cfg.domain);
  if (!(cfg.p > 0.0) || cfg.p > 2.0) throw ConfigError("solve: p must lie in (0, 2]");
  if (cfg.degree < 0) throw ConfigError("solve: degree must be >= 0");
  if (cfg.quad_order < 1) throw ConfigError("solve: quad_order must be >= 1");
  if (!(cfg.eps > 0.0)) throw ConfigError("solve: eps must be > 0");
  if (cfg.starts < 1) throw ConfigError("solve: starts must be >= 1");
  return cfg;
}

InstanceConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string canonical_text(const InstanceConfig& cfg) {
  std::ostringstream out;
  out << "[domain]\n";
  out << "kind = " << to_string(cfg.domain.kind) << "\n";
  out << "n = " << cfg.domain.n << "\n";
  out << "radius = " << g17(cfg.domain.radius) << "\n";
  out << "[submanifold]\n";
  out << "kind = "
      << (cfg.S.kind == SubmanifoldKind::CoordinateSubspace ? "coordinate" : "points") << "\n";
  out << "codim = " << cfg.S.codim << "\n";
  for (Eigen::Index i = 0; i < cfg.S.points.rows(); ++i) {
    out << "point =";
    for (Eigen::Index j = 0; j < cfg.S.points.cols(); ++j) out << " " << g17c(cfg.S.points(i, j));
    out << "\n";
  }
  out << "[weight]\n";
  out << "alpha = " << g17(cfg.weight.alpha) << "\n";
  if (cfg.weight.beta.size() > 0) {
    out << "beta =";
    for (Eigen::Index j = 0; j < cfg.weight.beta.size(); ++j)
      out << " " << g17(cfg.weight.beta[j]);
    out << "\n";
  }
  out << "c = " << g17(cfg.weight.c) << "\n";
  out << "[data]\n";
  if (cfg.f_data.size() > 0) {
    out << "f =";
    for (Eigen::Index j = 0; j < cfg.f_data.size(); ++j) out << " " << g17c(cfg.f_data[j]);
    out << "\n";
  }
  out << "[solve]\n";
  out << "p = " << g17(cfg.p) << "\n";
  out << "degree = " << cfg.degree << "\n";
  out << "quad_order = " << cfg.quad_order << "\n";
  out << "eps = " << g17(cfg.eps) << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "starts = " << cfg.starts << "\n";
  if (!cfg.tolerances.empty()) {
    out << "[tolerances]\n";
    for (const auto& [name, value] : cfg.tolerances) out << name << " = " << g17(value) << "\n";
  }
  return out.str();
}

std::string config_fingerprint(const InstanceConfig& cfg) {
  const std::string text = canonical_text(cfg);
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

}  // namespace minext
