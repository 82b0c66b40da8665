#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <string>

#include "minext/geometry.hpp"

namespace minext {

// One solver instance, as read from a sectioned key = value text file.
// Sections: [domain] [submanifold] [weight] [data] [solve] [tolerances].
// Complex numbers are written "re,im"; lists are whitespace-separated.
struct InstanceConfig {
  DomainSpec domain;
  SubmanifoldSpec S;
  WeightSpec weight;
  Eigen::VectorXcd f_data;

  double p = 1.0;
  int degree = 8;
  int quad_order = 12;
  double eps = 1e-8;
  std::uint64_t seed = 1;
  int starts = 4;

  // Per-check tolerance overrides, folded into the fingerprint.
  std::map<std::string, double> tolerances;
};

// Throws ConfigError with the offending line number and field.
InstanceConfig parse_config_text(const std::string& text);
InstanceConfig load_config(const std::string& path);

// Normalized round-trippable rendering: fixed key order, 17-significant-digit
// numbers. Identical configs render identically.
std::string canonical_text(const InstanceConfig& cfg);

// FNV-1a over the canonical text, as 16 hex digits. Identifies a run's inputs.
std::string config_fingerprint(const InstanceConfig& cfg);

}  // namespace minext
