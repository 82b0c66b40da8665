#pragma once

#include <vector>

#include "minext/config.hpp"
#include "minext/report.hpp"
#include "minext/verifier.hpp"

namespace minext {

struct SolveOptions {
  bool run_direct = true;
  bool run_irls = true;
};

// Assembles the instance and runs the requested solvers. The cross-solver
// certificate is filled only when both ran. Solver failures propagate.
RunReport run_solve(const InstanceConfig& cfg, const SolveOptions& options = {});

// Full check ledger for the instance, wrapped in a report.
RunReport run_verify(const InstanceConfig& cfg, const LedgerOptions& options = {});

// One cell per (p, D) pair, rows sorted by (p, D). Every p must lie strictly
// inside (0, 2); both lists must be nonempty. Deterministic under the config
// seed: cells run sequentially and independently.
std::vector<SweepRow> run_sweep(const InstanceConfig& base, std::vector<double> p_list,
                                std::vector<int> degree_list);

}  // namespace minext
