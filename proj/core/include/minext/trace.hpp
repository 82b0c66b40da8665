#pragma once

#include <vector>

namespace minext {

// One row of a solver iteration trace.
struct TraceRow {
  int iteration = 0;
  double eps = 0.0;
  double objective = 0.0;
  double step = 0.0;      // accepted step size (direct) / iterate difference (IRLS)
  double residual = 0.0;  // normalized first-order residual

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

using Trace = std::vector<TraceRow>;

}  // namespace minext
