#pragma once

namespace minext {

// Compensated accumulator. Node sums run over 1e4..1e5 terms; plain summation
// roundoff there (~N*eps*|terms|) is larger than several of the shipped
// tolerances, compensated summation keeps it at ~eps*|sum| and makes the
// reductions order-deterministic by construction.
struct KahanAccumulator {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }

  double value() const { return sum; }
};

}  // namespace minext
