#include "minext/gauss.hpp"

#include <memory>

#include <gsl/gsl_integration.h>

#include "minext/errors.hpp"

namespace minext {

namespace {

struct FixedWorkspaceDeleter {
  void operator()(gsl_integration_fixed_workspace* w) const {
    gsl_integration_fixed_free(w);
  }
};

Rule1D from_workspace(const gsl_integration_fixed_type* type, int npts, double alpha,
                      double beta) {
  std::unique_ptr<gsl_integration_fixed_workspace, FixedWorkspaceDeleter> ws(
      gsl_integration_fixed_alloc(type, static_cast<std::size_t>(npts), 0.0, 1.0, alpha, beta));
  if (!ws) throw ConfigError("gauss rule allocation failed");
  Rule1D rule;
  rule.nodes = Eigen::Map<const Eigen::VectorXd>(gsl_integration_fixed_nodes(ws.get()), npts);
  rule.weights = Eigen::Map<const Eigen::VectorXd>(gsl_integration_fixed_weights(ws.get()), npts);
  return rule;
}

}  // namespace

Rule1D gauss_legendre_01(int npts) {
  if (npts < 1) throw ConfigError("gauss_legendre_01: need at least one node");
  return from_workspace(gsl_integration_fixed_legendre, npts, 0.0, 0.0);
}

Rule1D gauss_jacobi_01(int npts, double beta) {
  if (npts < 1) throw ConfigError("gauss_jacobi_01: need at least one node");
  if (beta <= -1.0) throw ConfigError("gauss_jacobi_01: beta must exceed -1");
  if (beta == 0.0) return gauss_legendre_01(npts);
  // GSL's Jacobi type integrates (b-x)^alpha (x-a)^beta; we want (1-x)^beta.
  return from_workspace(gsl_integration_fixed_jacobi, npts, beta, 0.0);
}

}  // namespace minext
