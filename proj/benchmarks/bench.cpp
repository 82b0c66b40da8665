#include <benchmark/benchmark.h>

#include "minext/irls.hpp"
#include "minext/l2_solver.hpp"
#include "minext/lp_solver.hpp"
#include "minext/problem.hpp"

namespace {

using namespace minext;

std::shared_ptr<const Discretization> disc_instance(int degree, int order) {
  DomainSpec domain{DomainKind::Disc, 1, 1.0};
  SubmanifoldSpec S;
  S.kind = SubmanifoldKind::CoordinateSubspace;
  S.codim = 1;
  WeightSpec weight;
  Eigen::VectorXcd f(1);
  f << 1.0;
  return assemble_problem(domain, S, weight, f, degree, order);
}

std::shared_ptr<const Discretization> polydisc_instance(int degree, int order) {
  DomainSpec domain{DomainKind::Polydisc, 2, 1.0};
  SubmanifoldSpec S;
  S.kind = SubmanifoldKind::CoordinateSubspace;
  S.codim = 1;
  WeightSpec weight;
  Eigen::VectorXcd f(2);
  f << 1.0, 1.0;
  return assemble_problem(domain, S, weight, f, degree, order);
}

void BM_QuadratureBuild(benchmark::State& state) {
  DomainSpec domain{DomainKind::Polydisc, 2, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_domain_quadrature(domain, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_QuadratureBuild)->Arg(6)->Arg(12);

void BM_GramAssembly(benchmark::State& state) {
  const auto data = disc_instance(static_cast<int>(state.range(0)), 12);
  const WeightField density{data->base_density};
  for (auto _ : state) {
    benchmark::DoNotOptimize(gram(data->phi, density, data->quad));
  }
}
BENCHMARK(BM_GramAssembly)->Arg(8)->Arg(16);

void BM_L2Solve(benchmark::State& state) {
  const auto data = disc_instance(static_cast<int>(state.range(0)), 12);
  const L2Problem prob{data, data->base_density};
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_l2(prob));
  }
}
BENCHMARK(BM_L2Solve)->Arg(8)->Arg(16);

void BM_DirectSolve(benchmark::State& state) {
  const auto data = disc_instance(8, 12);
  const LpProblem prob{data, 1.0, 1e-8};
  const auto starts = make_starts(*data, 2, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_lp_direct(prob, starts));
  }
}
BENCHMARK(BM_DirectSolve);

void BM_DirectSolvePolydisc(benchmark::State& state) {
  const auto data = polydisc_instance(6, 6);
  const LpProblem prob{data, 1.5, 1e-8};
  const auto starts = make_starts(*data, 2, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_lp_direct(prob, starts));
  }
}
BENCHMARK(BM_DirectSolvePolydisc);

void BM_Irls(benchmark::State& state) {
  const auto data = disc_instance(8, 12);
  const LpProblem prob{data, 1.0, 1e-8};
  for (auto _ : state) {
    benchmark::DoNotOptimize(irls_solve(prob));
  }
}
BENCHMARK(BM_Irls);

}  // namespace

BENCHMARK_MAIN();
