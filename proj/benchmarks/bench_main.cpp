#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "fm/graph_pde.hpp"
#include "fm/jet.hpp"
#include "fm/solver.hpp"
#include "fm/translation.hpp"
#include "fm/volume.hpp"

namespace {

fm::ImmersionJet1 sample_jet() {
  return {{{1.0, 0.2}, {-0.3, 0.9}, {0.4, -0.7}}};
}

void BM_AreaIntegrandHessian(benchmark::State& state) {
  const fm::ImmersionJet1 z = sample_jet();
  for (auto _ : state) benchmark::DoNotOptimize(fm::area_integrand_hess(z, 0.3));
}
BENCHMARK(BM_AreaIntegrandHessian);

void BM_Mce0Bracket(benchmark::State& state) {
  const auto [z, j2] = fm::graph_jets(fm::GraphPoint{0.4, -0.2, 1.0, 0.3, -0.5});
  for (auto _ : state) benchmark::DoNotOptimize(fm::mce0_bracket(z, j2, 0.3));
}
BENCHMARK(BM_Mce0Bracket);

void BM_GraphResidual(benchmark::State& state) {
  const fm::GraphPoint gp{0.4, -0.2, 1.0, 0.3, -0.5};
  for (auto _ : state) benchmark::DoNotOptimize(fm::graph_residual(gp, 0.3));
}
BENCHMARK(BM_GraphResidual);

void BM_VolumeQuadrature(benchmark::State& state) {
  const fm::VolumeFactorRequest req(fm::MetricParams(0.3, fm::PhiFamily::kMatsumoto), 2);
  for (auto _ : state) benchmark::DoNotOptimize(fm::bh_factor_quadrature(req));
}
BENCHMARK(BM_VolumeQuadrature);

void BM_CompatibilityCheck(benchmark::State& state) {
  const fm::Rational b2(9, 100);
  for (auto _ : state) benchmark::DoNotOptimize(fm::compatibility_check(b2).both_vanish);
}
BENCHMARK(BM_CompatibilityCheck);

void BM_SolveScherk(benchmark::State& state) {
  const int nodes = static_cast<int>(state.range(0));
  const fm::GridProblem p({-1, 1, -1, 1}, nodes - 2, nodes - 2, 0.3,
                          [](double x, double y) { return std::log(std::cos(y) / std::cos(x)); });
  for (auto _ : state) benchmark::DoNotOptimize(fm::solve_minimal_graph(p).iterations);
}
BENCHMARK(BM_SolveScherk)->Arg(17)->Arg(33)->Arg(65)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
