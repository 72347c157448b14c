#include <benchmark/benchmark.h>

#include <cmath>

#include "msgp/diagnostics.hpp"
#include "msgp/solver.hpp"

using namespace msgp;

namespace {

void BM_RegularizerValue(benchmark::State& state) {
  const auto reg = entropic(1.0);
  double x = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reg.value(x));
    x += 1e-4;
    if (x > 5.0) x = -5.0;
  }
}
BENCHMARK(BM_RegularizerValue);

void BM_FromCdfConstruction(benchmark::State& state) {
  CdfSpec spec;
  spec.cdf = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
  for (auto _ : state) benchmark::DoNotOptimize(from_cdf(spec));
}
BENCHMARK(BM_FromCdfConstruction);

void BM_SimplexProjection(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  ConvexSet set = Simplex{dim};
  RngStream rng(1, 0);
  Vec x(dim);
  for (auto& v : x) v = rng.uniform(-1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(project(set, x));
}
BENCHMARK(BM_SimplexProjection)->Arg(8)->Arg(64)->Arg(512);

void BM_SolverStep(benchmark::State& state) {
  auto prob = quadratic_1d(0.5, 1.0, -2.0, 2.0);
  SolverConfig cfg;
  cfg.p = static_cast<double>(state.range(0));
  cfg.c = 0.5;
  cfg.reg = slack_adjust(positive_part(), 0.1);
  cfg.alpha = {Subharmonic{0.9, 1.0}};
  cfg.beta = {Subharmonic{0.775, 1.0}};
  cfg.gamma = {Subharmonic{0.55, 1.0}};
  cfg.x0 = {0.5};
  cfg.y0 = 0.5;
  SolverState st(cfg.x0, cfg.y0, 1.0, 7);
  for (auto _ : state) {
    step(st, cfg, prob);
    benchmark::DoNotOptimize(st.x[0]);
  }
}
BENCHMARK(BM_SolverStep)->Arg(1)->Arg(2);

void BM_EstimateObjective(benchmark::State& state) {
  auto prob = quadratic_1d(0.5, 1.0, -2.0, 2.0);
  const auto reg = positive_part();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        estimate_objective(prob, reg, 1.0, 0.5, {0.3}, 100000, 3, 0));
}
BENCHMARK(BM_EstimateObjective);

}  // namespace

BENCHMARK_MAIN();
