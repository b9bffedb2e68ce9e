// Serial reference assembly against the OpenMP kernels.
#include <random>

#include <benchmark/benchmark.h>

#include "simplexflow/kernels.hpp"
#include "simplexflow/potential.hpp"

using namespace simplexflow;

namespace {

Configuration random_config(std::size_t n, std::size_t d) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(n * d);
  for (auto& x : v) x = g(rng);
  return Configuration(n, d, std::move(v));
}

ModelParams params_for(std::size_t order, Mode mode) {
  ModelParams p;
  p.order = order;
  p.mode = mode;
  return p;
}

void BM_ReferenceFull(benchmark::State& state) {
  const auto x = random_config(state.range(0), 3);
  const auto p = params_for(state.range(1), Mode::full);
  for (auto _ : state) benchmark::DoNotOptimize(reference::rhs_full(x, p));
}

void BM_KernelFull(benchmark::State& state) {
  const auto x = random_config(state.range(0), 3);
  const auto p = params_for(state.range(1), Mode::full);
  for (auto _ : state) benchmark::DoNotOptimize(rhs_full(x, p));
}

void BM_ReferenceReduced(benchmark::State& state) {
  const auto x = random_config(state.range(0), 3);
  const auto p = params_for(state.range(1), Mode::reduced);
  std::vector<IndexTuple> b{IndexTuple(state.range(1))};
  for (std::size_t k = 0; k < b[0].size(); ++k) b[0][k] = k;
  const auto set = SimplexSet::base_point_set(b, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::rhs_reduced(x, set, p));
}

void BM_KernelReduced(benchmark::State& state) {
  const auto x = random_config(state.range(0), 3);
  const auto p = params_for(state.range(1), Mode::reduced);
  std::vector<IndexTuple> b{IndexTuple(state.range(1))};
  for (std::size_t k = 0; k < b[0].size(); ++k) b[0][k] = k;
  const auto set = SimplexSet::base_point_set(b, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rhs_reduced(x, set, p));
}

void full_args(benchmark::internal::Benchmark* b) {
  for (long n : {20, 40}) b->Args({n, 2});
  b->Args({20, 3});
  b->Args({40, 3});
}

void reduced_args(benchmark::internal::Benchmark* b) {
  for (long n : {40, 400}) {
    b->Args({n, 2});
    b->Args({n, 3});
  }
}

}  // namespace

BENCHMARK(BM_ReferenceFull)->Apply(full_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelFull)->Apply(full_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReferenceReduced)->Apply(reduced_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_KernelReduced)->Apply(reduced_args)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
