#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "frechet/curve.hpp"
#include "frechet/decider.hpp"
#include "frechet/freespace.hpp"

using namespace frechet;

namespace {

Curve random_walk(std::mt19937_64& rng, std::size_t dim, std::size_t n) {
  std::uniform_real_distribution<double> step(-1.0, 1.0);
  std::vector<double> flat(n * dim, 0.0);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t k = 0; k < dim; ++k)
      flat[i * dim + k] = flat[(i - 1) * dim + k] + step(rng);
  return Curve(dim, std::move(flat));
}

Curve jittered(std::mt19937_64& rng, const Curve& c, double radius) {
  std::uniform_real_distribution<double> off(-radius, radius);
  std::vector<double> flat = c.coords();
  for (double& x : flat) x += off(rng);
  return Curve(c.dim(), std::move(flat));
}

}  // namespace

static void BM_exact_decide(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7 + n);
  Curve P = random_walk(rng, 2, n);
  Curve Q = jittered(rng, P, 0.8);
  for (auto _ : state)
    benchmark::DoNotOptimize(exact_decide(P, Q, 1.0));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_exact_decide)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

static void BM_approx_decide_nd(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  double alpha = static_cast<double>(state.range(1));
  std::mt19937_64 rng(11 + n);
  Curve P = random_walk(rng, 2, n);
  Curve Q = jittered(rng, P, 0.8);
  std::size_t blocks = 0;
  for (auto _ : state) {
    DecisionOutcome o = approx_decide_nd(P, Q, alpha, 1.0);
    benchmark::DoNotOptimize(o.yes);
    blocks = o.blocks_visited;
  }
  state.counters["blocks"] = static_cast<double>(blocks);
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_approx_decide_nd)
    ->ArgsProduct({benchmark::CreateRange(1024, 16384, 4), {4, 16}})
    ->Complexity();

static void BM_fast_decide_1d(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(13 + n);
  Curve P = random_walk(rng, 1, n);
  Curve Q = jittered(rng, P, 0.8);
  double alpha = std::cbrt(static_cast<double>(n));
  for (auto _ : state) {
    DecisionOutcome o = fast_decide_1d(P, Q, alpha, 1.0);
    benchmark::DoNotOptimize(o.yes);
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_fast_decide_1d)->RangeMultiplier(4)->Range(1024, 65536)->Complexity();

static void BM_approx_frechet_value(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(17 + n);
  Curve P = random_walk(rng, 2, n);
  Curve Q = jittered(rng, P, 0.8);
  for (auto _ : state)
    benchmark::DoNotOptimize(approx_frechet(P, Q, 8.0, 0.5));
}
BENCHMARK(BM_approx_frechet_value)->RangeMultiplier(4)->Range(1024, 16384);

BENCHMARK_MAIN();
