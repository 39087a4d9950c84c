#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "frechet/curve.hpp"
#include "frechet/signatures.hpp"
#include "frechet/smoothing.hpp"

using namespace frechet;

namespace {

Curve random_walk_1d(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> step(-1.0, 1.0);
  std::vector<double> v(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) v[i] = v[i - 1] + step(rng);
  return Curve::from_values(std::move(v));
}

}  // namespace

static void BM_death_times(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(23 + n);
  Curve c = random_walk_1d(rng, n);
  for (auto _ : state)
    benchmark::DoNotOptimize(death_times(c).times.size());
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_death_times)->RangeMultiplier(4)->Range(1024, 262144)->Complexity();

static void BM_truncated_smoothing(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(29 + n);
  Curve c = random_walk_1d(rng, n);
  for (auto _ : state)
    benchmark::DoNotOptimize(truncated_smoothing(c, 2.0).num_vertices());
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_truncated_smoothing)
    ->RangeMultiplier(4)
    ->Range(1024, 262144)
    ->Complexity();

static void BM_simplify_nd(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(31 + n);
  std::uniform_real_distribution<double> step(-1.0, 1.0);
  std::vector<double> fp(n * 3, 0.0), fq(n * 3, 0.0);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t k = 0; k < 3; ++k) {
      fp[i * 3 + k] = fp[(i - 1) * 3 + k] + step(rng);
      fq[i * 3 + k] = fq[(i - 1) * 3 + k] + step(rng);
    }
  Curve P(3, std::move(fp)), Q(3, std::move(fq));
  for (auto _ : state) {
    auto [ps, qs] = simplify_nd(P, Q, 8.0, 1.0);
    benchmark::DoNotOptimize(ps.num_vertices() + qs.num_vertices());
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_simplify_nd)->RangeMultiplier(4)->Range(1024, 65536)->Complexity();

static void BM_compute_signature(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(37 + n);
  Curve c = random_walk_1d(rng, n);
  for (auto _ : state)
    benchmark::DoNotOptimize(compute_signature(c, 2.0).values.size());
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_compute_signature)
    ->RangeMultiplier(4)
    ->Range(1024, 262144)
    ->Complexity();

BENCHMARK_MAIN();
