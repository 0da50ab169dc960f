#include <benchmark/benchmark.h>

#include <random>

#include "bipart/congruence_lab.hpp"
#include "bipart/partitions.hpp"
#include "bipart/qseries.hpp"

using namespace bipart;

namespace {

TruncatedSeries noise(SeriesRing ring, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> val(-1000, 1000);
  std::vector<Integer> c(ring.order);
  for (auto& x : c) x = val(rng);
  return TruncatedSeries::from_integers(ring, std::move(c));
}

void BM_MulModular(benchmark::State& state) {
  const SeriesRing r = SeriesRing::modular(static_cast<std::size_t>(state.range(0)), 5);
  const auto x = noise(r, 1), y = noise(r, 2);
  for (auto _ : state) benchmark::DoNotOptimize(mul(x, y));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MulModular)->RangeMultiplier(4)->Range(256, 65536)->Complexity();

void BM_MulSchoolbook(benchmark::State& state) {
  const SeriesRing r = SeriesRing::modular(static_cast<std::size_t>(state.range(0)), 5);
  const auto x = noise(r, 1), y = noise(r, 2);
  for (auto _ : state) benchmark::DoNotOptimize(detail::mul_schoolbook(x, y));
}
BENCHMARK(BM_MulSchoolbook)->RangeMultiplier(4)->Range(256, 16384);

void BM_MulExact(benchmark::State& state) {
  const SeriesRing r = SeriesRing::exact(static_cast<std::size_t>(state.range(0)));
  const auto x = noise(r, 3), y = noise(r, 4);
  for (auto _ : state) benchmark::DoNotOptimize(mul(x, y));
}
BENCHMARK(BM_MulExact)->RangeMultiplier(4)->Range(256, 4096);

void BM_Invert(benchmark::State& state) {
  const SeriesRing r = SeriesRing::modular(static_cast<std::size_t>(state.range(0)), 1'000'003);
  const auto x = euler_product(1, 2, r);
  for (auto _ : state) benchmark::DoNotOptimize(invert(x));
}
BENCHMARK(BM_Invert)->RangeMultiplier(4)->Range(1024, 262144);

void BM_BipartitionsMod5(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(bipartition_coeffs(5, SeriesRing::modular(static_cast<std::size_t>(state.range(0)), 5)));
  }
}
BENCHMARK(BM_BipartitionsMod5)->RangeMultiplier(10)->Range(1000, 1'000'000)->Unit(benchmark::kMillisecond);

void BM_BipartitionsExact(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(bipartition_coeffs(3, SeriesRing::exact(static_cast<std::size_t>(state.range(0)))));
  }
}
BENCHMARK(BM_BipartitionsExact)->RangeMultiplier(4)->Range(256, 4096)->Unit(benchmark::kMillisecond);

void BM_EtaStream(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(eta_power_stream(6, 4, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_EtaStream)->RangeMultiplier(10)->Range(1000, 100000);

}  // namespace

BENCHMARK_MAIN();
