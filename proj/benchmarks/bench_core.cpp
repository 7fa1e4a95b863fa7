#include <benchmark/benchmark.h>

#include <random>

#include "shtuka/graded_rees.hpp"
#include "shtuka/shtuka_moduli.hpp"
#include "shtuka/witt.hpp"
#include "shtuka/witt_display.hpp"
#include "shtuka/zip.hpp"

using namespace shtuka;

static void BM_WittMul(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const auto F = FpAlgebra::field_of_order(9);
  std::mt19937_64 rng(1);
  std::vector<Elem> a(N), b(N);
  for (auto& x : a) x = static_cast<Elem>(rng() % 9);
  for (auto& x : b) x = static_cast<Elem>(rng() % 9);
  const WittVec x(F, a), y(F, b);
  witt_laws(3, N);
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_WittMul)->DenseRange(2, 5);

static void BM_GroupCount(benchmark::State& state) {
  const GroupParams P(CoeffField::make(2), TypeVector({1, 1, 0}), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dg_count(P, kDefaultStateBudget));
}
BENCHMARK(BM_GroupCount)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_Classify(benchmark::State& state) {
  const GroupParams P(CoeffField::make(2), TypeVector({1, 0}), 3);
  ClassifyOptions o;
  o.strategy = static_cast<Strategy>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(shtuka_classify(P, o).class_count());
  state.SetLabel(to_string(o.strategy));
}
BENCHMARK(BM_Classify)
    ->Arg(static_cast<int>(Strategy::Bfs))
    ->Arg(static_cast<int>(Strategy::Lift))
    ->Unit(benchmark::kMillisecond);

static void BM_ZipClassify(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(zip_classify(CoeffField::make(2), 3, 1).classes.size());
}
BENCHMARK(BM_ZipClassify)->Unit(benchmark::kMillisecond);

static void BM_DisplayClassify(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(display_classify(2, 2, 1, N).classes.size());
}
BENCHMARK(BM_DisplayClassify)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_HeckeType(benchmark::State& state) {
  const auto h = static_cast<std::size_t>(state.range(0));
  const ChainRing A = ChainRing::power_series(FpAlgebra::prime_field(2), 16);
  std::mt19937_64 rng(2);
  HeckePair p{RMatrix(A, h, h), 2};
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j)
      for (auto& c : p.phi0.at(i, j)) c = static_cast<Elem>(rng() % 2);
  for (std::size_t i = 0; i < h; ++i) p.phi0.at(i, i)[0] = 1;
  for (auto _ : state) benchmark::DoNotOptimize(hecke_type(p));
}
BENCHMARK(BM_HeckeType)->DenseRange(2, 6, 2);

BENCHMARK_MAIN();
