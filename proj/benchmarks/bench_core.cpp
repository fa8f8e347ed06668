#include <benchmark/benchmark.h>

#include <random>

#include "fonctex/fincat.hpp"
#include "fonctex/hochschild.hpp"
#include "fonctex/linalg.hpp"
#include "fonctex/ring.hpp"

using namespace fonctex;

namespace {

FMat random_matrix(size_t n, FMat::Layout layout, uint64_t seed) {
  std::mt19937_64 rng(seed);
  FMat m(2, n, n, layout);
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c) m.set(r, c, static_cast<uint32_t>(rng() & 1));
  return m;
}

void BM_RrefPacked(benchmark::State& state) {
  const FMat m = random_matrix(static_cast<size_t>(state.range(0)), FMat::Layout::Packed, 1);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_RrefPacked)->Arg(128)->Arg(512)->Arg(1024);

void BM_RrefBytes(benchmark::State& state) {
  const FMat m = random_matrix(static_cast<size_t>(state.range(0)), FMat::Layout::Bytes, 1);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_RrefBytes)->Arg(128)->Arg(512)->Arg(1024);

// Streaming inserts into a reduced basis, as the homology routines do column by column.
void BM_EchelonStreaming(benchmark::State& state) {
  const size_t n = static_cast<size_t>(state.range(0));
  const FMat m = random_matrix(n, FMat::Layout::Packed, 2);
  for (auto _ : state) {
    EchelonBasis e(2, n);
    for (size_t r = 0; r < n; ++r) e.insert(m.row(r));
    benchmark::DoNotOptimize(e.dim());
  }
}
BENCHMARK(BM_EchelonStreaming)->Arg(128)->Arg(512)->Arg(1024);

void BM_HHMonoidM2(benchmark::State& state) {
  const FinCat c = monoid_category(FinRing(2), 2);
  const Bimodule v = monoid_bimodule(dual_tensor_bifunctor(c, 2), 0);
  const size_t i_max = static_cast<size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hh_monoid(v, i_max).dims);
}
BENCHMARK(BM_HHMonoidM2)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_HHCategoryM2(benchmark::State& state) {
  const FinCat c = monoid_category(FinRing(2), 2);
  const BiFunRep b = dual_tensor_bifunctor(c, 2);
  const size_t i_max = static_cast<size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hh(b, i_max).dims);
}
BENCHMARK(BM_HHCategoryM2)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
