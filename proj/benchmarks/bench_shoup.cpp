#include <benchmark/benchmark.h>

#include <vector>

#include "hemul/params.hpp"
#include "hemul/rng.hpp"
#include "hemul/word.hpp"

using namespace hemul;

namespace {

void bm_shoup_exact(benchmark::State& state) {
  const PrimeSet ps = generate_primes(1, 16, WordSize::w64);
  const uint64_t p = ps.primes[0];
  Rng rng(7);
  std::vector<uint64_t> xs(4096);
  for (auto& x : xs) x = rng.below(p);
  const auto pair = shoup_precompute_t<64>(ps.roots[0], p);
  for (auto _ : state) {
    uint64_t acc = 0;
    for (uint64_t x : xs)
      acc ^= shoup_modmul_t<64>(x, pair, p);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(xs.size()));
}

void bm_shoup_approx(benchmark::State& state) {
  const PrimeSet ps = generate_primes(1, 16, WordSize::w64);
  const uint64_t p = ps.primes[0];
  Rng rng(7);
  std::vector<uint64_t> xs(4096);
  for (auto& x : xs) x = rng.below(p);
  const auto pair = shoup_precompute_t<64>(ps.roots[0], p);
  for (auto _ : state) {
    uint64_t acc = 0;
    for (uint64_t x : xs)
      acc ^= shoup_modmul_approx_t<64>(x, pair, p);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(xs.size()));
}

BENCHMARK(bm_shoup_exact);
BENCHMARK(bm_shoup_approx);

}  // namespace
