#include <benchmark/benchmark.h>

#include "hemul/rng.hpp"
#include "hemul/rns.hpp"

using namespace hemul;

namespace {

void bm_icrt(benchmark::State& state) {
  const int log_n = static_cast<int>(state.range(0));
  const int np = static_cast<int>(state.range(1));
  const bool reordered = state.range(2) != 0;
  const int n = 1 << log_n;
  const PrimeSet ps = generate_primes(np, log_n, WordSize::w64);
  const IcrtTables it = make_icrt_tables(ps, bigint_pow2(1200, WordSize::w64), WordSize::w64);
  Rng rng(13);
  RnsMatrix m = make_rns(np, n, Layout::prime_major);
  for (int j = 0; j < np; ++j)
    for (int i = 0; i < n; ++i) m.at(j, i) = rng.below(ps.primes[j]);
  for (auto _ : state) {
    BigPoly out = reordered ? icrt_reordered(m, ps, it)
                            : icrt_naive(m, ps, it);
    benchmark::DoNotOptimize(out.data.data());
  }
}

BENCHMARK(bm_icrt)
    ->ArgsProduct({{12, 14, 16}, {8, 42}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

}  // namespace
