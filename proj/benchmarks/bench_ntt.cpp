#include <benchmark/benchmark.h>

#include "hemul/ntt.hpp"
#include "hemul/rng.hpp"

using namespace hemul;

namespace {

void bm_ntt_forward(benchmark::State& state) {
  const int log_n = static_cast<int>(state.range(0));
  const int radix_log = static_cast<int>(state.range(1));
  const int np = 4;
  const PrimeSet ps = generate_primes(np, log_n, WordSize::w64);
  NttTables nt = make_ntt_tables(ps, log_n);
  const int n = 1 << log_n;
  Rng rng(3);
  RnsMatrix m = make_rns(np, n, Layout::prime_major);
  for (int j = 0; j < np; ++j)
    for (int i = 0; i < n; ++i) m.at(j, i) = rng.below(ps.primes[j]);
  NttOptions opt;
  opt.radix_log = radix_log;
  for (auto _ : state) {
    RnsMatrix copy = m;
    ntt_forward(copy, ps, nt, opt, nullptr, nullptr);
    benchmark::DoNotOptimize(copy.data.data());
  }
}

BENCHMARK(bm_ntt_forward)
    ->ArgsProduct({{12, 14, 16}, {1, 2, 4, 5}})
    ->Unit(benchmark::kMillisecond);

}  // namespace
