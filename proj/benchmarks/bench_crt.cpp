#include <benchmark/benchmark.h>

#include "hemul/rng.hpp"
#include "hemul/rns.hpp"

using namespace hemul;

namespace {

BigPoly random_poly(int log_n, int log_q, Rng& rng) {
  BigPoly a = make_poly(1 << log_n, log_q, WordSize::w64);
  for (size_t i = 0; i < a.data.size(); ++i) a.data[i] = rng.next();
  for (int i = 0; i < a.n; ++i) poly_set(a, i, poly_get(a, i));  // mask tops
  return a;
}

void bm_crt_forward(benchmark::State& state) {
  const int log_n = static_cast<int>(state.range(0));
  const int np = static_cast<int>(state.range(1));
  const bool periodic = state.range(2) != 0;
  const int log_q = 1200;
  const PrimeSet ps = generate_primes(np, log_n, WordSize::w64);
  const CrtTables ct = make_crt_tables(ps, log_q);
  Rng rng(11);
  const BigPoly a = random_poly(log_n, log_q, rng);
  AccumStrategy strat;
  if (periodic) {
    strat.kind = AccumKind::periodic_mod;
    strat.period = max_valid_period(ps);
  }
  for (auto _ : state) {
    RnsMatrix m = crt_forward(a, ps, ct, strat, Layout::prime_major);
    benchmark::DoNotOptimize(m.data.data());
  }
}

BENCHMARK(bm_crt_forward)
    ->ArgsProduct({{12, 14, 16}, {8, 42}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

}  // namespace
