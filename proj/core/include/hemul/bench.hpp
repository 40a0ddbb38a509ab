// Repeated-measurement harness for full homomorphic multiplications with a
// per-function wall-time breakdown (CRT, NTT, iNTT, iCRT, Extra).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hemul/counters.hpp"
#include "hemul/heaan.hpp"
#include "hemul/params.hpp"
#include "hemul/thread_pool.hpp"

namespace hemul {

struct BenchConfig {
  int threads = 1;
  int reps = 32;
  uint64_t seed = 1;
  int radix_log = 1;  // 1,2,4,5 -> radix 2,4,16,32
  AccumStrategy strategy;
  bool icrt_loop_reordered = true;
  bool shoup_approx = false;
  bool ntt_lazy = false;
};

struct BenchReport {
  BenchConfig config;
  int n_slots = 0;
  // mean milliseconds over reps
  double crt_ms = 0, ntt_ms = 0, intt_ms = 0, icrt_ms = 0, extra_ms = 0;
  double total_ms = 0;
  double total_stddev_ms = 0;
  double total_median_ms = 0;
  // medians per function, for direction checks robust to scheduling noise
  double crt_median_ms = 0, ntt_median_ms = 0, intt_median_ms = 0,
         icrt_median_ms = 0;
  std::vector<double> rep_total_ms;
  // FNV-1a over the result ciphertext's words: identical configurations
  // (and any kernel strategy) must produce identical ciphertexts
  uint64_t result_digest = 0;
  StageCounters counters;  // from the final repetition
};

// Keygen, encryption and table construction happen before the timed region;
// each repetition times one he_mul on the same pair of ciphertexts.
// The pool may be null (single-threaded).
BenchReport run_he_mul_bench(const Params& params, const BenchConfig& cfg,
                             ThreadPool* pool);

std::string bench_table(const BenchReport& r);
// columns: function,time_ms,speedup_vs_baseline (baseline = r itself when
// base is null, so the column reads 1.0)
std::string bench_csv(const BenchReport& r, const BenchReport* base = nullptr);
std::string bench_json(const BenchReport& r);

uint64_t ciphertext_digest(const Ciphertext& c);

}  // namespace hemul
