// Analytical operation-count model for the multiplication pipeline:
// per-function word-op counts, parameter scaling profiles, and AVX-512
// instruction estimates for emulated vs. native 64-bit arithmetic.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hemul/counters.hpp"
#include "hemul/word.hpp"

namespace hemul {

struct CostReport {
  // parameter echo
  int log_n = 0;
  int q_limbs = 0;
  int np = 0;
  int p_limbs = 0;
  int log_q = 0;
  int log_q_max = 0;
  // per-function counts (pointwise products are folded into the iCRT
  // bucket, mirroring the runtime instrumentation)
  OpCounts crt, ntt, intt, icrt;

  uint64_t total() const;
  uint64_t function_total(Stage s) const;
};

// Exact per-function formulas:
//   CRT:  mul = adc = N*qLimbs*np, modmul = N*np
//   NTT:  modmul = np*N/2*logN, addsub = np*N*logN
//   iNTT: modmul = np*(N/2*logN + N), addsub = np*N*logN
//   iCRT: mul = adc = N*np*PLimbs, modmul = 2*N*np
CostReport op_counts(int log_n, int q_limbs, int np, int p_limbs);

// Prime counts and product-limb counts per region for a working modulus of
// log_q bits under a fresh modulus of log_q_max bits.
struct RegionProfile {
  int np1 = 0, np2 = 0;
  int p_limbs1 = 0, p_limbs2 = 0;
};
RegionProfile region_np_profile(int log_q, int log_q_max, WordSize w);

// Counts for one full HE multiplication at working modulus log_q: six
// region-1 forward conversions/transforms plus one region-2 (the
// evaluation key's transforms are cached across calls and excluded), five
// inverse transforms and five inverse conversions. The ring degree follows
// the security table for log_q_max unless log_n_override is given.
struct HeMulCost {
  CostReport region1;  // aggregated over region-1 invocations
  CostReport region2;
  uint64_t total() const { return region1.total() + region2.total(); }
};
HeMulCost he_mul_cost(int log_q, int log_q_max, WordSize w,
                      int log_n_override = 0);

// One report per log_q_max in the list, each at its fresh modulus, ring
// degree from the security table.
std::vector<HeMulCost> scaling_profile(const std::vector<int>& log_q_list,
                                       WordSize w);

// Per-operation AVX-512 instruction weights. The emulated column follows
// the half-word emulation recipe (a 64-bit mul costs ~4 muls plus shifts
// and adds; ADC costs a compare and extra add; modular mul per Shoup);
// residuals are calibrated against the published per-function instruction
// totals and then frozen.
struct InstrWeights {
  double mul, adc, modmul, addsub;
};
InstrWeights emulated_weights();
InstrWeights native_weights();

// SIMD instruction estimate: weighted op count divided by the 8-lane
// vector width.
struct InstrEstimate {
  double crt, ntt, intt, icrt;
};
enum class InstrMode { emulated, native };
InstrEstimate instruction_estimate(const CostReport& counts, InstrMode mode);

// csv: function,op_kind,count rows for a report
std::string cost_csv(const CostReport& r);

}  // namespace hemul
