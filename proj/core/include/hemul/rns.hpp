// Residue number system conversions: the forward limb-weighted CRT map from
// base-beta coefficients to word-sized prime residues, and the inverse map
// back to a big-integer polynomial via hat-P reconstruction.

#pragma once

#include <cstdint>
#include <vector>

#include "hemul/counters.hpp"
#include "hemul/params.hpp"
#include "hemul/poly.hpp"
#include "hemul/thread_pool.hpp"

namespace hemul {

enum class Layout {
  prime_major,  // data[j*n + i]: residues of one prime are contiguous
  coeff_major,  // data[i*np + j]: residues of one coefficient are contiguous
};

struct RnsMatrix {
  int np = 0;
  int n = 0;
  Layout layout = Layout::prime_major;
  std::vector<uint64_t> data;

  uint64_t& at(int j, int i) {
    return layout == Layout::prime_major
               ? data[static_cast<size_t>(j) * n + i]
               : data[static_cast<size_t>(i) * np + j];
  }
  uint64_t at(int j, int i) const {
    return layout == Layout::prime_major
               ? data[static_cast<size_t>(j) * n + i]
               : data[static_cast<size_t>(i) * np + j];
  }
};

RnsMatrix make_rns(int np, int n, Layout layout);
// Rewrites the matrix into the other layout (explicit transposition pass).
void rns_transpose(RnsMatrix& m);

// How the forward-CRT inner product accumulates limb * weight terms before
// reducing mod p.
enum class AccumKind {
  three_word_adc,  // full-width 3-word accumulator, single final reduction
  periodic_mod,    // 2-word accumulator reduced every `period` terms
};

struct AccumStrategy {
  AccumKind kind = AccumKind::three_word_adc;
  int period = 0;  // only for periodic_mod
};

// periodic_mod is sound iff p + period*(beta-1)*(p-1) < beta^2 for every
// prime in the set.
bool accum_strategy_valid(const AccumStrategy& s, const PrimeSet& ps);
int max_valid_period(const PrimeSet& ps);

// residues[j][i] = a_i mod p_j, computed as sum_k a_{i,k} * (beta^k mod p_j).
RnsMatrix crt_forward(const BigPoly& a, const PrimeSet& ps,
                      const CrtTables& ct, const AccumStrategy& strat,
                      Layout out_layout, ThreadPool* pool = nullptr,
                      StageCounters* cnt = nullptr,
                      StageTimers* tim = nullptr);

// r[j][i] = a[j][i] * b[j][i] mod p_j (inputs canonical, output canonical).
void rns_pointwise_mul(RnsMatrix& r, const RnsMatrix& a, const RnsMatrix& b,
                       const PrimeSet& ps, ThreadPool* pool = nullptr,
                       StageCounters* cnt = nullptr,
                       StageTimers* tim = nullptr);

// Inverse CRT. Both variants compute the exact integer
// sum_j ((x_j * hatP_j^-1) mod p_j) * P/p_j, fold it below P with a
// precomputed-multiple lookup, then reduce mod the target modulus; they
// return bit-identical polynomials. "naive" walks coefficients outermost,
// "reordered" walks the limbs of P/p_j outermost with a short accumulator.
BigPoly icrt_naive(const RnsMatrix& m, const PrimeSet& ps,
                   const IcrtTables& t, ThreadPool* pool = nullptr,
                   StageCounters* cnt = nullptr, StageTimers* tim = nullptr);
BigPoly icrt_reordered(const RnsMatrix& m, const PrimeSet& ps,
                       const IcrtTables& t, ThreadPool* pool = nullptr,
                       StageCounters* cnt = nullptr,
                       StageTimers* tim = nullptr);

}  // namespace hemul
