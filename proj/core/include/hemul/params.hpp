// Scheme parameters, RNS prime generation, and the precomputed tables
// consumed by the conversion and NTT kernels.

#pragma once

#include <cstdint>
#include <vector>

#include "hemul/bigint.hpp"
#include "hemul/word.hpp"

namespace hemul {

struct Params {
  WordSize word = WordSize::w64;
  int log_n = 0;  // ring degree exponent; X^n + 1 with n = 2^log_n
  int n = 0;
  int log_delta = 30;  // encoding scale bits
  int log_p = 30;      // rescaling step bits
  int depth = 0;       // L; fresh modulus is p^L
  int log_q_max = 0;   // log_p * depth
};

// Ring degree exponent giving >= 128-bit security for the given ciphertext
// modulus size. Anchors: logQ 300 -> 2^14, 600 -> 2^15, 1200 -> 2^16,
// 2400 -> 2^17 (degree proportional to logQ between anchors).
int ring_log_n_for(int log_q);

// log_n_override = 0 picks the degree from the security table; tests use
// small overrides to keep runtimes sane.
Params make_params(int log_p, int depth, WordSize w, int log_n_override = 0);

// A batch of word-sized NTT primes p_i = 1 mod 2n, enumerated downward from
// the top of the admissible range (2^57, 2^60) in 64-bit mode or
// (2^27, 2^30) in 32-bit mode, together with 2n-th roots of unity and the
// Shoup pairs used by the two-word / three-word reduction helpers.
struct PrimeSet {
  WordSize word = WordSize::w64;
  uint64_t two_n = 0;
  std::vector<uint64_t> primes;
  std::vector<uint64_t> roots;  // primitive 2n-th root of unity mod primes[j]
  std::vector<ShoupPair> pair_one;    // shoup(1) -> reduces a word mod p
  std::vector<ShoupPair> pair_beta;   // shoup(beta mod p)
  std::vector<ShoupPair> pair_beta2;  // shoup(beta^2 mod p)
  BigInt product;                     // P = prod primes
};

PrimeSet generate_primes(int count, int log_n, WordSize w);

// ceil((bound_bits + log_n) / min_prime_bits): number of primes whose
// product provably exceeds 2^bound_bits * n, the worst-case magnitude of a
// length-n convolution of values below 2^(bound_bits/2)-ish operands. The
// log_n slack is what the coefficient sum costs on top of the product of
// the two operand bounds.
int prime_count(int bound_bits, int log_n, WordSize w);

// Region 1 carries products of two polynomials reduced mod q: bound 2*log_q.
int region1_prime_count(int log_q, int log_n, WordSize w);
// Region 2 carries d2 * evk with evk taken mod Q^2: bound log_q + 2*log_q_max.
int region2_prime_count(int log_q, int log_q_max, int log_n, WordSize w);

// pow_beta[j*q_limbs + k] = beta^k mod p_j, the per-limb weights of the
// forward CRT inner product.
struct CrtTables {
  int np = 0;
  int q_limbs = 0;
  std::vector<ShoupPair> pow_beta;
};

CrtTables make_crt_tables(const PrimeSet& ps, int log_q);

// Forward/inverse twiddles in bit-reversed order plus n^-1, per prime.
struct NttTables {
  int log_n = 0;
  int n = 0;
  std::vector<ShoupPair> tw;   // [j*n + i] = psi^rev(i) mod p_j
  std::vector<ShoupPair> itw;  // [j*n + i] = psi^-rev(i) mod p_j
  std::vector<ShoupPair> n_inv;
};

NttTables make_ntt_tables(const PrimeSet& ps, int log_n);

struct IcrtTables {
  int np = 0;
  int p_limbs = 0;                  // limbs of P
  std::vector<ShoupPair> inv_p;     // ((P/p_j)^-1 mod p_j)
  std::vector<uint64_t> p_div_p;    // [j*p_limbs + k] = limb k of P/p_j
  std::vector<uint64_t> p_div_p_t;  // transposed copy, [k*np + j]
  BigInt big_p;
  BigInt half_p;                    // floor(P / 2), centered-lift threshold
  BigInt neg_p_mod;                 // (-P) mod target
  std::vector<BigInt> p_multiples;  // k*P for k = 0..np
  BigInt target;                    // final reduction modulus
  bool target_pow2 = false;
  int target_log2 = 0;
  int accum_words = 3;  // 2 when np*(max_p-1)*(beta-1) fits in two words
};

IcrtTables make_icrt_tables(const PrimeSet& ps, const BigInt& target,
                            WordSize w);

// Word-sized modular helpers shared by table generation and tests.
uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m);
bool is_prime_u64(uint64_t n);
// psi with psi^(2n) = 1 and psi^n = -1 mod p.
uint64_t find_root_of_unity(uint64_t p, uint64_t two_n);

}  // namespace hemul
