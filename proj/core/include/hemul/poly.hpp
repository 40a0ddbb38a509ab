// Polynomials over Z_q[X]/(X^n + 1) with q = 2^log_q, stored as a flat
// n x limbs array of base-beta words. Because q is a power of two, modular
// reduction is a mask and rescaling is an add-half-then-shift.

#pragma once

#include <cstdint>
#include <vector>

#include "hemul/bigint.hpp"
#include "hemul/word.hpp"

namespace hemul {

struct BigPoly {
  int n = 0;
  int log_q = 0;
  int limbs = 0;  // words per coefficient, ceil(log_q / log_beta)
  WordSize word = WordSize::w64;
  std::vector<uint64_t> data;  // [i * limbs + k], limb k of coefficient i

  uint64_t* coeff(int i) { return data.data() + static_cast<size_t>(i) * limbs; }
  const uint64_t* coeff(int i) const {
    return data.data() + static_cast<size_t>(i) * limbs;
  }
};

BigPoly make_poly(int n, int log_q, WordSize w);

BigInt poly_get(const BigPoly& a, int i);
void poly_set(BigPoly& a, int i, const BigInt& v);  // v reduced mod 2^log_q

// r = a + b and r = a - b mod 2^log_q; operands must share shape.
void poly_add(BigPoly& r, const BigPoly& a, const BigPoly& b);
void poly_sub(BigPoly& r, const BigPoly& a, const BigPoly& b);
void poly_negate(BigPoly& r, const BigPoly& a);

// Rescale: divide centered coefficients by 2^bits with rounding to nearest,
// producing a polynomial mod 2^(log_q - bits). Exact for centered values
// because 2^log_q is divisible by 2^bits.
BigPoly poly_shift_right(const BigPoly& a, int bits);

// Reinterpret under a smaller power-of-two modulus (mask high bits).
BigPoly poly_mod_down(const BigPoly& a, int new_log_q);

bool poly_equal(const BigPoly& a, const BigPoly& b);

}  // namespace hemul
