#include "hemul/poly.hpp"

#include <cassert>
#include <cstring>

namespace hemul {

namespace {

// mask for the partially-used top limb (all-ones when log_q is a limb
// multiple: the modulus then covers the full limb span)
uint64_t top_mask(int log_q, int limbs, WordSize w) {
  const int lb = log_beta(w);
  const int rem = log_q - (limbs - 1) * lb;
  const uint64_t word_mask =
      w == WordSize::w64 ? WordOps<64>::kMask : WordOps<32>::kMask;
  return rem == lb ? word_mask : ((uint64_t{1} << rem) - 1);
}

}  // namespace

BigPoly make_poly(int n, int log_q, WordSize w) {
  BigPoly p;
  p.n = n;
  p.log_q = log_q;
  p.word = w;
  p.limbs = (log_q + log_beta(w) - 1) / log_beta(w);
  p.data.assign(static_cast<size_t>(n) * p.limbs, 0);
  return p;
}

BigInt poly_get(const BigPoly& a, int i) {
  BigInt v(a.coeff(i), a.coeff(i) + a.limbs);
  bigint_trim(v);
  return v;
}

void poly_set(BigPoly& a, int i, const BigInt& v) {
  uint64_t* c = a.coeff(i);
  const uint64_t tm = top_mask(a.log_q, a.limbs, a.word);
  for (int k = 0; k < a.limbs; ++k)
    c[k] = k < static_cast<int>(v.size()) ? v[k] : 0;
  c[a.limbs - 1] &= tm;
}

void poly_add(BigPoly& r, const BigPoly& a, const BigPoly& b) {
  assert(a.n == b.n && a.log_q == b.log_q);
  const WordSize w = a.word;
  const int lb = log_beta(w);
  const uint64_t wm = w == WordSize::w64 ? WordOps<64>::kMask : WordOps<32>::kMask;
  const uint64_t tm = top_mask(a.log_q, a.limbs, w);
  if (&r != &a && &r != &b) r = make_poly(a.n, a.log_q, w);
  for (int i = 0; i < a.n; ++i) {
    const uint64_t* x = a.coeff(i);
    const uint64_t* y = b.coeff(i);
    uint64_t* z = r.coeff(i);
    uint64_t carry = 0;
    for (int k = 0; k < a.limbs; ++k) {
      if (w == WordSize::w64) {
        const uint64_t s = x[k] + y[k] + carry;
        carry = (s < x[k] || (carry && s == x[k])) ? 1 : 0;
        z[k] = s;
      } else {
        const uint64_t s = x[k] + y[k] + carry;
        carry = s >> lb;
        z[k] = s & wm;
      }
    }
    z[a.limbs - 1] &= tm;
  }
}

void poly_sub(BigPoly& r, const BigPoly& a, const BigPoly& b) {
  assert(a.n == b.n && a.log_q == b.log_q);
  const WordSize w = a.word;
  const uint64_t wm = w == WordSize::w64 ? WordOps<64>::kMask : WordOps<32>::kMask;
  const uint64_t tm = top_mask(a.log_q, a.limbs, w);
  if (&r != &a && &r != &b) r = make_poly(a.n, a.log_q, w);
  for (int i = 0; i < a.n; ++i) {
    const uint64_t* x = a.coeff(i);
    const uint64_t* y = b.coeff(i);
    uint64_t* z = r.coeff(i);
    uint64_t borrow = 0;
    for (int k = 0; k < a.limbs; ++k) {
      const uint64_t d = (x[k] - y[k] - borrow) & wm;
      borrow = (x[k] < y[k] + borrow || (y[k] == wm && borrow)) ? 1 : 0;
      z[k] = d;
    }
    z[a.limbs - 1] &= tm;
  }
}

void poly_negate(BigPoly& r, const BigPoly& a) {
  BigPoly zero = make_poly(a.n, a.log_q, a.word);
  poly_sub(r, zero, a);
}

BigPoly poly_shift_right(const BigPoly& a, int bits) {
  assert(bits > 0 && bits < a.log_q);
  const WordSize w = a.word;
  BigPoly r = make_poly(a.n, a.log_q - bits, w);
  const BigInt half = bigint_pow2(bits - 1, w);
  const BigInt q = bigint_pow2(a.log_q, w);
  for (int i = 0; i < a.n; ++i) {
    BigInt v = poly_get(a, i);
    BigInt s;
    uint64_t c = bigint_add(s, v, half, w);
    if (c) s.push_back(c);
    // the +half may spill past q; fold it back before shifting so the
    // result stays a residue mod 2^(log_q - bits)
    if (bigint_cmp(s, q) >= 0) bigint_sub(s, s, q, w);
    poly_set(r, i, bigint_shr(s, bits, w));
  }
  return r;
}

BigPoly poly_mod_down(const BigPoly& a, int new_log_q) {
  assert(new_log_q <= a.log_q);
  BigPoly r = make_poly(a.n, new_log_q, a.word);
  for (int i = 0; i < a.n; ++i) {
    const uint64_t* x = a.coeff(i);
    uint64_t* z = r.coeff(i);
    std::memcpy(z, x, sizeof(uint64_t) * r.limbs);
    z[r.limbs - 1] &= top_mask(new_log_q, r.limbs, a.word);
  }
  return r;
}

bool poly_equal(const BigPoly& a, const BigPoly& b) {
  return a.n == b.n && a.log_q == b.log_q && a.data == b.data;
}

}  // namespace hemul
