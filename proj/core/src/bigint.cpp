#include "hemul/bigint.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace hemul {

namespace {

template <int LB>
uint64_t add_t(BigInt& r, const BigInt& a, const BigInt& b) {
  const size_t n = std::max(a.size(), b.size());
  r.resize(n);
  uint64_t carry = 0;
  for (size_t i = 0; i < n; ++i) {
    const uint64_t x = i < a.size() ? a[i] : 0;
    const uint64_t y = i < b.size() ? b[i] : 0;
    const uint64_t s = x + y + carry;
    if constexpr (LB == 64) {
      // carry out iff the masked sum wrapped
      carry = (s < x || (carry && s == x)) ? 1 : 0;
      r[i] = s;
    } else {
      carry = s >> 32;
      r[i] = s & WordOps<32>::kMask;
    }
  }
  return carry;
}

template <int LB>
void sub_t(BigInt& r, const BigInt& a, const BigInt& b) {
  r.resize(a.size());
  uint64_t borrow = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    const uint64_t y = i < b.size() ? b[i] : 0;
    if constexpr (LB == 64) {
      const uint64_t d = a[i] - y - borrow;
      borrow = (a[i] < y || (borrow && a[i] == y)) ? 1 : 0;
      r[i] = d;
    } else {
      const uint64_t d = a[i] - y - borrow;
      borrow = d >> 63;  // wrapped below zero
      r[i] = d & WordOps<32>::kMask;
    }
  }
}

template <int LB>
BigInt mul_t(const BigInt& a, const BigInt& b) {
  if (a.empty() || b.empty()) return {};
  BigInt r(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    uint64_t carry = 0;
    for (size_t j = 0; j < b.size(); ++j) {
      if constexpr (LB == 64) {
        using W = WordOps<64>::Wide;
        const W t = static_cast<W>(a[i]) * b[j] + r[i + j] + carry;
        r[i + j] = static_cast<uint64_t>(t);
        carry = static_cast<uint64_t>(t >> 64);
      } else {
        const uint64_t t = a[i] * b[j] + r[i + j] + carry;
        r[i + j] = t & WordOps<32>::kMask;
        carry = t >> 32;
      }
    }
    r[i + b.size()] = carry;  // untouched by earlier rows
  }
  bigint_trim(r);
  return r;
}

}  // namespace

int bigint_cmp(const BigInt& a, const BigInt& b) {
  size_t na = a.size(), nb = b.size();
  while (na > 0 && a[na - 1] == 0) --na;
  while (nb > 0 && b[nb - 1] == 0) --nb;
  if (na != nb) return na < nb ? -1 : 1;
  for (size_t i = na; i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

bool bigint_is_zero(const BigInt& a) {
  for (uint64_t x : a)
    if (x) return false;
  return true;
}

void bigint_trim(BigInt& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int bigint_bit_length(const BigInt& a, WordSize w) {
  const int lb = log_beta(w);
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i]) {
      int top = 64 - __builtin_clzll(a[i]);
      return static_cast<int>(i) * lb + top;
    }
  }
  return 0;
}

uint64_t bigint_add(BigInt& r, const BigInt& a, const BigInt& b, WordSize w) {
  return w == WordSize::w64 ? add_t<64>(r, a, b) : add_t<32>(r, a, b);
}

void bigint_sub(BigInt& r, const BigInt& a, const BigInt& b, WordSize w) {
  assert(bigint_cmp(a, b) >= 0);
  if (w == WordSize::w64)
    sub_t<64>(r, a, b);
  else
    sub_t<32>(r, a, b);
}

BigInt bigint_mul(const BigInt& a, const BigInt& b, WordSize w) {
  return w == WordSize::w64 ? mul_t<64>(a, b) : mul_t<32>(a, b);
}

BigInt bigint_mul_word(const BigInt& a, uint64_t b, WordSize w) {
  return bigint_mul(a, BigInt{b}, w);
}

void bigint_add_word(BigInt& a, uint64_t b, WordSize w) {
  BigInt r;
  uint64_t c = bigint_add(r, a, BigInt{b}, w);
  if (c) r.push_back(c);
  a = std::move(r);
}

BigInt bigint_shl(const BigInt& a, int bits, WordSize w) {
  if (bits == 0 || bigint_is_zero(a)) return a;
  const int lb = log_beta(w);
  const int limbs = bits / lb, rem = bits % lb;
  BigInt r(a.size() + limbs + 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    const uint64_t v = a[i];
    if (rem == 0) {
      r[i + limbs] = v;
    } else {
      r[i + limbs] |= (v << rem) & (w == WordSize::w64 ? WordOps<64>::kMask
                                                       : WordOps<32>::kMask);
      r[i + limbs + 1] |= v >> (lb - rem);
    }
  }
  bigint_trim(r);
  return r;
}

BigInt bigint_shr(const BigInt& a, int bits, WordSize w) {
  const int lb = log_beta(w);
  const int limbs = bits / lb, rem = bits % lb;
  if (limbs >= static_cast<int>(a.size())) return {};
  BigInt r(a.size() - limbs, 0);
  for (size_t i = 0; i < r.size(); ++i) {
    uint64_t v = a[i + limbs] >> rem;
    if (rem && i + limbs + 1 < a.size()) v |= a[i + limbs + 1] << (lb - rem);
    r[i] = v & (w == WordSize::w64 ? WordOps<64>::kMask : WordOps<32>::kMask);
  }
  bigint_trim(r);
  return r;
}

int bigint_bit(const BigInt& a, int i, WordSize w) {
  const int lb = log_beta(w);
  const size_t limb = static_cast<size_t>(i) / lb;
  if (limb >= a.size()) return 0;
  return (a[limb] >> (i % lb)) & 1;
}

BigInt bigint_mod(const BigInt& a, const BigInt& m, WordSize w) {
  if (bigint_is_zero(m)) throw std::invalid_argument("mod by zero");
  if (bigint_cmp(a, m) < 0) {
    BigInt r = a;
    bigint_trim(r);
    return r;
  }
  const int shift = bigint_bit_length(a, w) - bigint_bit_length(m, w);
  BigInt r = a;
  bigint_trim(r);
  BigInt d = bigint_shl(m, shift, w);
  for (int s = shift; s >= 0; --s) {
    if (bigint_cmp(r, d) >= 0) bigint_sub(r, r, d, w);
    d = bigint_shr(d, 1, w);
  }
  bigint_trim(r);
  return r;
}

uint64_t bigint_mod_word(const BigInt& a, uint64_t m, WordSize w) {
  uint64_t r = 0;
  if (w == WordSize::w64) {
    for (size_t i = a.size(); i-- > 0;) {
      using W = WordOps<64>::Wide;
      r = static_cast<uint64_t>(((static_cast<W>(r) << 64) | a[i]) % m);
    }
  } else {
    for (size_t i = a.size(); i-- > 0;) r = ((r << 32) | a[i]) % m;
  }
  return r;
}

BigInt bigint_div_word(const BigInt& a, uint64_t m, uint64_t* rem, WordSize w) {
  BigInt q(a.size(), 0);
  uint64_t r = 0;
  if (w == WordSize::w64) {
    using W = WordOps<64>::Wide;
    for (size_t i = a.size(); i-- > 0;) {
      const W t = (static_cast<W>(r) << 64) | a[i];
      q[i] = static_cast<uint64_t>(t / m);
      r = static_cast<uint64_t>(t % m);
    }
  } else {
    for (size_t i = a.size(); i-- > 0;) {
      const uint64_t t = (r << 32) | a[i];
      q[i] = t / m;
      r = t % m;
    }
  }
  if (rem) *rem = r;
  bigint_trim(q);
  return q;
}

BigInt bigint_from_u64(uint64_t v, WordSize w) {
  if (v == 0) return {};
  if (w == WordSize::w64) return {v};
  BigInt r{v & WordOps<32>::kMask};
  if (v >> 32) r.push_back(v >> 32);
  return r;
}

BigInt bigint_pow2(int bits, WordSize w) {
  const int lb = log_beta(w);
  BigInt r(bits / lb + 1, 0);
  r[bits / lb] = uint64_t{1} << (bits % lb);
  return r;
}

uint64_t bigint_to_u64(const BigInt& a, WordSize w) {
  uint64_t v = a.empty() ? 0 : a[0];
  if (w == WordSize::w32 && a.size() > 1) v |= a[1] << 32;
  return v;
}

std::string bigint_to_hex(const BigInt& a, WordSize w) {
  static const char* digits = "0123456789abcdef";
  BigInt t = a;
  bigint_trim(t);
  if (t.empty()) return "0";
  const int lb = log_beta(w);
  std::string s;
  for (size_t i = 0; i < t.size(); ++i) {
    uint64_t v = t[i];
    const int nibbles = i + 1 == t.size() ? (bigint_bit_length(t, w) -
                                             static_cast<int>(i) * lb + 3) /
                                                4
                                          : lb / 4;
    for (int k = 0; k < nibbles; ++k) {
      s.push_back(digits[v & 0xf]);
      v >>= 4;
    }
  }
  std::reverse(s.begin(), s.end());
  return s;
}

BigInt bigint_from_hex(const std::string& s, WordSize w) {
  BigInt r;
  const int lb = log_beta(w);
  int bit = 0;
  for (size_t i = s.size(); i-- > 0;) {
    const char c = s[i];
    uint64_t v;
    if (c >= '0' && c <= '9')
      v = c - '0';
    else if (c >= 'a' && c <= 'f')
      v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F')
      v = c - 'A' + 10;
    else
      throw std::invalid_argument("bad hex digit");
    const size_t limb = bit / lb;
    if (limb >= r.size()) r.resize(limb + 1, 0);
    r[limb] |= v << (bit % lb);
    if (w == WordSize::w32) r[limb] &= WordOps<32>::kMask;
    // a nibble can straddle a 32-bit limb boundary only if lb % 4 != 0,
    // which never happens here
    bit += 4;
  }
  bigint_trim(r);
  return r;
}

}  // namespace hemul
