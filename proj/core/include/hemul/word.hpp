// Machine-word arithmetic parameterized by the word size beta.
//
// All residues, primes, and big-integer limbs in this library are stored in
// uint64_t slots but are always smaller than beta (2^32 or 2^64 depending on
// the configured word size). Kernels are templated on the log of beta and
// dispatched once per operation, so the hot loops contain no mode branches.
//
// NOT a constant-time implementation. This library exists to analyze the
// computational structure of HE multiplication, not to protect secrets
// against side channels.

#pragma once

#include <cstdint>
#include <type_traits>

namespace hemul {

enum class WordSize : int { w32 = 32, w64 = 64 };

constexpr int log_beta(WordSize w) { return static_cast<int>(w); }

// y together with floor(y * beta / p), the precomputed scaled reciprocal
// used by Shoup's modular multiplication with a fixed operand y.
struct ShoupPair {
  uint64_t value = 0;     // y, in [0, p)
  uint64_t quotient = 0;  // floor(y * beta / p), < beta
};

template <int LogBeta>
struct WordOps;

template <>
struct WordOps<64> {
  static constexpr int kLogBeta = 64;
  static constexpr uint64_t kMask = ~uint64_t{0};
  using Wide = unsigned __int128;

  static uint64_t mulhi(uint64_t x, uint64_t y) {
    return static_cast<uint64_t>((static_cast<Wide>(x) * y) >> 64);
  }
  static uint64_t mullo(uint64_t x, uint64_t y) { return x * y; }

  // mulhi emulated from half-word products with the lo*lo partial product
  // omitted. Underestimates the true high word by at most 2.
  static uint64_t approx_mulhi(uint64_t x, uint64_t y) {
    const uint64_t x0 = static_cast<uint32_t>(x), x1 = x >> 32;
    const uint64_t y0 = static_cast<uint32_t>(y), y1 = y >> 32;
    const uint64_t t = x0 * y1;
    const uint64_t w = x1 * y0 + (t & 0xffffffffu);
    return x1 * y1 + (t >> 32) + (w >> 32);
  }

  static uint64_t div_word(uint64_t hi, uint64_t lo, uint64_t d) {
    return static_cast<uint64_t>(((static_cast<Wide>(hi) << 64) | lo) / d);
  }
};

template <>
struct WordOps<32> {
  static constexpr int kLogBeta = 32;
  static constexpr uint64_t kMask = 0xffffffffu;

  static uint64_t mulhi(uint64_t x, uint64_t y) { return (x * y) >> 32; }
  static uint64_t mullo(uint64_t x, uint64_t y) { return (x * y) & kMask; }

  static uint64_t approx_mulhi(uint64_t x, uint64_t y) {
    const uint64_t x0 = x & 0xffffu, x1 = x >> 16;
    const uint64_t y0 = y & 0xffffu, y1 = y >> 16;
    const uint64_t t = x0 * y1;
    const uint64_t w = x1 * y0 + (t & 0xffffu);
    return x1 * y1 + (t >> 16) + (w >> 16);
  }

  static uint64_t div_word(uint64_t hi, uint64_t lo, uint64_t d) {
    return ((hi << 32) | lo) / d;
  }
};

template <int LB>
ShoupPair shoup_precompute_t(uint64_t y, uint64_t p) {
  return ShoupPair{y, WordOps<LB>::div_word(y, 0, p)};
}

// r = x*y mod p, exact, result in [0, p).
template <int LB>
uint64_t shoup_modmul_t(uint64_t x, ShoupPair sp, uint64_t p) {
  const uint64_t q = WordOps<LB>::mulhi(x, sp.quotient);
  const uint64_t r =
      (WordOps<LB>::mullo(x, sp.value) - WordOps<LB>::mullo(q, p)) &
      WordOps<LB>::kMask;
  return r >= p ? r - p : r;
}

// Lazy variant: result in [0, 2p), the final conditional subtraction is
// left to the caller.
template <int LB>
uint64_t shoup_modmul_lazy_t(uint64_t x, ShoupPair sp, uint64_t p) {
  const uint64_t q = WordOps<LB>::mulhi(x, sp.quotient);
  return (WordOps<LB>::mullo(x, sp.value) - WordOps<LB>::mullo(q, p)) &
         WordOps<LB>::kMask;
}

// Approximate variant: the quotient estimate drops the lo*lo partial
// product, leaving the remainder in [0, 4p). Requires p < beta/4.
template <int LB>
uint64_t shoup_modmul_approx_t(uint64_t x, ShoupPair sp, uint64_t p) {
  const uint64_t q = WordOps<LB>::approx_mulhi(x, sp.quotient);
  return (WordOps<LB>::mullo(x, sp.value) - WordOps<LB>::mullo(q, p)) &
         WordOps<LB>::kMask;
}

// Maps a value in [0, 4p) to [0, p) with two conditional subtractions.
inline uint64_t reduce_4p(uint64_t r, uint64_t p) {
  if (r >= 2 * p) r -= 2 * p;
  if (r >= p) r -= p;
  return r;
}

inline uint64_t add_mod(uint64_t a, uint64_t b, uint64_t p) {
  const uint64_t s = a + b;
  return s >= p ? s - p : s;
}

inline uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t p) {
  return a >= b ? a - b : a + p - b;
}

// Runtime-dispatched entry points for callers outside the templated kernels.

inline uint64_t word_mulhi(WordSize w, uint64_t x, uint64_t y) {
  return w == WordSize::w64 ? WordOps<64>::mulhi(x, y)
                            : WordOps<32>::mulhi(x, y);
}

inline ShoupPair shoup_precompute(uint64_t y, uint64_t p, WordSize w) {
  return w == WordSize::w64 ? shoup_precompute_t<64>(y, p)
                            : shoup_precompute_t<32>(y, p);
}

inline uint64_t shoup_modmul(uint64_t x, ShoupPair sp, uint64_t p, WordSize w) {
  return w == WordSize::w64 ? shoup_modmul_t<64>(x, sp, p)
                            : shoup_modmul_t<32>(x, sp, p);
}

inline uint64_t shoup_modmul_approx(uint64_t x, ShoupPair sp, uint64_t p,
                                    WordSize w) {
  return w == WordSize::w64 ? shoup_modmul_approx_t<64>(x, sp, p)
                            : shoup_modmul_approx_t<32>(x, sp, p);
}

// Invokes f with an integral_constant carrying the compile-time log(beta).
template <typename F>
decltype(auto) dispatch_word(WordSize w, F&& f) {
  if (w == WordSize::w64) {
    return f(std::integral_constant<int, 64>{});
  }
  return f(std::integral_constant<int, 32>{});
}

}  // namespace hemul
