// Seedable randomness for key material, errors, and test inputs. All
// distributions draw from a single mt19937_64 so a fixed seed reproduces an
// entire keygen/encrypt transcript.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "hemul/bigint.hpp"
#include "hemul/word.hpp"

namespace hemul {

class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }

  uint64_t below(uint64_t bound) {
    // modulo bias is irrelevant here: bounds are powers of two or this is
    // test plumbing, never a security boundary
    return eng_() % bound;
  }

  // uniform in [0, 2^bits)
  BigInt uniform_bits(int bits, WordSize w) {
    const int lb = log_beta(w);
    const int limbs = (bits + lb - 1) / lb;
    BigInt r(limbs);
    const uint64_t wm =
        w == WordSize::w64 ? WordOps<64>::kMask : WordOps<32>::kMask;
    for (int k = 0; k < limbs; ++k) r[k] = eng_() & wm;
    const int rem = bits - (limbs - 1) * lb;
    r[limbs - 1] &= rem == lb ? wm : ((uint64_t{1} << rem) - 1);
    bigint_trim(r);
    return r;
  }

  // ternary with exactly h nonzero entries (+-1 equiprobable)
  std::vector<int> ternary_hwt(int n, int h) {
    std::vector<int> s(n, 0);
    int placed = 0;
    while (placed < h) {
      const int i = static_cast<int>(below(static_cast<uint64_t>(n)));
      if (s[i]) continue;
      s[i] = (eng_() & 1) ? 1 : -1;
      ++placed;
    }
    return s;
  }

  // each entry +1 or -1 with probability rho/2, else 0
  std::vector<int> ternary_zo(int n, double rho = 0.5) {
    std::vector<int> s(n, 0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
      const double x = u(eng_);
      if (x < rho / 2)
        s[i] = 1;
      else if (x < rho)
        s[i] = -1;
    }
    return s;
  }

  // rounded Gaussian, truncated at 6 sigma
  std::vector<int> gaussian(int n, double sigma = 3.2) {
    std::vector<int> e(n);
    std::normal_distribution<double> g(0.0, sigma);
    for (int i = 0; i < n; ++i) {
      double x;
      do {
        x = g(eng_);
      } while (std::fabs(x) > 6 * sigma);
      e[i] = static_cast<int>(std::llround(x));
    }
    return e;
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace hemul
