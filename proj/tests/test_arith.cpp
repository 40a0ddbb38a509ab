#include <cstdint>

#include "doctest.h"
#include "gmp_oracle.hpp"
#include "hemul/bigint.hpp"
#include "hemul/rng.hpp"
#include "hemul/word.hpp"

using namespace hemul;
using namespace hemul::test;

namespace {

BigInt random_bigint(Rng& rng, int limbs, WordSize w) {
  BigInt r(limbs);
  const uint64_t mask = w == WordSize::w64 ? ~uint64_t{0} : 0xffffffffu;
  for (auto& x : r) x = rng.next() & mask;
  return r;
}

uint64_t oracle_mulmod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

}  // namespace

TEST_CASE("shoup modmul exhaustive over small moduli") {
  for (uint64_t p = 3; p < 1024; p += 2) {
    for (uint64_t y = 0; y < p; ++y) {
      const auto sp64 = shoup_precompute_t<64>(y, p);
      const auto sp32 = shoup_precompute_t<32>(y, p);
      for (uint64_t x = 0; x < p; ++x) {
        const uint64_t want = oracle_mulmod(x, y, p);
        REQUIRE(shoup_modmul_t<64>(x, sp64, p) == want);
        REQUIRE(shoup_modmul_t<32>(x, sp32, p) == want);
        const uint64_t lazy = shoup_modmul_lazy_t<64>(x, sp64, p);
        REQUIRE(lazy < 2 * p);
        REQUIRE(lazy % p == want);
        const uint64_t ap = shoup_modmul_approx_t<64>(x, sp64, p);
        REQUIRE(ap < 4 * p);
        REQUIRE(ap % p == want);
      }
    }
    // keep the exhaustive sweep fast: dense below 64, sparse above
    if (p > 64) p += 30;
  }
}

TEST_CASE("shoup modmul randomized at production prime sizes") {
  Rng rng(42);
  // primes near the top of each word-size range
  const uint64_t p64 = 1152921504606844673ull;   // < 2^60
  const uint64_t p32 = 1073479681ull;            // < 2^30
  REQUIRE(p64 % 2 == 1);
  for (int t = 0; t < 100000; ++t) {
    const uint64_t x = rng.below(p64), y = rng.below(p64);
    const auto sp = shoup_precompute_t<64>(y, p64);
    const uint64_t want = oracle_mulmod(x, y, p64);
    CHECK(shoup_modmul_t<64>(x, sp, p64) == want);
    const uint64_t ap = shoup_modmul_approx_t<64>(x, sp, p64);
    CHECK(ap % p64 == want);
    CHECK(ap / p64 < 4);  // residue class offset is 0..3 multiples of p
    CHECK(reduce_4p(ap, p64) == want);
  }
  for (int t = 0; t < 100000; ++t) {
    const uint64_t x = rng.below(p32), y = rng.below(p32);
    const auto sp = shoup_precompute_t<32>(y, p32);
    const uint64_t want = oracle_mulmod(x, y, p32);
    CHECK(shoup_modmul_t<32>(x, sp, p32) == want);
    const uint64_t ap = shoup_modmul_approx_t<32>(x, sp, p32);
    CHECK(ap % p32 == want);
    CHECK(reduce_4p(ap, p32) == want);
  }
}

TEST_CASE("approx mulhi underestimates by at most 2") {
  Rng rng(7);
  for (int t = 0; t < 100000; ++t) {
    const uint64_t x = rng.next(), y = rng.next();
    const uint64_t exact = WordOps<64>::mulhi(x, y);
    const uint64_t approx = WordOps<64>::approx_mulhi(x, y);
    CHECK(approx <= exact);
    CHECK(exact - approx <= 2);
  }
  for (int t = 0; t < 100000; ++t) {
    const uint64_t x = rng.next() & 0xffffffffu, y = rng.next() & 0xffffffffu;
    const uint64_t exact = WordOps<32>::mulhi(x, y);
    const uint64_t approx = WordOps<32>::approx_mulhi(x, y);
    CHECK(approx <= exact);
    CHECK(exact - approx <= 2);
  }
}

TEST_CASE("bigint add/sub/mul/mod against gmp") {
  Rng rng(3);
  for (WordSize w : {WordSize::w64, WordSize::w32}) {
    for (int t = 0; t < 500; ++t) {
      const int la = 1 + static_cast<int>(rng.below(40));
      const int lb = 1 + static_cast<int>(rng.below(40));
      BigInt a = random_bigint(rng, la, w);
      BigInt b = random_bigint(rng, lb, w);
      const Mpz za = to_mpz(a, w), zb = to_mpz(b, w);

      BigInt sum;
      uint64_t carry = bigint_add(sum, a, b, w);
      if (carry) sum.push_back(carry);
      Mpz zs;
      mpz_add(zs.get(), za.get(), zb.get());
      CHECK(bigint_cmp(sum, from_mpz(zs, w)) == 0);

      Mpz zm;
      mpz_mul(zm.get(), za.get(), zb.get());
      CHECK(bigint_cmp(bigint_mul(a, b, w), from_mpz(zm, w)) == 0);

      if (bigint_cmp(a, b) >= 0) {
        BigInt diff;
        bigint_sub(diff, a, b, w);
        Mpz zd;
        mpz_sub(zd.get(), za.get(), zb.get());
        CHECK(bigint_cmp(diff, from_mpz(zd, w)) == 0);
      }

      if (!bigint_is_zero(b)) {
        Mpz zr;
        mpz_mod(zr.get(), za.get(), zb.get());
        CHECK(bigint_cmp(bigint_mod(a, b, w), from_mpz(zr, w)) == 0);
      }
    }
  }
}

TEST_CASE("bigint word ops and shifts against gmp") {
  Rng rng(11);
  for (WordSize w : {WordSize::w64, WordSize::w32}) {
    const uint64_t wmask = w == WordSize::w64 ? ~uint64_t{0} : 0xffffffffu;
    for (int t = 0; t < 500; ++t) {
      BigInt a = random_bigint(rng, 1 + static_cast<int>(rng.below(30)), w);
      const Mpz za = to_mpz(a, w);
      const uint64_t m = (rng.next() & wmask) | 1;

      {
        Mpz r, zmod(m);
        mpz_mod(r.get(), za.get(), zmod.get());
        CHECK(bigint_mod_word(a, m, w) == mpz_get_ui(r.get()));
      }

      uint64_t rem = 0;
      BigInt q = bigint_div_word(a, m, &rem, w);
      Mpz zq, zm(m);
      mpz_tdiv_q(zq.get(), za.get(), zm.get());
      CHECK(bigint_cmp(q, from_mpz(zq, w)) == 0);
      CHECK(rem == bigint_mod_word(a, m, w));

      BigInt mw = bigint_mul_word(a, m & wmask, w);
      Mpz zmw;
      mpz_mul(zmw.get(), za.get(), zm.get());
      CHECK(bigint_cmp(mw, from_mpz(zmw, w)) == 0);

      const int sh = static_cast<int>(rng.below(130));
      Mpz zl, zr;
      mpz_mul_2exp(zl.get(), za.get(), sh);
      mpz_tdiv_q_2exp(zr.get(), za.get(), sh);
      CHECK(bigint_cmp(bigint_shl(a, sh, w), from_mpz(zl, w)) == 0);
      CHECK(bigint_cmp(bigint_shr(a, sh, w), from_mpz(zr, w)) == 0);

      CHECK(bigint_bit_length(a, w) ==
            (mpz_sgn(za.get()) ? static_cast<int>(mpz_sizeinbase(za.get(), 2))
                               : 0));
      const int bit = static_cast<int>(rng.below(200));
      CHECK(bigint_bit(a, bit, w) == mpz_tstbit(za.get(), bit));
    }
  }
}

TEST_CASE("bigint hex roundtrip") {
  Rng rng(17);
  for (WordSize w : {WordSize::w64, WordSize::w32}) {
    for (int t = 0; t < 100; ++t) {
      BigInt a = random_bigint(rng, 1 + static_cast<int>(rng.below(20)), w);
      bigint_trim(a);
      const std::string h = bigint_to_hex(a, w);
      CHECK(bigint_cmp(bigint_from_hex(h, w), a) == 0);
      CHECK(h == mpz_hex(to_mpz(a, w)));
    }
  }
}

TEST_CASE("bigint pow2 and u64 conversions") {
  for (WordSize w : {WordSize::w64, WordSize::w32}) {
    CHECK(bigint_to_u64(bigint_from_u64(12345, w), w) == 12345);
    for (int bits : {0, 1, 31, 32, 63, 64, 65, 120}) {
      const BigInt p = bigint_pow2(bits, w);
      CHECK(bigint_bit_length(p, w) == bits + 1);
      CHECK(bigint_bit(p, bits, w) == 1);
    }
  }
}
