#include <set>

#include "doctest.h"
#include "gmp_oracle.hpp"
#include "hemul/params.hpp"
#include "hemul/rng.hpp"

using namespace hemul;
using namespace hemul::test;

TEST_CASE("primality test matches gmp") {
  Rng rng(5);
  for (int t = 0; t < 2000; ++t) {
    const uint64_t n = rng.next() >> (t % 32);
    Mpz z(n);
    const bool gmp_prime = mpz_probab_prime_p(z.get(), 40) > 0;
    CHECK(is_prime_u64(n) == gmp_prime);
  }
  for (uint64_t n = 0; n < 2000; ++n) {
    Mpz z(n);
    CHECK(is_prime_u64(n) == (mpz_probab_prime_p(z.get(), 40) > 0));
  }
}

TEST_CASE("generated primes: range, congruence, distinctness, roots") {
  for (WordSize w : {WordSize::w64, WordSize::w32}) {
    const int log_n = 10;
    const PrimeSet ps = generate_primes(12, log_n, w);
    const uint64_t lo = w == WordSize::w64 ? (uint64_t{1} << 57)
                                           : (uint64_t{1} << 27);
    const uint64_t hi = w == WordSize::w64 ? (uint64_t{1} << 60)
                                           : (uint64_t{1} << 30);
    std::set<uint64_t> seen;
    Mpz product_oracle(1);
    for (size_t j = 0; j < ps.primes.size(); ++j) {
      const uint64_t p = ps.primes[j];
      CHECK(p > lo);
      CHECK(p < hi);
      CHECK(p % ps.two_n == 1);
      CHECK(is_prime_u64(p));
      CHECK(seen.insert(p).second);
      // psi is a primitive 2n-th root: psi^n = -1
      const uint64_t psi = ps.roots[j];
      CHECK(powmod_u64(psi, ps.two_n / 2, p) == p - 1);
      CHECK(powmod_u64(psi, ps.two_n, p) == 1);
      Mpz zp(p);
      mpz_mul(product_oracle.get(), product_oracle.get(), zp.get());
    }
    CHECK(mpz_equal(to_mpz(ps.product, w), product_oracle));
  }
}

TEST_CASE("prime counts for the reference parameter set") {
  // logq = logQ = 1200, logN = 16
  CHECK(region1_prime_count(1200, 16, WordSize::w64) == 42);
  CHECK(region2_prime_count(1200, 1200, 16, WordSize::w64) == 63);
  CHECK(region1_prime_count(1200, 16, WordSize::w32) == 90);
  CHECK(region2_prime_count(1200, 1200, 16, WordSize::w32) == 134);
}

TEST_CASE("ring degree table and derived parameters") {
  CHECK(ring_log_n_for(300) == 14);
  CHECK(ring_log_n_for(600) == 15);
  CHECK(ring_log_n_for(1200) == 16);
  CHECK(ring_log_n_for(2400) == 17);
  CHECK_THROWS(ring_log_n_for(2401));

  const Params p = make_params(30, 40, WordSize::w64, 0);
  CHECK(p.log_q_max == 1200);
  CHECK(p.log_n == 16);
  CHECK(p.n == 65536);
  CHECK(p.log_delta == 30);

  const Params small = make_params(30, 4, WordSize::w64, 10);
  CHECK(small.n == 1024);
}

TEST_CASE("crt table powers of beta match gmp") {
  for (WordSize w : {WordSize::w64, WordSize::w32}) {
    const PrimeSet ps = generate_primes(4, 8, w);
    const int log_q = 200;
    const CrtTables ct = make_crt_tables(ps, log_q);
    const int lb = log_beta(w);
    CHECK(ct.q_limbs == (log_q + lb - 1) / lb);
    for (int j = 0; j < ct.np; ++j) {
      Mpz zp(ps.primes[j]);
      for (int k = 0; k < ct.q_limbs; ++k) {
        Mpz want, beta(1);
        mpz_mul_2exp(beta.get(), beta.get(), static_cast<size_t>(lb) * k);
        mpz_mod(want.get(), beta.get(), zp.get());
        CHECK(ct.pow_beta[static_cast<size_t>(j) * ct.q_limbs + k].value ==
              mpz_get_ui(want.get()));
      }
    }
  }
}

TEST_CASE("icrt tables: hat-p inverses and centered-lift constants") {
  for (WordSize w : {WordSize::w64, WordSize::w32}) {
    const PrimeSet ps = generate_primes(5, 8, w);
    const BigInt target = bigint_pow2(120, w);
    const IcrtTables t = make_icrt_tables(ps, target, w);
    const Mpz zP = to_mpz(ps.product, w);
    for (int j = 0; j < t.np; ++j) {
      Mpz zp(ps.primes[j]);
      Mpz hat, inv;
      mpz_divexact_ui(hat.get(), zP.get(), ps.primes[j]);
      mpz_invert(inv.get(), hat.get(), zp.get());
      CHECK(t.inv_p[j].value == mpz_get_ui(inv.get()));
      // stored limbs of P/p_j
      BigInt hat_limbs(t.p_div_p.begin() + static_cast<size_t>(j) * t.p_limbs,
                       t.p_div_p.begin() +
                           static_cast<size_t>(j + 1) * t.p_limbs);
      CHECK(mpz_equal(to_mpz(hat_limbs, w), hat));
    }
    // half_p and neg_p_mod
    Mpz half;
    mpz_tdiv_q_2exp(half.get(), zP.get(), 1);
    CHECK(mpz_equal(to_mpz(t.half_p, w), half));
    Mpz negp, ztarget = to_mpz(target, w);
    mpz_neg(negp.get(), zP.get());
    mpz_mod(negp.get(), negp.get(), ztarget.get());
    CHECK(mpz_equal(to_mpz(t.neg_p_mod, w), negp));
    CHECK(t.target_pow2);
    CHECK(t.target_log2 == 120);
  }
}
