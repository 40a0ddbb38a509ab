#include "hemul/params.hpp"

#include <stdexcept>

namespace hemul {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                     29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // these twelve bases are a deterministic witness set below 2^64
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                     29ull, 31ull, 37ull}) {
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

uint64_t find_root_of_unity(uint64_t p, uint64_t two_n) {
  for (uint64_t c = 2;; ++c) {
    const uint64_t psi = powmod_u64(c, (p - 1) / two_n, p);
    if (powmod_u64(psi, two_n / 2, p) == p - 1) return psi;
  }
}

int ring_log_n_for(int log_q) {
  if (log_q <= 300) return 14;
  if (log_q <= 600) return 15;
  if (log_q <= 1200) return 16;
  if (log_q <= 2400) return 17;
  throw std::invalid_argument("modulus too large for security table");
}

Params make_params(int log_p, int depth, WordSize w, int log_n_override) {
  Params pr;
  pr.word = w;
  pr.log_p = log_p;
  pr.log_delta = log_p;
  pr.depth = depth;
  pr.log_q_max = log_p * depth;
  pr.log_n = log_n_override ? log_n_override : ring_log_n_for(pr.log_q_max);
  pr.n = 1 << pr.log_n;
  return pr;
}

int prime_count(int bound_bits, int log_n, WordSize w) {
  const int min_bits = w == WordSize::w64 ? 58 : 27;
  return (bound_bits + log_n + min_bits - 1) / min_bits;
}

int region1_prime_count(int log_q, int log_n, WordSize w) {
  return prime_count(2 * log_q, log_n, w);
}

int region2_prime_count(int log_q, int log_q_max, int log_n, WordSize w) {
  return prime_count(log_q + 2 * log_q_max, log_n, w);
}

PrimeSet generate_primes(int count, int log_n, WordSize w) {
  PrimeSet ps;
  ps.word = w;
  ps.two_n = uint64_t{1} << (log_n + 1);
  const uint64_t hi =
      w == WordSize::w64 ? (uint64_t{1} << 60) : (uint64_t{1} << 30);
  const uint64_t lo =
      w == WordSize::w64 ? (uint64_t{1} << 57) : (uint64_t{1} << 27);
  ps.product = bigint_from_u64(1, w);
  // largest candidate = 1 mod 2n at or below hi, stepping down by 2n
  uint64_t c = hi - (hi - 1) % ps.two_n;
  for (; static_cast<int>(ps.primes.size()) < count; c -= ps.two_n) {
    if (c <= lo)
      throw std::runtime_error("prime range exhausted for this ring degree");
    if (!is_prime_u64(c)) continue;
    ps.primes.push_back(c);
    ps.roots.push_back(find_root_of_unity(c, ps.two_n));
    ps.pair_one.push_back(shoup_precompute(1, c, w));
    const int lb = log_beta(w);
    const uint64_t beta_mod =
        w == WordSize::w64 ? (~uint64_t{0} % c + 1) % c : (uint64_t{1} << lb) % c;
    ps.pair_beta.push_back(shoup_precompute(beta_mod, c, w));
    ps.pair_beta2.push_back(shoup_precompute(mulmod_u64(beta_mod, beta_mod, c), c, w));
    ps.product = bigint_mul(ps.product, bigint_from_u64(c, w), w);
  }
  return ps;
}

CrtTables make_crt_tables(const PrimeSet& ps, int log_q) {
  const WordSize w = ps.word;
  const int lb = log_beta(w);
  CrtTables t;
  t.np = static_cast<int>(ps.primes.size());
  t.q_limbs = (log_q + lb - 1) / lb;
  t.pow_beta.resize(static_cast<size_t>(t.np) * t.q_limbs);
  for (int j = 0; j < t.np; ++j) {
    const uint64_t p = ps.primes[j];
    const uint64_t beta_mod = ps.pair_beta[j].value;
    uint64_t pw = 1 % p;
    for (int k = 0; k < t.q_limbs; ++k) {
      t.pow_beta[static_cast<size_t>(j) * t.q_limbs + k] =
          shoup_precompute(pw, p, w);
      pw = mulmod_u64(pw, beta_mod, p);
    }
  }
  return t;
}

namespace {

// index with the low log_n bits reversed
uint32_t bit_reverse(uint32_t i, int log_n) {
  uint32_t r = 0;
  for (int b = 0; b < log_n; ++b) {
    r = (r << 1) | (i & 1);
    i >>= 1;
  }
  return r;
}

}  // namespace

NttTables make_ntt_tables(const PrimeSet& ps, int log_n) {
  const WordSize w = ps.word;
  NttTables t;
  t.log_n = log_n;
  t.n = 1 << log_n;
  const int np = static_cast<int>(ps.primes.size());
  t.tw.resize(static_cast<size_t>(np) * t.n);
  t.itw.resize(static_cast<size_t>(np) * t.n);
  t.n_inv.resize(np);
  for (int j = 0; j < np; ++j) {
    const uint64_t p = ps.primes[j];
    const uint64_t psi = ps.roots[j];
    const uint64_t psi_inv = powmod_u64(psi, p - 2, p);
    // powers in natural order first, then scatter into bit-reversed slots
    std::vector<uint64_t> pw(t.n), ipw(t.n);
    pw[0] = ipw[0] = 1;
    for (int i = 1; i < t.n; ++i) {
      pw[i] = mulmod_u64(pw[i - 1], psi, p);
      ipw[i] = mulmod_u64(ipw[i - 1], psi_inv, p);
    }
    for (int i = 0; i < t.n; ++i) {
      const uint32_t r = bit_reverse(static_cast<uint32_t>(i), log_n);
      t.tw[static_cast<size_t>(j) * t.n + i] = shoup_precompute(pw[r], p, w);
      t.itw[static_cast<size_t>(j) * t.n + i] = shoup_precompute(ipw[r], p, w);
    }
    t.n_inv[j] =
        shoup_precompute(powmod_u64(t.n % p, p - 2, p), p, w);
  }
  return t;
}

IcrtTables make_icrt_tables(const PrimeSet& ps, const BigInt& target,
                            WordSize w) {
  IcrtTables t;
  t.np = static_cast<int>(ps.primes.size());
  t.big_p = ps.product;
  t.p_limbs = static_cast<int>(t.big_p.size());
  t.inv_p.resize(t.np);
  t.p_div_p.assign(static_cast<size_t>(t.np) * t.p_limbs, 0);
  for (int j = 0; j < t.np; ++j) {
    const uint64_t p = ps.primes[j];
    BigInt hat = bigint_div_word(t.big_p, p, nullptr, w);
    hat.resize(t.p_limbs, 0);
    for (int k = 0; k < t.p_limbs; ++k)
      t.p_div_p[static_cast<size_t>(j) * t.p_limbs + k] = hat[k];
    const uint64_t hat_mod = bigint_mod_word(hat, p, w);
    t.inv_p[j] = shoup_precompute(powmod_u64(hat_mod, p - 2, p), p, w);
  }
  t.p_div_p_t.resize(t.p_div_p.size());
  for (int j = 0; j < t.np; ++j)
    for (int k = 0; k < t.p_limbs; ++k)
      t.p_div_p_t[static_cast<size_t>(k) * t.np + j] =
          t.p_div_p[static_cast<size_t>(j) * t.p_limbs + k];
  t.p_multiples.resize(t.np + 1);
  t.p_multiples[0] = {};
  for (int k = 1; k <= t.np; ++k) {
    uint64_t carry =
        bigint_add(t.p_multiples[k], t.p_multiples[k - 1], t.big_p, w);
    if (carry) t.p_multiples[k].push_back(carry);
  }
  t.half_p = bigint_shr(t.big_p, 1, w);
  t.target = target;
  {
    BigInt pm = bigint_mod(t.big_p, target, w);
    if (bigint_is_zero(pm)) {
      t.neg_p_mod = {};
    } else {
      t.neg_p_mod.clear();
      bigint_sub(t.neg_p_mod, target, pm, w);
    }
  }
  const int bl = bigint_bit_length(target, w);
  BigInt pow2 = bigint_pow2(bl - 1, w);
  t.target_pow2 = bl > 0 && bigint_cmp(target, pow2) == 0;
  t.target_log2 = t.target_pow2 ? bl - 1 : 0;
  // two-word accumulation is safe iff np * (max_p - 1) * (beta - 1) < beta^2
  const uint64_t max_p = ps.primes.empty() ? 0 : ps.primes.front();
  if (w == WordSize::w32) {
    const unsigned __int128 worst = static_cast<unsigned __int128>(t.np) *
                                    (max_p - 1) * ((uint64_t{1} << 32) - 1);
    t.accum_words = worst < (static_cast<unsigned __int128>(1) << 64) ? 2 : 3;
  } else {
    // np*(p-1) < 2^64 implies np*(p-1)*(beta-1) < 2^128
    const unsigned __int128 t128 =
        static_cast<unsigned __int128>(t.np) * (max_p - 1);
    t.accum_words = (t128 >> 64) == 0 ? 2 : 3;
  }
  return t;
}

}  // namespace hemul
