#include "hemul/rns.hpp"

#include <cassert>
#include <stdexcept>

namespace hemul {

namespace {

using u128 = unsigned __int128;

constexpr u128 kU128Max = ~static_cast<u128>(0);

template <int LB>
uint64_t reduce2(uint64_t hi, uint64_t lo, uint64_t p, ShoupPair s1,
                 ShoupPair sb) {
  uint64_t r = shoup_modmul_t<LB>(lo, s1, p) + shoup_modmul_t<LB>(hi, sb, p);
  return r >= p ? r - p : r;
}

template <int LB>
uint64_t reduce3(uint64_t w2, uint64_t w1, uint64_t w0, uint64_t p,
                 ShoupPair s1, ShoupPair sb, ShoupPair sb2) {
  uint64_t r = shoup_modmul_t<LB>(w0, s1, p) + shoup_modmul_t<LB>(w1, sb, p) +
               shoup_modmul_t<LB>(w2, sb2, p);
  if (r >= 2 * p) r -= 2 * p;
  return r >= p ? r - p : r;
}

bool period_valid(int period, uint64_t p, WordSize w) {
  if (period < 1) return false;
  if (w == WordSize::w32) {
    const u128 beta = u128{1} << 32;
    const u128 worst = p + u128(period) * (beta - 1) * (p - 1);
    return worst < beta * beta;
  }
  // beta = 2^64: need p + period*(beta-1)*(p-1) < 2^128; valid exactly when
  // the left side fits in 128 bits without wrapping
  const u128 term = u128(~uint64_t{0}) * (p - 1);  // (beta-1)*(p-1)
  return term == 0 || u128(period) <= (kU128Max - p) / term;
}

template <int LB>
void crt_kernel(const BigPoly& a, const PrimeSet& ps, const CrtTables& ct,
                const AccumStrategy& strat, RnsMatrix& out, ThreadPool* pool) {
  const int n = a.n, np = ct.np, ql = ct.q_limbs;
  const int period = strat.period;
  pool_for(pool, np, [&](int64_t j0, int64_t j1) {
    for (int j = static_cast<int>(j0); j < j1; ++j) {
      const uint64_t p = ps.primes[j];
      const ShoupPair* tb = &ct.pow_beta[static_cast<size_t>(j) * ql];
      const ShoupPair s1 = ps.pair_one[j];
      const ShoupPair sb = ps.pair_beta[j];
      const ShoupPair sb2 = ps.pair_beta2[j];
      for (int i = 0; i < n; ++i) {
        const uint64_t* c = a.coeff(i);
        uint64_t r;
        if (strat.kind == AccumKind::three_word_adc) {
          if constexpr (LB == 64) {
            u128 acc = 0;
            uint64_t acc2 = 0;
            for (int k = 0; k < ql; ++k) {
              const u128 m = u128(c[k]) * tb[k].value;
              acc += m;
              if (acc < m) ++acc2;
            }
            r = reduce3<LB>(acc2, static_cast<uint64_t>(acc >> 64),
                            static_cast<uint64_t>(acc), p, s1, sb, sb2);
          } else {
            // 32-bit words: ql products of < 2^60 never overflow a u128
            u128 acc = 0;
            for (int k = 0; k < ql; ++k) acc += u128(c[k]) * tb[k].value;
            r = reduce3<LB>(static_cast<uint64_t>(acc >> 64),
                            static_cast<uint64_t>(acc >> 32) & WordOps<32>::kMask,
                            static_cast<uint64_t>(acc) & WordOps<32>::kMask, p,
                            s1, sb, sb2);
          }
        } else {
          if constexpr (LB == 64) {
            u128 acc = 0;
            for (int k = 0; k < ql; ++k) {
              acc += u128(c[k]) * tb[k].value;
              if ((k + 1) % period == 0 && k + 1 < ql) {
                acc = reduce2<LB>(static_cast<uint64_t>(acc >> 64),
                                  static_cast<uint64_t>(acc), p, s1, sb);
              }
            }
            r = reduce2<LB>(static_cast<uint64_t>(acc >> 64),
                            static_cast<uint64_t>(acc), p, s1, sb);
          } else {
            uint64_t acc = 0;
            for (int k = 0; k < ql; ++k) {
              acc += c[k] * tb[k].value;
              if ((k + 1) % period == 0 && k + 1 < ql) {
                acc = reduce2<LB>(acc >> 32, acc & WordOps<32>::kMask, p, s1,
                                  sb);
              }
            }
            r = reduce2<LB>(acc >> 32, acc & WordOps<32>::kMask, p, s1, sb);
          }
        }
        out.at(j, i) = r;
      }
    }
  });
}

template <int LB>
void pointwise_kernel(RnsMatrix& r, const RnsMatrix& a, const RnsMatrix& b,
                      const PrimeSet& ps, ThreadPool* pool) {
  const int n = a.n, np = a.np;
  pool_for(pool, np, [&](int64_t j0, int64_t j1) {
    for (int j = static_cast<int>(j0); j < j1; ++j) {
      const uint64_t p = ps.primes[j];
      const ShoupPair s1 = ps.pair_one[j];
      const ShoupPair sb = ps.pair_beta[j];
      for (int i = 0; i < n; ++i) {
        if constexpr (LB == 64) {
          const u128 m = u128(a.at(j, i)) * b.at(j, i);
          r.at(j, i) = reduce2<LB>(static_cast<uint64_t>(m >> 64),
                                   static_cast<uint64_t>(m), p, s1, sb);
        } else {
          const uint64_t m = a.at(j, i) * b.at(j, i);
          r.at(j, i) =
              reduce2<LB>(m >> 32, m & WordOps<32>::kMask, p, s1, sb);
        }
      }
    }
  });
}

BigInt mod_target(BigInt x, const IcrtTables& t, WordSize w) {
  if (t.target_pow2) {
    const int lb = log_beta(w);
    const int limbs = (t.target_log2 + lb - 1) / lb;
    if (static_cast<int>(x.size()) > limbs) x.resize(limbs);
    if (static_cast<int>(x.size()) == limbs) {
      const int rem = t.target_log2 - (limbs - 1) * lb;
      if (rem < lb) x[limbs - 1] &= (uint64_t{1} << rem) - 1;
    }
    bigint_trim(x);
    return x;
  }
  return bigint_mod(x, t.target, w);
}

// Binary-search fold below P, centered lift, then reduce mod the target.
BigInt icrt_tail(BigInt acc, const IcrtTables& t, WordSize w) {
  bigint_trim(acc);
  int lo = 0, hi = t.np;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (bigint_cmp(t.p_multiples[mid], acc) <= 0)
      lo = mid;
    else
      hi = mid - 1;
  }
  if (lo > 0) bigint_sub(acc, acc, t.p_multiples[lo], w);
  // residues above floor(P/2) encode the negative value acc - P; fix up the
  // target-modulus result by adding (-P mod target)
  const bool negative = bigint_cmp(acc, t.half_p) > 0;
  BigInt r = mod_target(std::move(acc), t, w);
  if (negative && !bigint_is_zero(t.neg_p_mod)) {
    uint64_t carry = bigint_add(r, r, t.neg_p_mod, w);
    if (carry) r.push_back(carry);
    r = mod_target(std::move(r), t, w);
  }
  return r;
}

int out_log_q(const IcrtTables& t, WordSize w) {
  return t.target_pow2 ? t.target_log2 : bigint_bit_length(t.target, w);
}

// temp[i*np + j] = x_{j,i} * (hatP_j^-1 mod p_j) mod p_j, coefficient-major
// so both inverse variants stream it contiguously.
template <int LB>
std::vector<uint64_t> icrt_temp(const RnsMatrix& m, const PrimeSet& ps,
                                const IcrtTables& t, ThreadPool* pool) {
  std::vector<uint64_t> temp(static_cast<size_t>(m.n) * t.np);
  pool_for(pool, m.n, [&](int64_t i0, int64_t i1) {
    for (int i = static_cast<int>(i0); i < i1; ++i) {
      for (int j = 0; j < t.np; ++j) {
        temp[static_cast<size_t>(i) * t.np + j] =
            shoup_modmul_t<LB>(m.at(j, i), t.inv_p[j], ps.primes[j]);
      }
    }
  });
  return temp;
}

template <int LB>
void icrt_naive_kernel(const std::vector<uint64_t>& temp, const IcrtTables& t,
                       BigPoly& r, ThreadPool* pool) {
  const int n = r.n, np = t.np, pl = t.p_limbs;
  const WordSize w = LB == 64 ? WordSize::w64 : WordSize::w32;
  pool_for(pool, n, [&](int64_t i0, int64_t i1) {
    BigInt acc;
    for (int i = static_cast<int>(i0); i < i1; ++i) {
      acc.assign(pl + 3, 0);
      const uint64_t* row = &temp[static_cast<size_t>(i) * np];
      for (int j = 0; j < np; ++j) {
        const uint64_t x = row[j];
        const uint64_t* hp = &t.p_div_p[static_cast<size_t>(j) * pl];
        uint64_t carry = 0;
        for (int k = 0; k < pl; ++k) {
          if constexpr (LB == 64) {
            const u128 m = u128(x) * hp[k] + acc[k] + carry;
            acc[k] = static_cast<uint64_t>(m);
            carry = static_cast<uint64_t>(m >> 64);
          } else {
            const uint64_t m = x * hp[k] + acc[k] + carry;
            acc[k] = m & WordOps<32>::kMask;
            carry = m >> 32;
          }
        }
        // carry < beta; the two guard limbs absorb all np of them
        int k = pl;
        while (carry) {
          const uint64_t s = acc[k] + carry;
          if constexpr (LB == 64) {
            carry = s < carry ? 1 : 0;
            acc[k++] = s;
          } else {
            carry = s >> 32;
            acc[k++] = s & WordOps<32>::kMask;
          }
        }
      }
      poly_set(r, i, icrt_tail(acc, t, w));
    }
  });
}

template <int LB>
void icrt_reordered_kernel(const std::vector<uint64_t>& temp,
                           const IcrtTables& t, BigPoly& r, ThreadPool* pool) {
  const int n = r.n, np = t.np, pl = t.p_limbs;
  const WordSize w = LB == 64 ? WordSize::w64 : WordSize::w32;
  pool_for(pool, n, [&](int64_t i0, int64_t i1) {
    BigInt acc;
    for (int i = static_cast<int>(i0); i < i1; ++i) {
      acc.assign(pl + 4, 0);
      const uint64_t* row = &temp[static_cast<size_t>(i) * np];
      for (int k = 0; k < pl; ++k) {
        const uint64_t* col = &t.p_div_p_t[static_cast<size_t>(k) * np];
        // short accumulator over all primes for limb position k
        uint64_t s0, s1, s2;
        if constexpr (LB == 64) {
          u128 s = 0;
          uint64_t hi = 0;
          for (int j = 0; j < np; ++j) {
            const u128 m = u128(row[j]) * col[j];
            s += m;
            if (s < m) ++hi;
          }
          s0 = static_cast<uint64_t>(s);
          s1 = static_cast<uint64_t>(s >> 64);
          s2 = hi;
        } else {
          u128 s = 0;
          for (int j = 0; j < np; ++j) s += u128(row[j]) * col[j];
          s0 = static_cast<uint64_t>(s) & WordOps<32>::kMask;
          s1 = static_cast<uint64_t>(s >> 32) & WordOps<32>::kMask;
          s2 = static_cast<uint64_t>(s >> 64);
        }
        // add (s2,s1,s0) into acc at offset k
        const uint64_t parts[3] = {s0, s1, s2};
        uint64_t carry = 0;
        for (int d = 0; d < 3 || carry; ++d) {
          const uint64_t add = d < 3 ? parts[d] : 0;
          if constexpr (LB == 64) {
            const uint64_t v = acc[k + d] + add;
            uint64_t c = v < add ? 1 : 0;
            const uint64_t v2 = v + carry;
            c += v2 < carry ? 1 : 0;
            acc[k + d] = v2;
            carry = c;
          } else {
            const uint64_t v = acc[k + d] + add + carry;
            acc[k + d] = v & WordOps<32>::kMask;
            carry = v >> 32;
          }
          if (d >= 2 && !carry) break;
        }
      }
      poly_set(r, i, icrt_tail(acc, t, w));
    }
  });
}

}  // namespace

RnsMatrix make_rns(int np, int n, Layout layout) {
  RnsMatrix m;
  m.np = np;
  m.n = n;
  m.layout = layout;
  m.data.assign(static_cast<size_t>(np) * n, 0);
  return m;
}

void rns_transpose(RnsMatrix& m) {
  RnsMatrix t = make_rns(
      m.np, m.n,
      m.layout == Layout::prime_major ? Layout::coeff_major
                                      : Layout::prime_major);
  for (int j = 0; j < m.np; ++j)
    for (int i = 0; i < m.n; ++i) t.at(j, i) = m.at(j, i);
  m = std::move(t);
}

bool accum_strategy_valid(const AccumStrategy& s, const PrimeSet& ps) {
  if (s.kind == AccumKind::three_word_adc) return true;
  for (uint64_t p : ps.primes)
    if (!period_valid(s.period, p, ps.word)) return false;
  return true;
}

int max_valid_period(const PrimeSet& ps) {
  int best = 0;
  for (int per = 1; per <= 64; ++per) {
    bool ok = true;
    for (uint64_t p : ps.primes) ok = ok && period_valid(per, p, ps.word);
    if (!ok) break;
    best = per;
  }
  return best;
}

RnsMatrix crt_forward(const BigPoly& a, const PrimeSet& ps,
                      const CrtTables& ct, const AccumStrategy& strat,
                      Layout out_layout, ThreadPool* pool, StageCounters* cnt,
                      StageTimers* tim) {
  if (strat.kind == AccumKind::periodic_mod && !accum_strategy_valid(strat, ps))
    throw std::invalid_argument("accumulation period too large for prime set");
  ScopedStageTimer st(tim, Stage::crt);
  // the kernel writes prime-major; a requested coefficient-major result is
  // produced by an explicit transposition pass afterwards
  RnsMatrix out = make_rns(ct.np, a.n, Layout::prime_major);
  if (a.word == WordSize::w64)
    crt_kernel<64>(a, ps, ct, strat, out, pool);
  else
    crt_kernel<32>(a, ps, ct, strat, out, pool);
  if (cnt) {
    const uint64_t cells = static_cast<uint64_t>(a.n) * ct.np;
    auto& c = (*cnt)[Stage::crt];
    c.mul += cells * ct.q_limbs;
    c.adc += cells * ct.q_limbs;
    const int reductions =
        strat.kind == AccumKind::three_word_adc
            ? 1
            : (ct.q_limbs + strat.period - 1) / strat.period;
    c.modmul += cells * reductions;
  }
  if (out_layout == Layout::coeff_major) rns_transpose(out);
  return out;
}

void rns_pointwise_mul(RnsMatrix& r, const RnsMatrix& a, const RnsMatrix& b,
                       const PrimeSet& ps, ThreadPool* pool,
                       StageCounters* cnt, StageTimers* tim) {
  assert(a.np == b.np && a.n == b.n);
  ScopedStageTimer st(tim, Stage::icrt);
  if (r.np != a.np || r.n != a.n) r = make_rns(a.np, a.n, a.layout);
  if (ps.word == WordSize::w64)
    pointwise_kernel<64>(r, a, b, ps, pool);
  else
    pointwise_kernel<32>(r, a, b, ps, pool);
  if (cnt) (*cnt)[Stage::icrt].modmul += static_cast<uint64_t>(a.n) * a.np;
}

BigPoly icrt_naive(const RnsMatrix& m, const PrimeSet& ps,
                   const IcrtTables& t, ThreadPool* pool, StageCounters* cnt,
                   StageTimers* tim) {
  ScopedStageTimer st(tim, Stage::icrt);
  BigPoly r = make_poly(m.n, out_log_q(t, ps.word), ps.word);
  if (ps.word == WordSize::w64) {
    auto temp = icrt_temp<64>(m, ps, t, pool);
    icrt_naive_kernel<64>(temp, t, r, pool);
  } else {
    auto temp = icrt_temp<32>(m, ps, t, pool);
    icrt_naive_kernel<32>(temp, t, r, pool);
  }
  if (cnt) {
    const uint64_t cells = static_cast<uint64_t>(m.n) * t.np;
    auto& c = (*cnt)[Stage::icrt];
    c.modmul += cells;
    c.mul += cells * t.p_limbs;
    c.adc += cells * t.p_limbs;
  }
  return r;
}

BigPoly icrt_reordered(const RnsMatrix& m, const PrimeSet& ps,
                       const IcrtTables& t, ThreadPool* pool,
                       StageCounters* cnt, StageTimers* tim) {
  ScopedStageTimer st(tim, Stage::icrt);
  BigPoly r = make_poly(m.n, out_log_q(t, ps.word), ps.word);
  if (ps.word == WordSize::w64) {
    auto temp = icrt_temp<64>(m, ps, t, pool);
    icrt_reordered_kernel<64>(temp, t, r, pool);
  } else {
    auto temp = icrt_temp<32>(m, ps, t, pool);
    icrt_reordered_kernel<32>(temp, t, r, pool);
  }
  if (cnt) {
    const uint64_t cells = static_cast<uint64_t>(m.n) * t.np;
    auto& c = (*cnt)[Stage::icrt];
    c.modmul += cells;
    c.mul += cells * t.p_limbs;
    c.adc += cells * t.p_limbs;
  }
  return r;
}

}  // namespace hemul
