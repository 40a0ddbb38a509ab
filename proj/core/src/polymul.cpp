#include "hemul/polymul.hpp"

#include <stdexcept>

namespace hemul {

RnsForm pm_prepare(const BigPoly& a, const PmContext& ctx) {
  // the conversion emits coefficient-major residues; the transforms want
  // each prime's row contiguous, so transpose between the two stages
  RnsForm f;
  f.m = crt_forward(a, *ctx.ps, *ctx.crt, ctx.strategy, Layout::coeff_major,
                    ctx.pool, ctx.counters, ctx.timers);
  {
    ScopedStageTimer st(ctx.timers, Stage::extra);
    rns_transpose(f.m);
  }
  ntt_forward(f.m, *ctx.ps, *ctx.ntt, ctx.ntt_opt, ctx.pool, ctx.counters,
              ctx.timers);
  return f;
}

RnsMatrix pm_pointwise(const RnsForm& a, const RnsForm& b,
                       const PmContext& ctx) {
  RnsMatrix r;
  rns_pointwise_mul(r, a.m, b.m, *ctx.ps, ctx.pool, ctx.counters, ctx.timers);
  return r;
}

BigPoly pm_finish(RnsMatrix prod, const PmContext& ctx) {
  ntt_inverse(prod, *ctx.ps, *ctx.ntt, ctx.ntt_opt, ctx.pool, ctx.counters,
              ctx.timers);
  return ctx.icrt_loop_reordered
             ? icrt_reordered(prod, *ctx.ps, *ctx.icrt, ctx.pool,
                              ctx.counters, ctx.timers)
             : icrt_naive(prod, *ctx.ps, *ctx.icrt, ctx.pool, ctx.counters,
                          ctx.timers);
}

BigPoly poly_mul(const BigPoly& a, const BigPoly& b, const PmContext& ctx) {
  const RnsForm fa = pm_prepare(a, ctx);
  const RnsForm fb = pm_prepare(b, ctx);
  return pm_finish(pm_pointwise(fa, fb, ctx), ctx);
}

BigPoly schoolbook_negacyclic(const BigPoly& a, const BigPoly& b,
                              const BigInt& modulus, WordSize w) {
  if (a.n > 256)
    throw std::invalid_argument("schoolbook reference capped at n = 256");
  const int n = a.n;
  // accumulate positive and wrapped (negated) contributions separately,
  // reduce once at the end
  std::vector<BigInt> pos(n), neg(n);
  for (int i = 0; i < n; ++i) {
    const BigInt ai = poly_get(a, i);
    if (bigint_is_zero(ai)) continue;
    for (int j = 0; j < n; ++j) {
      const BigInt bj = poly_get(b, j);
      if (bigint_is_zero(bj)) continue;
      const BigInt m = bigint_mul(ai, bj, w);
      BigInt& acc = i + j < n ? pos[i + j] : neg[i + j - n];
      BigInt s;
      const uint64_t c = bigint_add(s, acc, m, w);
      if (c) s.push_back(c);
      acc = std::move(s);
    }
  }
  int out_bits = bigint_bit_length(modulus, w);
  // a power-of-two modulus 2^k holds residues of k bits, not k+1
  if (bigint_cmp(modulus, bigint_pow2(out_bits - 1, w)) == 0) --out_bits;
  BigPoly r = make_poly(n, out_bits ? out_bits : 1, w);
  for (int i = 0; i < n; ++i) {
    BigInt p = bigint_mod(pos[i], modulus, w);
    BigInt q = bigint_mod(neg[i], modulus, w);
    // p - q mod modulus
    if (bigint_cmp(p, q) < 0) {
      BigInt t;
      const uint64_t c = bigint_add(t, p, modulus, w);
      if (c) t.push_back(c);
      p = std::move(t);
    }
    BigInt d;
    bigint_sub(d, p, q, w);
    poly_set(r, i, d);
  }
  return r;
}

}  // namespace hemul
