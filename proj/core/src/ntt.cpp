#include "hemul/ntt.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace hemul {

namespace {

// Cooley-Tukey butterfly on (a, b) with twiddle w.
template <int LB>
void ct_butterfly(uint64_t& a, uint64_t& b, ShoupPair w, uint64_t p, bool lazy,
                  bool approx) {
  if (lazy) {
    // values live in [0, 4p); a is folded to [0, 2p), the product lands in
    // [0, 2p), and both outputs are again below 4p
    uint64_t u = a;
    if (u >= 2 * p) u -= 2 * p;
    uint64_t v = approx ? shoup_modmul_approx_t<LB>(b, w, p)
                        : shoup_modmul_lazy_t<LB>(b, w, p);
    if (approx && v >= 2 * p) v -= 2 * p;
    a = u + v;
    b = u + 2 * p - v;
  } else {
    const uint64_t u = a;
    const uint64_t v = approx
                           ? reduce_4p(shoup_modmul_approx_t<LB>(b, w, p), p)
                           : shoup_modmul_t<LB>(b, w, p);
    a = add_mod(u, v, p);
    b = sub_mod(u, v, p);
  }
}

// Gentleman-Sande butterfly.
template <int LB>
void gs_butterfly(uint64_t& a, uint64_t& b, ShoupPair w, uint64_t p, bool lazy,
                  bool approx) {
  if (lazy) {
    // values live in [0, 2p)
    const uint64_t u = a, v = b;
    uint64_t s = u + v;
    if (s >= 2 * p) s -= 2 * p;
    const uint64_t d = u + 2 * p - v;
    uint64_t m = approx ? shoup_modmul_approx_t<LB>(d, w, p)
                        : shoup_modmul_lazy_t<LB>(d, w, p);
    if (approx && m >= 2 * p) m -= 2 * p;
    a = s;
    b = m;
  } else {
    const uint64_t u = a, v = b;
    const uint64_t d = sub_mod(u, v, p);
    a = add_mod(u, v, p);
    b = approx ? reduce_4p(shoup_modmul_approx_t<LB>(d, w, p), p)
               : shoup_modmul_t<LB>(d, w, p);
  }
}

template <int LB>
void forward_row(uint64_t* x, const ShoupPair* W, int log_n, uint64_t p,
                 const NttOptions& opt) {
  const int n = 1 << log_n;
  uint64_t buf[32];
  int st0 = 0;
  while (st0 < log_n) {
    const int s = std::min(opt.radix_log, log_n - st0);
    const int K = 1 << s;
    const int m0 = 1 << st0;
    const int blk = n >> st0;
    const int t_last = n >> (st0 + s);
    for (int g = 0; g < m0; ++g) {
      uint64_t* base = x + static_cast<size_t>(g) * blk;
      for (int r = 0; r < t_last; ++r) {
        for (int e = 0; e < K; ++e) buf[e] = base[r + e * t_last];
        for (int l = 0; l < s; ++l) {
          const int half = 1 << (s - l - 1);
          for (int h = 0; h < (1 << l); ++h) {
            const ShoupPair w = W[(m0 << l) + (g << l) + h];
            const int b0 = h << (s - l);
            for (int u = 0; u < half; ++u)
              ct_butterfly<LB>(buf[b0 + u], buf[b0 + u + half], w, p,
                               opt.lazy, opt.approx);
          }
        }
        for (int e = 0; e < K; ++e) base[r + e * t_last] = buf[e];
      }
    }
    st0 += s;
  }
  if (opt.lazy) {
    for (int i = 0; i < n; ++i) x[i] = reduce_4p(x[i], p);
  }
}

template <int LB>
void inverse_row(uint64_t* x, const ShoupPair* iW, ShoupPair n_inv, int log_n,
                 uint64_t p, const NttOptions& opt) {
  const int n = 1 << log_n;
  uint64_t buf[32];
  int st_hi = log_n;
  while (st_hi > 0) {
    const int s = std::min(opt.radix_log, st_hi);
    const int st0 = st_hi - s;
    const int K = 1 << s;
    const int m0 = 1 << st0;
    const int blk = n >> st0;
    const int t_last = n >> (st0 + s);
    for (int g = 0; g < m0; ++g) {
      uint64_t* base = x + static_cast<size_t>(g) * blk;
      for (int r = 0; r < t_last; ++r) {
        for (int e = 0; e < K; ++e) buf[e] = base[r + e * t_last];
        for (int l = s - 1; l >= 0; --l) {
          const int half = 1 << (s - l - 1);
          for (int h = 0; h < (1 << l); ++h) {
            const ShoupPair w = iW[(m0 << l) + (g << l) + h];
            const int b0 = h << (s - l);
            for (int u = 0; u < half; ++u)
              gs_butterfly<LB>(buf[b0 + u], buf[b0 + u + half], w, p,
                               opt.lazy, opt.approx);
          }
        }
        for (int e = 0; e < K; ++e) base[r + e * t_last] = buf[e];
      }
    }
    st_hi = st0;
  }
  for (int i = 0; i < n; ++i) {
    if (opt.lazy) {
      uint64_t v = shoup_modmul_lazy_t<LB>(x[i], n_inv, p);
      x[i] = v >= p ? v - p : v;
    } else {
      x[i] = opt.approx
                 ? reduce_4p(shoup_modmul_approx_t<LB>(x[i], n_inv, p), p)
                 : shoup_modmul_t<LB>(x[i], n_inv, p);
    }
  }
}

void check_opts(const RnsMatrix& m, const NttTables& t, const NttOptions& o) {
  if (m.layout != Layout::prime_major)
    throw std::invalid_argument("transforms expect prime-major layout");
  if (m.n != t.n) throw std::invalid_argument("size mismatch with tables");
  if (o.radix_log < 1 || o.radix_log > 5)
    throw std::invalid_argument("radix_log must be in [1, 5]");
}

}  // namespace

int ntt_memory_passes(int log_n, int radix_log) {
  return (log_n + radix_log - 1) / radix_log;
}

void ntt_forward(RnsMatrix& m, const PrimeSet& ps, const NttTables& t,
                 const NttOptions& opt, ThreadPool* pool, StageCounters* cnt,
                 StageTimers* tim) {
  check_opts(m, t, opt);
  ScopedStageTimer st(tim, Stage::ntt);
  pool_for(pool, m.np, [&](int64_t j0, int64_t j1) {
    for (int j = static_cast<int>(j0); j < j1; ++j) {
      uint64_t* row = &m.data[static_cast<size_t>(j) * m.n];
      const ShoupPair* W = &t.tw[static_cast<size_t>(j) * t.n];
      if (ps.word == WordSize::w64)
        forward_row<64>(row, W, t.log_n, ps.primes[j], opt);
      else
        forward_row<32>(row, W, t.log_n, ps.primes[j], opt);
    }
  });
  if (cnt) {
    auto& c = (*cnt)[Stage::ntt];
    const uint64_t bf = static_cast<uint64_t>(m.np) * (m.n / 2) * t.log_n;
    c.modmul += bf;
    c.addsub += 2 * bf;
  }
}

void ntt_inverse(RnsMatrix& m, const PrimeSet& ps, const NttTables& t,
                 const NttOptions& opt, ThreadPool* pool, StageCounters* cnt,
                 StageTimers* tim) {
  check_opts(m, t, opt);
  ScopedStageTimer st(tim, Stage::intt);
  pool_for(pool, m.np, [&](int64_t j0, int64_t j1) {
    for (int j = static_cast<int>(j0); j < j1; ++j) {
      uint64_t* row = &m.data[static_cast<size_t>(j) * m.n];
      const ShoupPair* W = &t.itw[static_cast<size_t>(j) * t.n];
      if (ps.word == WordSize::w64)
        inverse_row<64>(row, W, t.n_inv[j], t.log_n, ps.primes[j], opt);
      else
        inverse_row<32>(row, W, t.n_inv[j], t.log_n, ps.primes[j], opt);
    }
  });
  if (cnt) {
    auto& c = (*cnt)[Stage::intt];
    const uint64_t bf = static_cast<uint64_t>(m.np) * (m.n / 2) * t.log_n;
    c.modmul += bf + static_cast<uint64_t>(m.np) * m.n;
    c.addsub += 2 * bf;
  }
}

}  // namespace hemul
