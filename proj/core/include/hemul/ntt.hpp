// Negacyclic number-theoretic transforms over each RNS prime.
//
// Forward: Cooley-Tukey, natural order in, bit-reversed out; entry i of the
// result is the evaluation at psi^(2*rev(i)+1). Inverse: Gentleman-Sande,
// bit-reversed in, natural out, with the final n^-1 scaling folded in.
//
// radix_log selects how many radix-2 stages are fused per memory pass
// (1 -> radix-2 ... 5 -> radix-32); every radix produces bit-identical
// output because the same butterflies run in the same stage order, only the
// load/store pattern changes. The lazy option keeps intermediate values in
// [0, 4p) and canonicalizes once at the end; approx uses the cheaper
// truncated-mulhi Shoup step whose remainder lands in [0, 4p).

#pragma once

#include "hemul/counters.hpp"
#include "hemul/params.hpp"
#include "hemul/rns.hpp"
#include "hemul/thread_pool.hpp"

namespace hemul {

struct NttOptions {
  int radix_log = 1;   // 1, 2, 4, or 5 (radix 2, 4, 16, 32)
  bool lazy = false;   // Harvey-style deferred reduction
  bool approx = false; // truncated-mulhi Shoup multiplication
};

// number of read/write sweeps over the coefficient array
int ntt_memory_passes(int log_n, int radix_log);

// In-place over all rows of a prime-major residue matrix; row j is
// transformed mod ps.primes[j].
void ntt_forward(RnsMatrix& m, const PrimeSet& ps, const NttTables& t,
                 const NttOptions& opt = {}, ThreadPool* pool = nullptr,
                 StageCounters* cnt = nullptr, StageTimers* tim = nullptr);
void ntt_inverse(RnsMatrix& m, const PrimeSet& ps, const NttTables& t,
                 const NttOptions& opt = {}, ThreadPool* pool = nullptr,
                 StageCounters* cnt = nullptr, StageTimers* tim = nullptr);

}  // namespace hemul
