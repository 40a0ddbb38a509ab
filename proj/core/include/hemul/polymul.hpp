// Big-coefficient negacyclic polynomial multiplication via the
// CRT -> NTT -> pointwise -> iNTT -> iCRT pipeline, plus a schoolbook
// reference for small rings.

#pragma once

#include "hemul/counters.hpp"
#include "hemul/ntt.hpp"
#include "hemul/params.hpp"
#include "hemul/poly.hpp"
#include "hemul/rns.hpp"
#include "hemul/thread_pool.hpp"

namespace hemul {

// Everything one multiplication needs: tables, kernel knobs, optional pool
// and instrumentation sinks. The tables must all be built from the same
// prime set.
struct PmContext {
  const PrimeSet* ps = nullptr;
  const CrtTables* crt = nullptr;
  const NttTables* ntt = nullptr;
  const IcrtTables* icrt = nullptr;
  AccumStrategy strategy;
  NttOptions ntt_opt;
  bool icrt_loop_reordered = true;
  ThreadPool* pool = nullptr;
  StageCounters* counters = nullptr;
  StageTimers* timers = nullptr;
};

// An operand carried through CRT + forward NTT, ready for pointwise
// products. Caching these lets repeated multiplications by the same
// polynomial (e.g. an evaluation key) skip the two forward transforms.
struct RnsForm {
  RnsMatrix m;  // prime-major, evaluation domain
};

RnsForm pm_prepare(const BigPoly& a, const PmContext& ctx);
// pointwise product of two prepared operands
RnsMatrix pm_pointwise(const RnsForm& a, const RnsForm& b,
                       const PmContext& ctx);
// iNTT + iCRT back to coefficients mod the context's target modulus
BigPoly pm_finish(RnsMatrix prod, const PmContext& ctx);

// prepare-multiply-finish in one call
BigPoly poly_mul(const BigPoly& a, const BigPoly& b, const PmContext& ctx);

// Quadratic reference multiplication in Z_mod[X]/(X^n + 1); refuses rings
// beyond 256 coefficients, it exists only to cross-check the pipeline.
BigPoly schoolbook_negacyclic(const BigPoly& a, const BigPoly& b,
                              const BigInt& modulus, WordSize w);

}  // namespace hemul
