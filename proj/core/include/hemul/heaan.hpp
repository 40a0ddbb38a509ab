// Approximate-arithmetic HE scheme layer: encode/decode, key generation,
// encrypt/decrypt, homomorphic add, and the two-region multiplication with
// key switching and rescaling.
//
// Conventions: decrypt(c) = c.bx + c.ax * sk mod q. The public key satisfies
// pk.bx = -(pk.ax * sk) + e mod Q, the evaluation key
// evk.bx = -(evk.ax * sk) + e + Q * sk^2 mod Q^2. Key generation, encryption
// and decryption run through a ternary-shift multiplier rather than the
// CRT/NTT pipeline, so the pipeline is cross-checked by an independent path.

#pragma once

#include <complex>
#include <list>
#include <memory>
#include <vector>

#include "hemul/counters.hpp"
#include "hemul/params.hpp"
#include "hemul/poly.hpp"
#include "hemul/polymul.hpp"
#include "hemul/rng.hpp"
#include "hemul/thread_pool.hpp"

namespace hemul {

struct Message {
  std::vector<std::complex<double>> slots;
};

struct Plaintext {
  BigPoly poly;
  int log_q = 0;
  int log_delta = 0;
  int n_slots = 0;
};

struct Ciphertext {
  BigPoly ax, bx;
  int log_q = 0;
  int n_slots = 0;
};

struct SecretKey {
  std::vector<int> s;  // ternary coefficients
};

struct PublicKey {
  BigPoly ax, bx;  // mod Q
};

struct EvalKey {
  BigPoly ax, bx;  // mod Q^2
};

struct KeySet {
  SecretKey sk;
  PublicKey pk;
  EvalKey evk;
};

struct SchemeOptions {
  AccumStrategy strategy;
  NttOptions ntt;
  bool icrt_loop_reordered = true;
  // compute the cross term as ax1*bx2 + ax2*bx1 (four region-1 products)
  // instead of the (ax+bx) trick, for cross-checking
  bool four_products = false;
  int hamming_weight = 64;
};

class Scheme {
 public:
  explicit Scheme(const Params& params, ThreadPool* pool = nullptr);
  ~Scheme();

  const Params& params() const { return params_; }
  SchemeOptions& options() { return opts_; }
  void set_pool(ThreadPool* pool) { pool_ = pool; }

  Plaintext encode(const Message& m) const;
  Message decode(const Plaintext& t) const;

  KeySet keygen(Rng& rng) const;
  Ciphertext encrypt(const Plaintext& t, const PublicKey& pk, Rng& rng) const;
  Plaintext decrypt(const Ciphertext& c, const SecretKey& sk) const;

  Ciphertext he_add(const Ciphertext& c1, const Ciphertext& c2) const;
  // three region-1 products, two region-2 evk products, shift, rescale;
  // output modulus is log_q - log_p
  Ciphertext he_mul(const Ciphertext& c1, const Ciphertext& c2,
                    const EvalKey& evk);
  Ciphertext rescale(const Ciphertext& c) const;

  // negacyclic a * t for ternary t, mod 2^a.log_q (independent oracle path)
  BigPoly mul_by_ternary(const BigPoly& a, const std::vector<int>& t) const;

  // builds (or fetches) the per-modulus tables; exposed so benchmarks can
  // pay the setup cost outside the timed region
  void warm_level(int log_q, const EvalKey* evk);

  StageCounters counters;
  StageTimers timers;

 private:
  struct Level;
  Level& level(int log_q, const EvalKey* evk);

  Params params_;
  SchemeOptions opts_;
  ThreadPool* pool_ = nullptr;
  std::list<std::unique_ptr<Level>> cache_;  // most recent first, capacity 2
};

}  // namespace hemul
