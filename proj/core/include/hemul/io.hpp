// File formats: parameters as JSON, keys and ciphertexts as a small binary
// container ("HEA1" magic, u32 header fields, then the two polynomials'
// limbs as little-endian words of the configured width).

#pragma once

#include <stdexcept>
#include <string>

#include "hemul/heaan.hpp"
#include "hemul/params.hpp"

namespace hemul {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void save_params(const std::string& path, const Params& p);
Params load_params(const std::string& path);

// generic two-polynomial container
struct PolyPair {
  BigPoly ax, bx;
  int log_q = 0;
  int n_slots = 0;
  WordSize word = WordSize::w64;
};
void save_poly_pair(const std::string& path, const PolyPair& pp);
PolyPair load_poly_pair(const std::string& path);

void save_ciphertext(const std::string& path, const Ciphertext& c);
Ciphertext load_ciphertext(const std::string& path);

// the secret key travels as its centered polynomial mod 2^log_q_max
void save_secret_key(const std::string& path, const SecretKey& sk,
                     const Params& p);
SecretKey load_secret_key(const std::string& path, const Params& p);

void save_public_key(const std::string& path, const PublicKey& pk,
                     const Params& p);
PublicKey load_public_key(const std::string& path);
void save_eval_key(const std::string& path, const EvalKey& evk,
                   const Params& p);
EvalKey load_eval_key(const std::string& path);

}  // namespace hemul
