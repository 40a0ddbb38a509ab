#include "hemul/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "json.hpp"

namespace hemul {

namespace {

constexpr char kMagic[4] = {'H', 'E', 'A', '1'};

void put_u32(std::ostream& os, uint32_t v) {
  char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8),
               static_cast<char>(v >> 16), static_cast<char>(v >> 24)};
  os.write(b, 4);
}

uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  if (!is) throw IoError("truncated file");
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) |
         (static_cast<uint32_t>(b[3]) << 24);
}

void write_poly(std::ostream& os, const BigPoly& a) {
  if (a.word == WordSize::w64) {
    for (uint64_t v : a.data)
      for (int k = 0; k < 8; ++k) os.put(static_cast<char>(v >> (8 * k)));
  } else {
    for (uint64_t v : a.data) put_u32(os, static_cast<uint32_t>(v));
  }
}

void read_poly(std::istream& is, BigPoly& a) {
  if (a.word == WordSize::w64) {
    for (auto& v : a.data) {
      unsigned char b[8];
      is.read(reinterpret_cast<char*>(b), 8);
      if (!is) throw IoError("truncated polynomial data");
      v = 0;
      for (int k = 0; k < 8; ++k) v |= static_cast<uint64_t>(b[k]) << (8 * k);
    }
  } else {
    for (auto& v : a.data) v = get_u32(is);
  }
}

}  // namespace

void save_params(const std::string& path, const Params& p) {
  nlohmann::json j;
  j["n"] = p.n;
  j["log_delta"] = p.log_delta;
  j["log_p"] = p.log_p;
  j["depth"] = p.depth;
  j["log_q_max"] = p.log_q_max;
  j["word_bits"] = log_beta(p.word);
  j["primes_region1"] =
      region1_prime_count(p.log_q_max, p.log_n, p.word);
  j["primes_region2"] =
      region2_prime_count(p.log_q_max, p.log_q_max, p.log_n, p.word);
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path);
  os << j.dump(2) << "\n";
}

Params load_params(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open: " + path);
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("bad parameter file: ") + e.what());
  }
  try {
    Params p;
    p.n = j.at("n").get<int>();
    p.log_n = 0;
    while ((1 << p.log_n) < p.n) ++p.log_n;
    if ((1 << p.log_n) != p.n) throw IoError("n must be a power of two");
    p.log_delta = j.at("log_delta").get<int>();
    p.log_p = j.at("log_p").get<int>();
    p.depth = j.at("depth").get<int>();
    p.log_q_max = j.at("log_q_max").get<int>();
    const int wb = j.at("word_bits").get<int>();
    if (wb != 32 && wb != 64) throw IoError("word_bits must be 32 or 64");
    p.word = wb == 64 ? WordSize::w64 : WordSize::w32;
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("bad parameter file: ") + e.what());
  }
}

void save_poly_pair(const std::string& path, const PolyPair& pp) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path);
  os.write(kMagic, 4);
  put_u32(os, static_cast<uint32_t>(log_beta(pp.word)));
  put_u32(os, static_cast<uint32_t>(pp.ax.n));
  put_u32(os, static_cast<uint32_t>(pp.log_q));
  put_u32(os, static_cast<uint32_t>(pp.n_slots));
  write_poly(os, pp.ax);
  write_poly(os, pp.bx);
  if (!os) throw IoError("write failed: " + path);
}

PolyPair load_poly_pair(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw IoError("bad magic: " + path);
  PolyPair pp;
  const uint32_t wb = get_u32(is);
  if (wb != 32 && wb != 64) throw IoError("bad word size field");
  pp.word = wb == 64 ? WordSize::w64 : WordSize::w32;
  const uint32_t n = get_u32(is);
  pp.log_q = static_cast<int>(get_u32(is));
  pp.n_slots = static_cast<int>(get_u32(is));
  if (n == 0 || (n & (n - 1)) != 0 || pp.log_q <= 0)
    throw IoError("bad header fields");
  pp.ax = make_poly(static_cast<int>(n), pp.log_q, pp.word);
  pp.bx = make_poly(static_cast<int>(n), pp.log_q, pp.word);
  read_poly(is, pp.ax);
  read_poly(is, pp.bx);
  return pp;
}

void save_ciphertext(const std::string& path, const Ciphertext& c) {
  save_poly_pair(path, {c.ax, c.bx, c.log_q, c.n_slots, c.ax.word});
}

Ciphertext load_ciphertext(const std::string& path) {
  PolyPair pp = load_poly_pair(path);
  Ciphertext c;
  c.ax = std::move(pp.ax);
  c.bx = std::move(pp.bx);
  c.log_q = pp.log_q;
  c.n_slots = pp.n_slots;
  return c;
}

void save_secret_key(const std::string& path, const SecretKey& sk,
                     const Params& p) {
  BigPoly sp = make_poly(p.n, p.log_q_max, p.word);
  const BigInt q = bigint_pow2(p.log_q_max, p.word);
  for (int i = 0; i < p.n; ++i) {
    if (sk.s[i] == 1) {
      poly_set(sp, i, BigInt{1});
    } else if (sk.s[i] == -1) {
      BigInt m;
      bigint_sub(m, q, BigInt{1}, p.word);
      poly_set(sp, i, m);
    }
  }
  save_poly_pair(path, {sp, make_poly(p.n, p.log_q_max, p.word), p.log_q_max,
                        0, p.word});
}

SecretKey load_secret_key(const std::string& path, const Params& p) {
  const PolyPair pp = load_poly_pair(path);
  SecretKey sk;
  sk.s.assign(pp.ax.n, 0);
  const BigInt q = bigint_pow2(pp.log_q, pp.word);
  BigInt minus_one;
  bigint_sub(minus_one, q, BigInt{1}, pp.word);
  for (int i = 0; i < pp.ax.n; ++i) {
    const BigInt c = poly_get(pp.ax, i);
    if (bigint_is_zero(c))
      sk.s[i] = 0;
    else if (bigint_cmp(c, BigInt{1}) == 0)
      sk.s[i] = 1;
    else if (bigint_cmp(c, minus_one) == 0)
      sk.s[i] = -1;
    else
      throw IoError("secret key coefficients must be ternary");
  }
  (void)p;
  return sk;
}

void save_public_key(const std::string& path, const PublicKey& pk,
                     const Params& p) {
  save_poly_pair(path, {pk.ax, pk.bx, p.log_q_max, 0, p.word});
}

PublicKey load_public_key(const std::string& path) {
  PolyPair pp = load_poly_pair(path);
  return PublicKey{std::move(pp.ax), std::move(pp.bx)};
}

void save_eval_key(const std::string& path, const EvalKey& evk,
                   const Params& p) {
  save_poly_pair(path, {evk.ax, evk.bx, 2 * p.log_q_max, 0, p.word});
}

EvalKey load_eval_key(const std::string& path) {
  PolyPair pp = load_poly_pair(path);
  return EvalKey{std::move(pp.ax), std::move(pp.bx)};
}

}  // namespace hemul
