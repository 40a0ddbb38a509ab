// Command-line front end: key/ciphertext file operations, an end-to-end
// multiply, the per-function benchmark, and cost-model sweeps.
//
// Exit codes: 0 success, 1 usage error, 2 state/modulus error (mismatched
// moduli, exhausted depth, refusing to overwrite), 3 format error (corrupt
// or truncated files).

#include <complex>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "hemul/bench.hpp"
#include "hemul/costmodel.hpp"
#include "hemul/heaan.hpp"
#include "hemul/io.hpp"
#include "hemul/rng.hpp"

namespace fs = std::filesystem;
using namespace hemul;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitState = 2;
constexpr int kExitFormat = 3;

struct StateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

uint64_t effective_seed(uint64_t flag_seed) {
  if (const char* env = std::getenv("HEAAN_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return flag_seed;
}

struct ParamFlags {
  int log_p = 30;
  int depth = 40;
  int word_bits = 64;
  int log_n_override = 0;

  void attach(CLI::App* app) {
    app->add_option("--log-p", log_p, "rescaling factor bits");
    app->add_option("--depth", depth, "multiplicative depth L");
    app->add_option("--word-bits", word_bits, "machine word size (32 or 64)")
        ->check(CLI::IsMember({32, 64}));
    app->add_option("--ring-degree", log_n_override,
                    "override log2 of the ring degree (testing)");
  }
  Params make() const {
    return make_params(log_p, depth,
                       word_bits == 64 ? WordSize::w64 : WordSize::w32,
                       log_n_override);
  }
};

std::vector<std::complex<double>> parse_values(const std::string& s) {
  std::vector<std::complex<double>> v;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) v.emplace_back(std::stod(tok), 0.0);
  return v;
}

void print_slots(const Message& m) {
  std::cout << "[";
  for (size_t i = 0; i < m.slots.size(); ++i) {
    if (i) std::cout << ",";
    std::cout << "[" << m.slots[i].real() << "," << m.slots[i].imag() << "]";
  }
  std::cout << "]\n";
}

int radix_to_log(int radix) {
  switch (radix) {
    case 2: return 1;
    case 4: return 2;
    case 16: return 4;
    case 32: return 5;
    default: throw CLI::ValidationError("--radix must be one of 2,4,16,32");
  }
}

int run(int argc, char** argv) {
  CLI::App app{"big-integer homomorphic multiplication toolkit"};
  app.require_subcommand(1);

  // keygen
  auto* kg = app.add_subcommand("keygen", "generate sk/pk/evk + params");
  ParamFlags kg_params;
  kg_params.attach(kg);
  std::string kg_dir = ".";
  uint64_t kg_seed = 1;
  bool kg_force = false;
  kg->add_option("--out-dir", kg_dir, "output directory");
  kg->add_option("--seed", kg_seed, "rng seed");
  kg->add_flag("--force", kg_force, "overwrite existing key files");

  // encrypt
  auto* enc = app.add_subcommand("encrypt", "encode + encrypt a message");
  std::string enc_params, enc_pk, enc_out, enc_values;
  int enc_slots = 8;
  uint64_t enc_seed = 2;
  enc->add_option("--params", enc_params)->required();
  enc->add_option("--pk", enc_pk)->required();
  enc->add_option("--out", enc_out)->required();
  enc->add_option("--values", enc_values,
                  "comma-separated real slot values (else random)");
  enc->add_option("--slots", enc_slots, "slot count for random messages");
  enc->add_option("--seed", enc_seed);

  // decrypt
  auto* dec = app.add_subcommand("decrypt", "decrypt + decode to slots");
  std::string dec_params, dec_sk, dec_ct;
  dec->add_option("--params", dec_params)->required();
  dec->add_option("--sk", dec_sk)->required();
  dec->add_option("--ct", dec_ct)->required();

  // mul
  auto* mul = app.add_subcommand("mul", "homomorphic multiplication");
  std::string mul_params, mul_ct1, mul_ct2, mul_evk, mul_out;
  mul->add_option("--params", mul_params)->required();
  mul->add_option("--ct1", mul_ct1)->required();
  mul->add_option("--ct2", mul_ct2)->required();
  mul->add_option("--evk", mul_evk)->required();
  mul->add_option("--out", mul_out)->required();

  // bench
  auto* ben = app.add_subcommand("bench", "timed HE multiplications");
  ParamFlags ben_params;
  ben_params.attach(ben);
  int ben_threads = static_cast<int>(std::thread::hardware_concurrency());
  int ben_radix = 2;
  int ben_reps = 32;
  int ben_period = 0;
  uint64_t ben_seed = 1;
  std::string ben_strategy = "three-word-adc";
  std::string ben_icrt = "reordered";
  std::string ben_shoup = "exact";
  std::string ben_format = "table";
  ben->add_option("--threads", ben_threads);
  ben->add_option("--radix", ben_radix)->check(CLI::IsMember({2, 4, 16, 32}));
  ben->add_option("--crt-strategy", ben_strategy)
      ->check(CLI::IsMember({"three-word-adc", "periodic-mod"}));
  ben->add_option("--crt-period", ben_period,
                  "accumulation period for periodic-mod (0 = max valid)");
  ben->add_option("--icrt", ben_icrt)
      ->check(CLI::IsMember({"naive", "reordered"}));
  ben->add_option("--shoup", ben_shoup)
      ->check(CLI::IsMember({"exact", "approx"}));
  ben->add_option("--reps", ben_reps)->check(CLI::PositiveNumber);
  ben->add_option("--seed", ben_seed);
  ben->add_option("--format", ben_format)
      ->check(CLI::IsMember({"table", "csv", "json"}));

  // cost
  auto* cost = app.add_subcommand("cost", "analytical cost-model sweeps");
  std::string cost_logQ_sweep, cost_logq_sweep, cost_format = "csv";
  int cost_log_q_max = 1200;
  int cost_word_bits = 64;
  cost->add_option("--logQ-sweep", cost_logQ_sweep,
                   "comma-separated fresh-modulus sizes");
  cost->add_option("--logq-sweep", cost_logq_sweep,
                   "start:stop:step working-modulus sweep");
  cost->add_option("--log-q-max", cost_log_q_max,
                   "fresh modulus for --logq-sweep");
  cost->add_option("--word-bits", cost_word_bits)
      ->check(CLI::IsMember({32, 64}));
  cost->add_option("--format", cost_format)
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (kg->parsed()) {
    const Params p = kg_params.make();
    const fs::path dir(kg_dir);
    if (!fs::exists(dir))
      throw IoError("output directory does not exist: " + kg_dir);
    const fs::path paths[] = {dir / "params.json", dir / "sk.bin",
                              dir / "pk.bin", dir / "evk.bin"};
    for (const auto& f : paths) {
      if (!kg_force && fs::exists(f))
        throw StateError("refusing to overwrite " + f.string() +
                         " (use --force)");
    }
    Rng rng(effective_seed(kg_seed));
    Scheme scheme(p);
    const KeySet keys = scheme.keygen(rng);
    save_params(paths[0].string(), p);
    save_secret_key(paths[1].string(), keys.sk, p);
    save_public_key(paths[2].string(), keys.pk, p);
    save_eval_key(paths[3].string(), keys.evk, p);
    std::cout << "wrote " << paths[0] << ", sk.bin, pk.bin, evk.bin\n";
    return 0;
  }

  if (enc->parsed()) {
    const Params p = load_params(enc_params);
    const PublicKey pk = load_public_key(enc_pk);
    Scheme scheme(p);
    Rng rng(effective_seed(enc_seed));
    Message m;
    if (!enc_values.empty()) {
      m.slots = parse_values(enc_values);
    } else {
      m.slots.resize(enc_slots);
      for (auto& s : m.slots)
        s = {static_cast<double>(rng.next() >> 11) * 0x1p-53 * 2 - 1, 0.0};
    }
    const Ciphertext c = scheme.encrypt(scheme.encode(m), pk, rng);
    save_ciphertext(enc_out, c);
    print_slots(m);
    return 0;
  }

  if (dec->parsed()) {
    const Params p = load_params(dec_params);
    const SecretKey sk = load_secret_key(dec_sk, p);
    const Ciphertext c = load_ciphertext(dec_ct);
    Scheme scheme(p);
    print_slots(scheme.decode(scheme.decrypt(c, sk)));
    return 0;
  }

  if (mul->parsed()) {
    const Params p = load_params(mul_params);
    const Ciphertext c1 = load_ciphertext(mul_ct1);
    const Ciphertext c2 = load_ciphertext(mul_ct2);
    const EvalKey evk = load_eval_key(mul_evk);
    if (c1.log_q != c2.log_q)
      throw StateError("ciphertext moduli differ: " +
                       std::to_string(c1.log_q) + " vs " +
                       std::to_string(c2.log_q));
    Scheme scheme(p);
    save_ciphertext(mul_out, scheme.he_mul(c1, c2, evk));
    return 0;
  }

  if (ben->parsed()) {
    const Params p = ben_params.make();
    BenchConfig cfg;
    cfg.threads = std::max(1, ben_threads);
    cfg.reps = ben_reps;
    cfg.seed = effective_seed(ben_seed);
    cfg.radix_log = radix_to_log(ben_radix);
    if (ben_strategy == "periodic-mod") {
      cfg.strategy.kind = AccumKind::periodic_mod;
      cfg.strategy.period = ben_period;
      if (cfg.strategy.period == 0) {
        // probe the max valid period from a small throwaway prime set
        cfg.strategy.period =
            max_valid_period(generate_primes(2, p.log_n, p.word));
      }
    }
    cfg.icrt_loop_reordered = ben_icrt == "reordered";
    cfg.shoup_approx = ben_shoup == "approx";
    ThreadPool pool(cfg.threads);
    const BenchReport r =
        run_he_mul_bench(p, cfg, cfg.threads > 1 ? &pool : nullptr);
    if (ben_format == "table")
      std::cout << bench_table(r);
    else if (ben_format == "csv")
      std::cout << bench_csv(r);
    else
      std::cout << bench_json(r);
    return 0;
  }

  if (cost->parsed()) {
    const WordSize w = cost_word_bits == 64 ? WordSize::w64 : WordSize::w32;
    std::ostringstream os;
    os << "sweep,value,np1,np2,crt,ntt,intt,icrt,region2,total\n";
    auto emit = [&os](const char* kind, int v, const HeMulCost& c) {
      os << kind << "," << v << "," << c.region1.np << "," << c.region2.np
         << "," << c.region1.crt.mul + c.region1.crt.adc + c.region1.crt.modmul
                       + c.region2.crt.mul + c.region2.crt.adc +
                       c.region2.crt.modmul
         << ","
         << c.region1.ntt.modmul + c.region1.ntt.addsub +
                c.region2.ntt.modmul + c.region2.ntt.addsub
         << ","
         << c.region1.intt.modmul + c.region1.intt.addsub +
                c.region2.intt.modmul + c.region2.intt.addsub
         << ","
         << c.region1.icrt.mul + c.region1.icrt.adc + c.region1.icrt.modmul +
                c.region2.icrt.mul + c.region2.icrt.adc + c.region2.icrt.modmul
         << "," << c.region2.total() << "," << c.total() << "\n";
    };
    if (!cost_logQ_sweep.empty()) {
      std::istringstream is(cost_logQ_sweep);
      std::string tok;
      while (std::getline(is, tok, ',')) {
        const int lq = std::stoi(tok);
        emit("logQ", lq, he_mul_cost(lq, lq, w));
      }
    }
    if (!cost_logq_sweep.empty()) {
      int start = 0, stop = 0, step = 1;
      char c1 = 0, c2 = 0;
      std::istringstream is(cost_logq_sweep);
      is >> start >> c1 >> stop >> c2 >> step;
      if (c1 != ':' || c2 != ':' || step <= 0)
        throw CLI::ValidationError("--logq-sweep expects start:stop:step");
      for (int lq = start; lq <= stop; lq += step)
        emit("logq", lq, he_mul_cost(lq, cost_log_q_max, w));
    }
    if (cost_format == "csv") {
      std::cout << os.str();
    } else {
      // one JSON object per row, wrapped in a list
      std::istringstream rows(os.str());
      std::string header, line;
      std::getline(rows, header);
      std::vector<std::string> cols;
      {
        std::istringstream hs(header);
        std::string c;
        while (std::getline(hs, c, ',')) cols.push_back(c);
      }
      std::cout << "[";
      bool first = true;
      while (std::getline(rows, line)) {
        std::istringstream ls(line);
        std::string cell;
        std::cout << (first ? "\n  {" : ",\n  {");
        first = false;
        for (size_t i = 0; i < cols.size(); ++i) {
          std::getline(ls, cell, ',');
          std::cout << (i ? "," : "") << "\"" << cols[i] << "\":"
                    << (i == 0 ? "\"" + cell + "\"" : cell);
        }
        std::cout << "}";
      }
      std::cout << "\n]\n";
    }
    return 0;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const StateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitState;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitState;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitState;
  }
}
