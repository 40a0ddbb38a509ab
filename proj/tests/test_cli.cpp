#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

std::string bin() {
  const char* b = std::getenv("HEMUL_BIN");
  REQUIRE_MESSAGE(b != nullptr, "HEMUL_BIN must point at the cli binary");
  return b;
}

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + bin() + " " + args +
                          " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  Result r;
  char buf[4096];
  size_t nread;
  while ((nread = fread(buf, 1, sizeof(buf), p)) > 0) r.out.append(buf, nread);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("hemul_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string f(const char* name) const { return (path / name).string(); }
};

const char* kSmall = "--depth 4 --ring-degree 10";

}  // namespace

TEST_CASE("keygen, encrypt, mul, decrypt flow") {
  TempDir td;
  const std::string dir = td.path.string();
  Result r = run(std::string("keygen ") + kSmall + " --out-dir " + dir);
  CHECK(r.code == 0);
  CHECK(fs::exists(td.f("params.json")));
  CHECK(fs::exists(td.f("sk.bin")));
  CHECK(fs::exists(td.f("pk.bin")));
  CHECK(fs::exists(td.f("evk.bin")));

  // refuses to overwrite without --force
  r = run(std::string("keygen ") + kSmall + " --out-dir " + dir);
  CHECK(r.code == 2);
  r = run(std::string("keygen ") + kSmall + " --out-dir " + dir + " --force");
  CHECK(r.code == 0);

  const std::string common = " --params " + td.f("params.json");
  r = run("encrypt" + common + " --pk " + td.f("pk.bin") + " --out " +
          td.f("c1.bin") + " --values 0.5,0.25,-0.5,1.0");
  CHECK(r.code == 0);
  r = run("encrypt" + common + " --pk " + td.f("pk.bin") + " --out " +
          td.f("c2.bin") + " --values 2.0,2.0,2.0,0.5 --seed 9");
  CHECK(r.code == 0);
  r = run("mul" + common + " --ct1 " + td.f("c1.bin") + " --ct2 " +
          td.f("c2.bin") + " --evk " + td.f("evk.bin") + " --out " +
          td.f("c3.bin"));
  CHECK(r.code == 0);
  r = run("decrypt" + common + " --sk " + td.f("sk.bin") + " --ct " +
          td.f("c3.bin"));
  CHECK(r.code == 0);
  // slotwise product: 1.0, 0.5, -1.0, 0.5
  const auto slots = nlohmann::json::parse(r.out);
  REQUIRE(slots.size() >= 4);
  const double want[4] = {1.0, 0.5, -1.0, 0.5};
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(slots[i][0].get<double>() - want[i]) < 1e-3);

  // modulus mismatch: product is at a lower modulus than a fresh ciphertext
  r = run("mul" + common + " --ct1 " + td.f("c3.bin") + " --ct2 " +
          td.f("c1.bin") + " --evk " + td.f("evk.bin") + " --out " +
          td.f("x.bin"));
  CHECK(r.code == 2);

  // corrupt ciphertext: format error
  {
    std::ofstream os(td.f("bad.bin"), std::ios::binary);
    os << "garbage";
  }
  r = run("decrypt" + common + " --sk " + td.f("sk.bin") + " --ct " +
          td.f("bad.bin"));
  CHECK(r.code == 3);
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(run("").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("mul --badflag").code == 1);
  CHECK(run("encrypt").code == 1);  // missing required options
  CHECK(run("--help").code == 0);
}

TEST_CASE("seed env var makes encryption deterministic") {
  TempDir td;
  const std::string dir = td.path.string();
  REQUIRE(run(std::string("keygen ") + kSmall + " --out-dir " + dir).code ==
          0);
  const std::string common = " --params " + td.f("params.json") + " --pk " +
                             td.f("pk.bin") + " --values 0.5,0.5";
  REQUIRE(run("encrypt" + common + " --out " + td.f("a.bin") + " --seed 1",
              "HEAAN_SEED=42").code == 0);
  REQUIRE(run("encrypt" + common + " --out " + td.f("b.bin") + " --seed 2",
              "HEAAN_SEED=42").code == 0);
  REQUIRE(run("encrypt" + common + " --out " + td.f("c.bin") + " --seed 2",
              "HEAAN_SEED=43").code == 0);
  auto slurp = [](const std::string& f) {
    std::ifstream is(f, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(is), {});
  };
  CHECK(slurp(td.f("a.bin")) == slurp(td.f("b.bin")));
  CHECK(slurp(td.f("a.bin")) != slurp(td.f("c.bin")));
}

TEST_CASE("bench output formats and determinism across configurations") {
  const std::string base = std::string("bench ") + kSmall +
                           " --reps 2 --threads 1 --seed 5";
  const Result table = run(base + " --format table");
  CHECK(table.code == 0);
  for (const char* cat : {"CRT", "NTT", "iNTT", "iCRT", "Extra", "Total"})
    CHECK_MESSAGE(table.out.find(cat) != std::string::npos, cat);

  const Result csv = run(base + " --format csv");
  CHECK(csv.code == 0);
  CHECK(csv.out.find("function,time_ms,speedup_vs_baseline") == 0);

  const Result js = run(base + " --format json");
  CHECK(js.code == 0);
  const auto j = nlohmann::json::parse(js.out);
  CHECK(j.contains("total_ms"));
  const std::string digest = j["digest"].get<std::string>();

  // the result ciphertext must be bit-identical whatever the strategy
  for (const char* variant :
       {"--radix 16", "--radix 32", "--icrt naive",
        "--crt-strategy periodic-mod", "--shoup approx", "--threads 4"}) {
    const std::string cmd = std::string("bench ") + kSmall +
                            " --reps 2 --seed 5 --format json " + variant;
    const Result v = run(cmd);
    CHECK(v.code == 0);
    const auto jv = nlohmann::json::parse(v.out);
    CHECK_MESSAGE(jv["digest"].get<std::string>() == digest, variant);
  }
}

TEST_CASE("cost sweeps") {
  const Result empty = run("cost");
  CHECK(empty.code == 0);
  CHECK(empty.out ==
        "sweep,value,np1,np2,crt,ntt,intt,icrt,region2,total\n");

  const Result lq = run("cost --logQ-sweep 300,600,1200");
  CHECK(lq.code == 0);
  CHECK(lq.out.find("logQ,300,") != std::string::npos);
  CHECK(lq.out.find("logQ,1200,42,63,") != std::string::npos);

  const Result sweep =
      run("cost --logq-sweep 60:300:60 --log-q-max 300 --format json");
  CHECK(sweep.code == 0);
  const auto j = nlohmann::json::parse(sweep.out);
  CHECK(j.size() == 5);
  CHECK(j[0]["sweep"] == "logq");

  CHECK(run("cost --logq-sweep nonsense").code == 1);
}
