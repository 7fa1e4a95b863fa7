#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "forge/forge.hpp"
#include "oracle/oracle.hpp"
#include "shtuka/loop_group.hpp"
#include "shtuka/shtuka_moduli.hpp"
#include "shtuka/witt.hpp"
#include "shtuka/witt_display.hpp"
#include "shtuka/zip.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run forge_run(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int c = forge::run(args, o, e);
  return {c, o.str(), e.str()};
}

std::string data(const std::string& name) { return (fs::path(SHTUKA_TEST_DATA) / name).string(); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("check-bundle exit codes") {
  for (const char* f : {"good_chain.txt", "good_rees.txt", "good_hecke.txt"}) {
    CAPTURE(f);
    const Run r = forge_run({"check-bundle", "--file", data(f)});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["result"]["verdict"]["ok"] == true);
  }
  for (const char* f : {"bad_chain_torsion.txt", "bad_rees_flags.txt", "bad_hecke_precision.txt"}) {
    CAPTURE(f);
    const Run r = forge_run({"check-bundle", "--file", data(f)});
    CHECK(r.code == 2);
    CHECK(json::parse(r.out)["result"]["verdict"]["ok"] == false);
  }
  const Run missing = forge_run({"check-bundle", "--file", data("absent.txt")});
  CHECK(missing.code == 1);
  CHECK(json::parse(missing.err).contains("error"));
}

TEST_CASE("records carry the common fields") {
  const Run r = forge_run({"count-groups", "--q", "2", "--h", "2", "--mu", "1,0", "--N", "2", "--seed", "9"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  for (const char* k : {"schema", "subcommand", "parameters", "result", "fixture_hash", "version", "seed", "wall_time_s"})
    CHECK(j.contains(k));
  CHECK(j["schema"] == forge::kSchema);
  CHECK(j["seed"] == 9);
  CHECK(j["result"]["count"] == 64);
  CHECK(j["result"]["kernel_count"] == 16);  // ker(E_3 -> E_2)
  CHECK(j["fixture_hash"] == forge::fixture_hash(forge::fixture_dir()));
}

TEST_CASE("usage and domain errors exit with status 1") {
  CHECK(forge_run({"count-groups", "--q", "6", "--h", "2", "--mu", "1,0", "--N", "1"}).code == 1);
  CHECK(forge_run({"count-groups", "--q", "2", "--h", "2", "--mu", "0,1", "--N", "1"}).code == 1);
  CHECK(forge_run({"classify-shtukas", "--q", "2", "--h", "2", "--mu", "1,0", "--N", "2", "--max-states", "5"}).code == 1);
  CHECK(forge_run({"no-such-command"}).code == 1);
  CHECK(forge_run({"classify-displays", "--p", "3", "--q", "2", "--h", "2", "--d", "1", "--N", "1"}).code == 1);
  const Run v = forge_run({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find(forge::version()) != std::string::npos);
}

TEST_CASE("csv output") {
  const Run r = forge_run({"classify-zips", "--q", "2", "--h", "2", "--d", "1", "--csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find(',') != std::string::npos);
  CHECK(r.out.find('{') == std::string::npos);
}

TEST_CASE("explain covers every subcommand") {
  for (const auto& s : forge::subcommands()) {
    CAPTURE(s);
    const json j = json::parse(forge::explain_text(s));
    if (s != "explain" && s != "regen-oracle") {
      CHECK_FALSE(j["cites"].empty());
      CHECK_FALSE(j["quote"].get<std::string>().empty());
    }
    CHECK_FALSE(j["computes"].get<std::string>().empty());
  }
}

TEST_CASE("fixture manifest matches the committed files") {
  const fs::path dir = forge::fixture_dir();
  REQUIRE(fs::exists(dir / forge::kManifest));
  CHECK(slurp(dir / forge::kManifest) == forge::manifest_text(dir));
  CHECK(forge::fixture_hash(dir).size() == 64);
  CHECK(forge::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("small regeneration scopes reproduce the committed fixtures") {
  for (const char* scope : {"groups", "zips", "displays"}) {
    CAPTURE(scope);
    for (const auto& [name, content] : forge::regen_oracle(scope)) CHECK(content == slurp(forge::fixture_dir() / name));
  }
}

TEST_CASE("core and oracle agree on random Witt arithmetic") {
  std::mt19937_64 rng(51);
  for (auto [p, k] : {std::pair<std::uint32_t, std::uint32_t>{2, 2}, {3, 1}, {5, 1}, {2, 3}}) {
    const auto base = k == 1 ? shtuka::FpAlgebra::prime_field(p) : shtuka::FpAlgebra::truncated(p, k);
    const oracle::GhostWitt G{p, k};
    for (int s = 0; s < 200; ++s) {
      std::vector<std::uint32_t> a(3), b(3);
      for (auto& x : a) x = static_cast<std::uint32_t>(rng() % base->size());
      for (auto& x : b) x = static_cast<std::uint32_t>(rng() % base->size());
      const shtuka::WittVec x(base, a), y(base, b);
      CHECK((x + y).coords() == G.add(a, b));
      CHECK((x * y).coords() == G.mul(a, b));
    }
  }
}

TEST_CASE("core and oracle agree on orbit data") {
  using shtuka::CoeffField;
  using shtuka::GroupParams;
  using shtuka::TypeVector;
  for (auto [q, mu, N] : std::vector<std::tuple<std::uint32_t, std::vector<int>, std::size_t>>{
           {2, {1, 0}, 2}, {3, {1, 0}, 1}, {2, {2, 0}, 2}, {2, {1, 1, 0}, 1}}) {
    const GroupParams P(CoeffField::make(q), TypeVector(mu), N);
    const auto [p, deg] = shtuka::prime_power(q);
    const auto F = oracle::GF::make(p, deg);
    CHECK(shtuka::dg_count(P, shtuka::kDefaultStateBudget) == oracle::e_count(F, mu, N));
    const auto t = shtuka::shtuka_classify(P);
    const auto o = oracle::shtuka_orbits(F, q, mu, N);
    REQUIRE(t.class_count() == o.reps.size());
    for (std::size_t i = 0; i < o.reps.size(); ++i) {
      CHECK(t.classes[i].rep.key() == o.reps[i]);
      CHECK(t.classes[i].orbit_size == o.orbit_sizes[i]);
    }
  }
  const auto zo = oracle::zip_orbits(3, 2, 1);
  CHECK(shtuka::zip_classify(CoeffField::make(3), 2, 1).classes.size() == zo.classes);
  const auto dz = oracle::display_orbits(3, 2, 1, 1);
  CHECK(shtuka::display_classify(3, 2, 1, 1).classes.size() == dz.classes);
}
