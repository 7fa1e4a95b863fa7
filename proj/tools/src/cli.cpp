#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "forge/forge.hpp"
#include "shtuka/error.hpp"
#include "shtuka/formats.hpp"
#include "shtuka/graded_rees.hpp"
#include "shtuka/loop_group.hpp"
#include "shtuka/root_data.hpp"
#include "shtuka/shtuka_moduli.hpp"
#include "shtuka/witt_display.hpp"
#include "shtuka/zip.hpp"

#ifndef SHTUKA_FORGE_VERSION
#define SHTUKA_FORGE_VERSION "0.0.0"
#endif

namespace forge {

std::string version() { return SHTUKA_FORGE_VERSION; }

namespace {

using nlohmann::json;
using namespace shtuka;

struct Common {
  bool csv = false;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  std::uint64_t max_states = kDefaultStateBudget;
  std::uint64_t max_group = kDefaultStateBudget;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_flag("--csv", c.csv, "Tabular payloads as CSV (counts only)");
  sub->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  sub->add_option("--seed", c.seed, "Seed for randomized checks (echoed in the record)");
  sub->add_option("--max-states", c.max_states, "Budget for enumerated points");
  sub->add_option("--max-group", c.max_group, "Budget for enumerated group elements");
}

/// Output of one subcommand: the JSON payload plus an optional CSV rendering.
struct Outcome {
  json params = json::object();
  json result = json::object();
  std::string csv;
  int code = 0;
};

std::vector<std::uint32_t> parse_uint_list(const std::string& s) {
  std::vector<std::uint32_t> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) {
        require(std::all_of(cur.begin(), cur.end(), [](char d) { return std::isdigit(static_cast<unsigned char>(d)); }),
                ErrorKind::Parse, "expected a list of positive integers, got '" + s + "'");
        out.push_back(static_cast<std::uint32_t>(std::stoul(cur)));
        cur.clear();
      }
    } else {
      cur.push_back(c);
    }
  }
  require(!out.empty(), ErrorKind::Parse, "empty integer list");
  return out;
}

TypeVector mu_for(const std::string& text, std::size_t h) {
  const TypeVector mu = TypeVector::parse(text);
  require(mu.size() == h, ErrorKind::ParameterMismatch,
          "mu has " + std::to_string(mu.size()) + " entries but h = " + std::to_string(h));
  return mu;
}

json cutoff_json(const CutoffReport& r) {
  json S = json::array();
  for (const auto& xi : r.S) S.push_back(xi.values());
  return {{"h", r.h}, {"S", S}, {"C", r.C}, {"isogeny", r.isogeny_bound}, {"isomorphism", r.isomorphism_bound},
          {"relative_to", "supplied S"}};
}

json truncation_json(const TruncationReport& t) {
  return {{"N", t.params.N},          {"classes_lower", t.classes_lower}, {"classes_upper", t.classes_upper},
          {"surjective", t.surjective}, {"injective", t.injective},        {"fiber_sizes", t.fiber_sizes}};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

// --- subcommands -------------------------------------------------------------

struct CountGroups {
  std::uint64_t q = 2;
  std::size_t h = 2, N = 1;
  std::uint32_t tower = 1;
  std::string mu = "1,0";
  Outcome run(const Common& c) const {
    const GroupParams P(CoeffField::make(q, tower), mu_for(mu, h), N);
    Outcome o;
    o.params = {{"q", q}, {"tower_degree", tower}, {"h", h}, {"mu", P.mu.values()}, {"N", N}};
    const auto count = dg_count(P, c.max_group, c.jobs);
    const auto e1 = dg_count(P.at_level(1), c.max_group, c.jobs);
    const auto kernel = dg_kernel_count(P, c.max_group, c.jobs);
    o.result = {{"count", count},
                {"e1_count", e1},
                {"kernel_count", kernel},
                {"kernel_of", {N + 1, N}},
                {"predicted_count", dg_predicted_count(P)}};
    o.csv = "q,h,mu,N,count,e1_count,kernel_count,predicted_count\n" + std::to_string(q) + "," + std::to_string(h) +
            ",\"" + P.mu.format() + "\"," + std::to_string(N) + "," + std::to_string(count) + "," + std::to_string(e1) +
            "," + std::to_string(kernel) + "," + std::to_string(dg_predicted_count(P)) + "\n";
    return o;
  }
};

struct ClassifyShtukas {
  std::uint64_t q = 2;
  std::size_t h = 2, N = 1;
  std::uint32_t tower = 1;
  std::string mu = "1,0", strategy = "bfs", convention = "sigma-inverse";
  Outcome run(const Common& c) const {
    const GroupParams P(CoeffField::make(q, tower), mu_for(mu, h), N);
    ClassifyOptions opts;
    opts.strategy = parse_strategy(strategy);
    opts.convention = parse_convention(convention);
    opts.max_states = c.max_states;
    opts.max_group = c.max_group;
    opts.jobs = c.jobs;
    const OrbitTable t = shtuka_classify(P, opts);
    Outcome o;
    o.params = {{"q", q},         {"tower_degree", tower},          {"h", h},
                {"mu", P.mu.values()}, {"N", N}, {"strategy", to_string(opts.strategy)},
                {"convention", to_string(opts.convention)}};
    json sizes = json::array(), reps = json::array();
    o.csv = "class,orbit_size,representative\n";
    for (std::size_t i = 0; i < t.classes.size(); ++i) {
      sizes.push_back(t.classes[i].orbit_size);
      reps.push_back(t.classes[i].rep.format());
      o.csv += std::to_string(i) + "," + std::to_string(t.classes[i].orbit_size) + ",\"" + t.classes[i].rep.format() +
               "\"\n";
    }
    o.result = {{"class_count", t.class_count()},  {"orbit_sizes", sizes},
                {"representatives", reps},         {"group_order", t.group_order},
                {"space_order", t.space_order},    {"generator_count", t.generator_count}};
    return o;
  }
};

struct CutoffScan {
  std::uint64_t q = 2;
  std::size_t h = 2, N_max = 2;
  std::string mu = "1,0", tower = "1", S;
  Outcome run(const Common& c) const {
    const TypeVector m = mu_for(mu, h);
    ClassifyOptions opts;
    opts.strategy = Strategy::Lift;
    opts.max_states = c.max_states;
    opts.max_group = c.max_group;
    opts.jobs = c.jobs;
    const CutoffTable t = cutoff_experiment(q, m, N_max, parse_uint_list(tower), opts);
    const CutoffReport bounds = S.empty() ? t.bounds : cutoff_bounds(h, parse_cocharacter_set(S));
    Outcome o;
    o.params = {{"q", q}, {"h", h}, {"mu", m.values()}, {"N_max", N_max}, {"tower", parse_uint_list(tower)}};
    if (!S.empty()) o.params["S"] = S;
    json rows = json::array();
    o.csv = "tower_degree,field_size,N,classes,surjective,injective\n";
    for (const auto& r : t.rows) {
      json tr = json::array();
      for (const auto& x : r.truncations) tr.push_back(truncation_json(x));
      rows.push_back({{"tower_degree", r.tower_degree},
                      {"field_size", r.field_size},
                      {"class_counts", r.class_counts},
                      {"truncations", tr},
                      {"cutoff", r.cutoff ? json(*r.cutoff) : json("none")},
                      {"stable_from", r.stable_from ? json(*r.stable_from) : json("none")}});
      for (std::size_t n = 0; n < r.class_counts.size(); ++n) {
        o.csv += std::to_string(r.tower_degree) + "," + std::to_string(r.field_size) + "," + std::to_string(n + 1) + "," +
                 std::to_string(r.class_counts[n]) + ",";
        if (n < r.truncations.size())
          o.csv += std::string(r.truncations[n].surjective ? "1" : "0") + "," + (r.truncations[n].injective ? "1" : "0");
        else
          o.csv += ",";
        o.csv += "\n";
      }
    }
    o.result = {{"rows", rows}, {"bounds", cutoff_json(bounds)}};
    return o;
  }
};

json verdict_json(const Verdict& v) {
  json j = {{"ok", v.ok}};
  if (!v.ok) {
    j["condition"] = v.condition;
    j["degree"] = v.degree ? json(*v.degree) : json(nullptr);
    j["detail"] = v.detail;
  }
  return j;
}

struct CheckBundle {
  std::string file;
  Outcome run(const Common&) const {
    std::ifstream in(file, std::ios::binary);
    require(static_cast<bool>(in), ErrorKind::InvalidArgument, "cannot read '" + file + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    const BundleData data = bundle_parse(ss.str());
    Outcome o;
    o.params = {{"file", std::filesystem::path(file).filename().string()}, {"file_sha256", sha256_hex(ss.str())}};
    bool ok = true;
    if (const auto* c = std::get_if<FilteredChain>(&data)) {
      const Verdict v = is_filtered_vb(*c);
      ok = v.ok;
      o.result = {{"kind", "filtered-chain"}, {"verdict", verdict_json(v)}};
    } else if (const auto* m = std::get_if<GradedReesModule>(&data)) {
      const Verdict v = is_rees_vb(*m);
      ok = v.ok;
      o.result = {{"kind", "rees-module"}, {"verdict", verdict_json(v)}};
      if (ok) o.result["type"] = normal_decomposition(*m).values();
    } else {
      const auto& p = std::get<HeckePair>(data);
      o.result = {{"kind", "hecke-pair"}, {"h", p.h()}, {"precision", p.precision()}, {"denominator", p.denominator}};
      try {
        o.result["type"] = hecke_type(p).values();
        o.result["verdict"] = verdict_json(Verdict::pass());
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::PrecisionExhausted) throw;
        ok = false;
        o.result["verdict"] = verdict_json(Verdict::fail("precision", std::nullopt, e.what()));
      }
    }
    o.code = ok ? 0 : 2;
    o.csv = std::string("kind,ok\n") + o.result["kind"].get<std::string>() + "," + (ok ? "1" : "0") + "\n";
    return o;
  }
};

struct ClassifyDisplays {
  std::uint64_t p = 0, q = 2;
  std::size_t h = 2, d = 1, N = 1;
  Outcome run(const Common& c) const {
    require(is_prime_power_of(q, p), ErrorKind::ParameterMismatch,
            "q = " + std::to_string(q) + " is not a power of p = " + std::to_string(p));
    const DisplayClassTable t = display_classify(q, h, d, N, c.max_group, c.jobs);
    const auto& W = *t.pair.ring;
    Outcome o;
    o.params = {{"p", W.p()}, {"q", q}, {"h", h}, {"d", d}, {"N", N}};
    json classes = json::array();
    o.csv = "class,orbit_size,automorphisms,psi\n";
    for (std::size_t i = 0; i < t.classes.size(); ++i) {
      const auto& k = t.classes[i];
      classes.push_back({{"psi", wformat(W, k.psi)}, {"orbit_size", k.orbit_size}, {"automorphisms", k.automorphisms}});
      o.csv += std::to_string(i) + "," + std::to_string(k.orbit_size) + "," + std::to_string(k.automorphisms) + ",\"" +
               wformat(W, k.psi) + "\"\n";
    }
    o.result = {{"class_count", t.classes.size()},
                {"display_count", t.display_count},
                {"group_order", t.group_order},
                {"classes", classes}};
    return o;
  }
  // p = 0 means "the characteristic of q".
  static bool is_prime_power_of(std::uint64_t q, std::uint64_t p) {
    if (p == 0) return true;
    if (q < p) return false;
    while (q % p == 0) q /= p;
    return q == 1;
  }
};

struct ClassifyZips {
  std::uint64_t q = 2;
  std::size_t h = 2, d = 1;
  Outcome run(const Common& c) const {
    const ZipClassTable t = zip_classify(CoeffField::make(q), h, d, c.max_group);
    Outcome o;
    o.params = {{"q", q}, {"h", h}, {"d", d}};
    json classes = json::array();
    o.csv = "class,orbit_size,automorphisms\n";
    for (std::size_t i = 0; i < t.classes.size(); ++i) {
      const auto& k = t.classes[i];
      classes.push_back({{"zip", lines_of(zip_format(k.rep))}, {"orbit_size", k.orbit_size}, {"automorphisms", k.automorphisms}});
      o.csv += std::to_string(i) + "," + std::to_string(k.orbit_size) + "," + std::to_string(k.automorphisms) + "\n";
    }
    o.result = {{"class_count", t.classes.size()},
                {"zip_count", t.zip_count},
                {"group_order", t.group_order},
                {"classes", classes}};
    return o;
  }
};

struct CutoffBound {
  std::size_t h = 2;
  std::string S = "(1,0)";
  Outcome run(const Common&) const {
    const CutoffReport r = cutoff_bounds(h, parse_cocharacter_set(S));
    Outcome o;
    o.params = {{"h", h}, {"S", S}};
    o.result = cutoff_json(r);
    o.csv = "C,isogeny,isomorphism\n" + std::to_string(r.C) + "," + std::to_string(r.isogeny_bound) + "," +
            std::to_string(r.isomorphism_bound) + "\n";
    return o;
  }
};

struct Explain {
  std::string topic;
  Outcome run(const Common&) const {
    const std::string text = explain_text(topic);
    require(!text.empty(), ErrorKind::InvalidArgument, "no subcommand named '" + topic + "'");
    Outcome o;
    o.params = {{"subcommand", topic}};
    o.result = json::parse(text);
    return o;
  }
};

struct RegenOracle {
  std::string scope = "all", out;
  Outcome run(const Common&) const {
    const std::filesystem::path dir = out.empty() ? fixture_dir() : std::filesystem::path(out);
    const auto files = regen_oracle(scope);
    write_fixtures(dir, files);
    Outcome o;
    o.params = {{"scope", scope}};
    json written = json::object();
    for (const auto& [name, content] : files) written[name] = sha256_hex(content);
    o.result = {{"files", written}, {"manifest_sha256", fixture_hash(dir)}};
    return o;
  }
};

void emit(std::ostream& out, const std::string& sub, const Common& c, const Outcome& o, double seconds) {
  if (c.csv && !o.csv.empty()) {
    out << o.csv;
    return;
  }
  const std::string fh = fixture_hash(fixture_dir());
  json rec = {{"schema", kSchema},
              {"subcommand", sub},
              {"parameters", o.params},
              {"result", o.result},
              {"fixture_hash", fh.empty() ? json(nullptr) : json(fh)},
              {"version", version()},
              {"seed", c.seed},
              {"wall_time_s", seconds}};
  out << rec.dump(2) << "\n";
}

void diagnose(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"schema", kSchema}, {"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

std::vector<std::string> subcommands() {
  return {"count-groups", "classify-shtukas", "cutoff-scan",  "check-bundle", "classify-displays",
          "classify-zips", "cutoff-bound",    "explain",      "regen-oracle"};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"shtuka-forge: exact classification of truncated shtukas, displays and F-zips", "shtuka-forge"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(0, 1);
  Common common;
  bool regen_flag = false;
  app.add_flag("--regen-oracle", regen_flag, "Same as the regen-oracle subcommand with --scope all");
  app.set_version_flag("--version", version());

  CountGroups cg;
  auto* s_cg = app.add_subcommand("count-groups", "Order of E_N(GL_h, mu)(F_q) and of the truncation kernel");
  s_cg->add_option("--q", cg.q, "Field size")->required();
  s_cg->add_option("--h", cg.h, "Rank")->required();
  s_cg->add_option("--mu", cg.mu, "Dominant cocharacter, e.g. 1,0")->required();
  s_cg->add_option("--N", cg.N, "Truncation level")->required()->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  s_cg->add_option("--tower", cg.tower, "Work over F_{q^m}");
  add_common(s_cg, common);

  ClassifyShtukas cs;
  auto* s_cs = app.add_subcommand("classify-shtukas", "Isomorphism classes of N-truncated shtukas");
  s_cs->add_option("--q", cs.q, "Field size")->required();
  s_cs->add_option("--h", cs.h, "Rank")->required();
  s_cs->add_option("--mu", cs.mu, "Dominant cocharacter")->required();
  s_cs->add_option("--N", cs.N, "Truncation level")->required()->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  s_cs->add_option("--strategy", cs.strategy, "full, bfs or lift")->check(CLI::IsMember({"full", "bfs", "lift"}));
  s_cs->add_option("--convention", cs.convention, "sigma-inverse or sigma-of-inverse")
      ->check(CLI::IsMember({"sigma-inverse", "sigma-of-inverse"}));
  s_cs->add_option("--tower", cs.tower, "Work over F_{q^m}");
  add_common(s_cs, common);

  CutoffScan sc;
  auto* s_sc = app.add_subcommand("cutoff-scan", "Truncation maps on classes along a field tower");
  s_sc->add_option("--q", sc.q, "Field size")->required();
  s_sc->add_option("--h", sc.h, "Rank")->required();
  s_sc->add_option("--mu", sc.mu, "Dominant cocharacter")->required();
  s_sc->add_option("--N-max,--N_max", sc.N_max, "Largest level N whose truncation from N+1 is examined")
      ->required()
      ->check(CLI::Range(std::size_t{1}, std::size_t{16}));
  s_sc->add_option("--tower", sc.tower, "Comma-separated tower degrees m");
  s_sc->add_option("--S", sc.S, "Cocharacter set for the bounds (default {mu})");
  add_common(s_sc, common);

  CheckBundle cb;
  auto* s_cb = app.add_subcommand("check-bundle", "Vector-bundle verdict for a bundle file");
  s_cb->add_option("--file", cb.file, "Filtered chain, Rees module or Hecke pair")->required();
  add_common(s_cb, common);

  ClassifyDisplays cd;
  auto* s_cd = app.add_subcommand("classify-displays", "Displays of type (h,d) over W_N(F_q)");
  s_cd->add_option("--p", cd.p, "Characteristic (checked against q)");
  s_cd->add_option("--q", cd.q, "Residue field size")->required();
  s_cd->add_option("--h", cd.h, "Rank")->required();
  s_cd->add_option("--d", cd.d, "Rank of L")->required();
  s_cd->add_option("--N", cd.N, "Witt length")->required()->check(CLI::Range(std::size_t{1}, std::size_t{8}));
  add_common(s_cd, common);

  ClassifyZips cz;
  auto* s_cz = app.add_subcommand("classify-zips", "F-zips of type (h,d) over F_q");
  s_cz->add_option("--q", cz.q, "Field size")->required();
  s_cz->add_option("--h", cz.h, "Rank")->required();
  s_cz->add_option("--d", cz.d, "dim C^1")->required();
  add_common(s_cz, common);

  CutoffBound bd;
  auto* s_bd = app.add_subcommand("cutoff-bound", "C and the cutoff bounds C+1, 2C+1");
  s_bd->add_option("--h", bd.h, "Rank")->required();
  s_bd->add_option("--S", bd.S, "Cocharacters, e.g. \"(1,0);(2,0)\"")->required();
  add_common(s_bd, common);

  Explain ex;
  auto* s_ex = app.add_subcommand("explain", "Statement implemented by a subcommand");
  s_ex->add_option("subcommand", ex.topic, "Subcommand name")->required();
  add_common(s_ex, common);

  RegenOracle rg;
  auto* s_rg = app.add_subcommand("regen-oracle", "Recompute the oracle fixtures");
  s_rg->add_option("--scope", rg.scope, "all or one of the fixture scopes")
      ->check(CLI::IsMember([] {
        auto s = regen_scopes();
        s.push_back("all");
        return s;
      }()));
  s_rg->add_option("--out", rg.out, "Target directory (default: the fixture directory)");
  add_common(s_rg, common);
  app.add_option("--scope", rg.scope, "Scope for --regen-oracle");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    diagnose(err, "usage", e.what());
    return 1;
  }

  std::string sub;
  if (!app.get_subcommands().empty()) sub = app.get_subcommands().front()->get_name();
  if (sub.empty() && regen_flag) sub = "regen-oracle";
  if (sub.empty()) {
    diagnose(err, "usage", "a subcommand is required (try --help)");
    return 1;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome o;
    if (sub == "count-groups") o = cg.run(common);
    else if (sub == "classify-shtukas") o = cs.run(common);
    else if (sub == "cutoff-scan") o = sc.run(common);
    else if (sub == "check-bundle") o = cb.run(common);
    else if (sub == "classify-displays") o = cd.run(common);
    else if (sub == "classify-zips") o = cz.run(common);
    else if (sub == "cutoff-bound") o = bd.run(common);
    else if (sub == "explain") o = ex.run(common);
    else o = rg.run(common);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(out, sub, common, o, secs);
    return o.code;
  } catch (const Error& e) {
    diagnose(err, std::string(to_string(e.kind())), e.what());
  } catch (const std::exception& e) {
    diagnose(err, "internal", e.what());
  }
  return 1;
}

}  // namespace forge
