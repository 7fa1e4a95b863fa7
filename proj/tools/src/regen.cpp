// Fixture generation. Everything here is computed by the oracle library only.

#include <algorithm>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "forge/forge.hpp"
#include "oracle/oracle.hpp"

namespace forge {

namespace {

using nlohmann::json;
using oracle::u32;
using oracle::u64;

u64 upow(u64 b, std::size_t e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

// Witt vectors coded as sum a_i Q^{N-1-i} (a_0 most significant).
u64 encode(const std::vector<u32>& a, u64 Q) {
  u64 c = 0;
  for (u32 x : a) c = c * Q + x;
  return c;
}

std::vector<u32> decode(u64 c, u64 Q, std::size_t N) {
  std::vector<u32> a(N);
  for (std::size_t i = N; i-- > 0;) {
    a[i] = static_cast<u32>(c % Q);
    c /= Q;
  }
  return a;
}

std::string dump(const json& j) { return j.dump(1) + "\n"; }

json witt_scope() {
  json ex = json::array();
  for (auto [p, k] : {std::pair<u32, u32>{2, 1}, {2, 2}, {3, 1}}) {
    const oracle::GhostWitt W{p, k};
    const u64 Q = upow(p, k);
    for (std::size_t N = 1; N <= 3; ++N) {
      const u64 n = upow(Q, N);
      json add = json::array(), mul = json::array(), frob = json::array(), ver = json::array();
      for (u64 a = 0; a < n; ++a) {
        const auto va = decode(a, Q, N);
        for (u64 b = 0; b < n; ++b) {
          const auto vb = decode(b, Q, N);
          add.push_back(encode(W.add(va, vb), Q));
          mul.push_back(encode(W.mul(va, vb), Q));
        }
        frob.push_back(encode(W.frob(va), Q));
        ver.push_back(encode(W.ver(va), Q));
      }
      ex.push_back({{"p", p}, {"k", k}, {"N", N}, {"add", add}, {"mul", mul}, {"frob", frob}, {"ver", ver}});
    }
  }
  json rnd = json::array();
  std::mt19937_64 rng(0x5eed0003);
  for (u32 k : {2u, 3u}) {
    const oracle::GhostWitt W{3, k};
    const u64 Q = upow(3, k);
    for (std::size_t N = 2; N <= 3; ++N) {
      const u64 n = upow(Q, N);
      json samples = json::array();
      for (int s = 0; s < 300; ++s) {
        const u64 a = rng() % n, b = rng() % n;
        const auto va = decode(a, Q, N), vb = decode(b, Q, N);
        samples.push_back({a, b, encode(W.add(va, vb), Q), encode(W.mul(va, vb), Q)});
      }
      rnd.push_back({{"p", 3}, {"k", k}, {"N", N}, {"samples", samples}});
    }
  }
  json ints = json::array();
  for (u32 p : {2u, 3u})
    for (std::size_t N = 1; N <= 3; ++N) {
      json values = json::array();
      for (u64 a = 0; a < upow(p, N); ++a) values.push_back(oracle::witt_to_int(p, decode(a, p, N)));
      ints.push_back({{"p", p}, {"N", N}, {"values", values}});
    }
  return {{"coding", "coordinates as base-Q digits, a_0 most significant"},
          {"exhaustive", ex},
          {"random", rnd},
          {"to_int", ints}};
}

json groups_scope() {
  struct Case {
    u32 p, k;
    std::vector<int> mu;
  };
  const std::vector<Case> cases{{2, 1, {1, 0}}, {3, 1, {1, 0}}, {2, 1, {1, 1, 0}}, {2, 1, {0, 0}}, {2, 2, {1, 0}}};
  json counts = json::array(), kernels = json::array();
  for (const auto& c : cases) {
    const auto F = oracle::GF::make(c.p, c.k);
    for (std::size_t N = 1; N <= 2; ++N)
      counts.push_back({{"q", F.q}, {"mu", c.mu}, {"N", N}, {"count", oracle::e_count(F, c.mu, N)}});
    kernels.push_back({{"q", F.q}, {"mu", c.mu}, {"N", 1}, {"kernel_count", oracle::e_kernel_count(F, c.mu, 1)}});
  }
  return {{"counts", counts}, {"kernels", kernels}};
}

json orbit_json(u32 q, u64 qfrob, const std::vector<int>& mu, std::size_t N, const oracle::OrbitData& d) {
  return {{"q", q}, {"frobenius", qfrob}, {"mu", mu}, {"N", N}, {"class_count", d.reps.size()},
          {"representatives", d.reps}, {"orbit_sizes", d.orbit_sizes}};
}

json shtuka_scope() {
  json orbits = json::array();
  const auto F2 = oracle::GF::make(2, 1), F3 = oracle::GF::make(3, 1);
  for (std::size_t N = 1; N <= 2; ++N) orbits.push_back(orbit_json(2, 2, {1, 0}, N, oracle::shtuka_orbits(F2, 2, {1, 0}, N)));
  for (int k : {0, 1, 2})
    for (std::size_t N = 1; N <= 3; ++N) orbits.push_back(orbit_json(2, 2, {k}, N, oracle::shtuka_orbits(F2, 2, {k}, N)));
  for (std::size_t N = 1; N <= 2; ++N) orbits.push_back(orbit_json(3, 3, {1}, N, oracle::shtuka_orbits(F3, 3, {1}, N)));
  json triangle = json::array();
  for (auto [h, d, p] : {std::tuple<std::size_t, std::size_t, u32>{2, 1, 2}, {2, 1, 3}, {3, 1, 2}}) {
    std::vector<int> mu(h, 0);
    std::fill(mu.begin(), mu.begin() + static_cast<long>(d), 1);
    const auto F = oracle::GF::make(p, 1);
    triangle.push_back({{"h", h}, {"d", d}, {"q", p}, {"classes", oracle::shtuka_orbits(F, p, mu, 1).reps.size()}});
  }
  return {{"orbits", orbits}, {"triangle_shtukas", triangle}};
}

json cutoff_scope() {
  json rows = json::array();
  for (auto [m, levels] : {std::pair<u32, std::size_t>{1, 4}, {2, 3}}) {
    const auto F = oracle::GF::make(2, m);
    const auto L = oracle::shtuka_levels(F, 2, {1, 0}, levels);
    json truncs = json::array();
    for (std::size_t n = 0; n + 1 < levels; ++n) {
      std::vector<std::size_t> fibers(L.class_counts[n], 0);
      for (std::size_t c : L.images[n]) ++fibers[c];
      const bool surj = std::all_of(fibers.begin(), fibers.end(), [](std::size_t f) { return f > 0; });
      const bool inj = std::all_of(fibers.begin(), fibers.end(), [](std::size_t f) { return f <= 1; });
      truncs.push_back({{"N", n + 1}, {"surjective", surj}, {"injective", inj}, {"fiber_sizes", fibers}});
    }
    rows.push_back({{"tower_degree", m}, {"field_size", F.q}, {"levels", levels},
                    {"class_counts", L.class_counts}, {"truncations", truncs}});
  }
  return {{"q", 2}, {"mu", {1, 0}}, {"rows", rows}};
}

json zips_scope() {
  json zips = json::array();
  for (auto [h, d, p] : {std::tuple<std::size_t, std::size_t, u32>{2, 1, 2}, {2, 1, 3}, {3, 1, 2}, {2, 0, 2}, {2, 2, 2}}) {
    const auto c = oracle::zip_orbits(p, h, d);
    zips.push_back({{"h", h}, {"d", d}, {"q", p}, {"classes", c.classes}, {"orbit_sizes", c.orbit_sizes}});
  }
  return {{"zips", zips}};
}

json displays_scope() {
  json ds = json::array();
  for (auto [h, d, p, N] : {std::tuple<std::size_t, std::size_t, u32, std::size_t>{2, 1, 2, 1},
                            {2, 1, 3, 1},
                            {3, 1, 2, 1},
                            {2, 1, 2, 2},
                            {1, 0, 2, 1},
                            {1, 1, 2, 1},
                            {1, 0, 2, 2},
                            {1, 1, 3, 2}}) {
    const auto c = oracle::display_orbits(p, h, d, N);
    ds.push_back({{"h", h}, {"d", d}, {"p", p}, {"N", N}, {"classes", c.classes}, {"orbit_sizes", c.orbit_sizes}});
  }
  const std::vector<std::vector<std::int64_t>> swap{{0, 1}, {1, 0}}, id{{1, 0}, {0, 1}};
  json iso = json::array();
  iso.push_back({{"h", 2}, {"d", 1}, {"p", 2}, {"N", 1}, {"psi1", swap}, {"psi2", id},
                 {"isomorphic", oracle::display_isomorphic(2, 2, 1, 1, swap, id)}});
  iso.push_back({{"h", 2}, {"d", 1}, {"p", 2}, {"N", 2}, {"psi1", swap}, {"psi2", id},
                 {"isomorphic", oracle::display_isomorphic(2, 2, 1, 2, swap, id)}});
  return {{"displays", ds}, {"iso", iso}};
}

json hecke_scope() {
  constexpr std::size_t K = 10, exact = 32, deg = 3;
  std::mt19937_64 rng(0x5eed0005);
  json cases = json::array();
  using Poly = std::vector<u32>;
  for (auto [h, p] : {std::pair<std::size_t, u32>{2, 2}, {2, 3}, {3, 2}}) {
    auto pmul = [&](const Poly& a, const Poly& b) {
      Poly r(exact, 0);
      for (std::size_t i = 0; i < exact; ++i)
        for (std::size_t j = 0; i + j < exact; ++j) r[i + j] = static_cast<u32>((r[i + j] + a[i] * b[j]) % p);
      return r;
    };
    using PMat = std::vector<std::vector<Poly>>;
    auto matmul = [&](const PMat& a, const PMat& b) {
      PMat r(h, std::vector<Poly>(h, Poly(exact, 0)));
      for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j)
          for (std::size_t t = 0; t < h; ++t) {
            const Poly c = pmul(a[i][t], b[t][j]);
            for (std::size_t s = 0; s < exact; ++s) r[i][j][s] = (r[i][j][s] + c[s]) % p;
          }
      return r;
    };
    // Invertible constant term via the oracle's field (determinant over F_p).
    const auto F = oracle::GF::make(p, 1);
    auto det_mod_p = [&](const PMat& m) {
      std::vector<std::vector<u32>> a(h, std::vector<u32>(h));
      for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j) a[i][j] = m[i][j][0];
      u32 det = 1;
      for (std::size_t c = 0; c < h; ++c) {
        std::size_t r = c;
        while (r < h && a[r][c] == 0) ++r;
        if (r == h) return 0u;
        if (r != c) {
          std::swap(a[r], a[c]);
          det = F.neg(det);
        }
        det = F.mul(det, a[c][c]);
        const u32 inv = F.inv(a[c][c]);
        for (std::size_t i = c + 1; i < h; ++i) {
          const u32 f = F.mul(a[i][c], inv);
          for (std::size_t j = c; j < h; ++j) a[i][j] = F.sub(a[i][j], F.mul(f, a[c][j]));
        }
      }
      return det;
    };
    auto random_unit = [&] {
      for (;;) {
        PMat m(h, std::vector<Poly>(h, Poly(exact, 0)));
        for (auto& row : m)
          for (auto& e : row)
            for (std::size_t s = 0; s < deg; ++s) e[s] = static_cast<u32>(rng() % p);
        if (det_mod_p(m)) return m;
      }
    };
    for (int n = 0; n < 100; ++n) {
      std::vector<int> e(h);
      for (auto& x : e) x = static_cast<int>(rng() % 7) - 3;
      const int den = std::max(0, -*std::min_element(e.begin(), e.end()));
      PMat diag(h, std::vector<Poly>(h, Poly(exact, 0)));
      for (std::size_t i = 0; i < h; ++i) diag[i][i][static_cast<std::size_t>(e[i] + den)] = 1;
      const PMat phi = matmul(matmul(random_unit(), diag), random_unit());
      const auto type = oracle::hecke_type(p, phi, exact, den);
      std::vector<int> sorted = e;
      std::sort(sorted.rbegin(), sorted.rend());
      if (type != sorted) throw std::logic_error("Hecke oracle disagrees with the constructed type");
      json rows = json::array();
      for (const auto& row : phi) {
        json r = json::array();
        for (const auto& a : row) r.push_back(Poly(a.begin(), a.begin() + K));
        rows.push_back(r);
      }
      cases.push_back({{"h", h}, {"q", p}, {"denominator", den}, {"phi0", rows}, {"type", type}});
    }
  }
  return {{"precision", K}, {"cases", cases}};
}

}  // namespace

std::vector<std::string> regen_scopes() { return {"witt", "groups", "shtuka", "cutoff", "zips", "displays", "hecke"}; }

std::map<std::string, std::string> regen_oracle(const std::string& scope) {
  std::map<std::string, std::string> out;
  auto want = [&](const char* s) { return scope == "all" || scope == s; };
  if (want("witt")) out["witt.json"] = dump(witt_scope());
  if (want("groups")) out["groups.json"] = dump(groups_scope());
  if (want("shtuka")) out["shtuka.json"] = dump(shtuka_scope());
  if (want("cutoff")) out["cutoff.json"] = dump(cutoff_scope());
  if (want("zips")) out["zips.json"] = dump(zips_scope());
  if (want("displays")) out["displays.json"] = dump(displays_scope());
  if (want("hecke")) out["hecke.json"] = dump(hecke_scope());
  if (out.empty()) throw std::invalid_argument("unknown oracle scope '" + scope + "'");
  return out;
}

}  // namespace forge
