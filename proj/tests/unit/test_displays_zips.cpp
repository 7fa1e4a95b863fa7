#include <random>
#include <set>

#include "doctest.h"
#include "shtuka/error.hpp"
#include "shtuka/root_data.hpp"
#include "shtuka/witt_display.hpp"
#include "shtuka/zip.hpp"

using namespace shtuka;

namespace {

std::uint64_t total(const ZipClassTable& t) {
  std::uint64_t n = 0;
  for (const auto& c : t.classes) n += c.orbit_size;
  return n;
}

WMat random_gl(const WittRing& W, std::size_t h, std::mt19937_64& rng) {
  for (;;) {
    WMat m(h, h);
    for (auto& x : m.a) x = static_cast<std::uint32_t>(rng() % W.size());
    if (winverse(W, m)) return m;
  }
}

PairMor random_pair_auto(const PairHD& P, std::mt19937_64& rng) {
  for (;;) {
    WMat f = random_gl(*P.ring, P.h, rng);
    // lower-left block must lie in p W
    for (std::size_t i = P.d; i < P.h; ++i)
      for (std::size_t j = 0; j < P.d; ++j) f.at(i, j) = P.ring->scale_p(f.at(i, j));
    const PairMor m = pair_mor_from_matrix(P, P, f);
    if (m.is_invertible()) return m;
  }
}

}  // namespace

TEST_CASE("zip classification: orbit sizes sum to the number of zips") {
  for (auto [q, h, d] : std::vector<std::tuple<std::uint64_t, std::size_t, std::size_t>>{
           {2, 2, 1}, {3, 2, 1}, {2, 3, 1}, {2, 2, 0}, {2, 3, 2}}) {
    const auto t = zip_classify(CoeffField::make(q), h, d);
    CHECK(total(t) == t.zip_count);
    for (const auto& c : t.classes) CHECK(c.orbit_size * c.automorphisms == t.group_order);
  }
  CHECK(zip_classify(CoeffField::make(2), 2, 1).classes.size() == 2);
  CHECK(zip_classify(CoeffField::make(2), 3, 1).classes.size() == 5);
}

TEST_CASE("zip action, isomorphism test and text format") {
  const CoeffField F = CoeffField::make(3);
  const auto zips = zip_enumerate(F, 2, 1);
  const auto G = general_linear(*F.field, 2, kDefaultStateBudget);
  std::mt19937_64 rng(41);
  for (int s = 0; s < 100; ++s) {
    const auto& z = zips[rng() % zips.size()];
    const auto& g = G[rng() % G.size()];
    const FZipHD gz = zip_act(g, z);
    zip_validate(gz);
    const auto iso = zip_iso_test(z, gz);
    REQUIRE(iso.has_value());
    CHECK(zip_act(iso->g, z) == gz);
    CHECK(zip_parse(zip_format(z)) == z);
  }
}

TEST_CASE("zips and 1-truncated shtukas correspond") {
  const GroupParams P(CoeffField::make(2), TypeVector({1, 0}), 1);
  const auto t = shtuka_classify(P);
  std::set<FZipHD> seen;
  for (const auto& c : t.classes) {
    const TruncShtuka s{c.rep, P.mu};
    const FZipHD z = shtuka1_to_zip(s);
    zip_validate(z);
    CHECK(zip_to_shtuka1(z).g == s.g);
    seen.insert(z);
  }
  CHECK(seen.size() == t.class_count());
  CHECK(minuscule_d(TypeVector({1, 1, 0})) == 2);
  CHECK_THROWS_AS(minuscule_d(TypeVector({2, 0})), Error);
}

TEST_CASE("subspace and GL enumeration sizes") {
  const auto F = FpAlgebra::prime_field(2);
  CHECK(subspaces(*F, 3, 1).size() == 7);
  CHECK(subspaces(*F, 4, 2).size() == 35);
  CHECK(general_linear(*F, 3, kDefaultStateBudget).size() == 168);
}

TEST_CASE("pair morphisms compose and invert") {
  const PairHD P = PairHD::make(FpAlgebra::prime_field(2), 2, 2, 1);
  std::mt19937_64 rng(42);
  for (int s = 0; s < 200; ++s) {
    const PairMor a = random_pair_auto(P, rng), b = random_pair_auto(P, rng);
    const PairMor ab = pair_mor_compose(a, b);
    CHECK(ab.matrix() == wmul(*P.ring, a.matrix(), b.matrix()));
    CHECK(pair_mor_compose(a, pair_mor_inverse(a)).matrix() == wmat_identity(*P.ring, 2));
    CHECK(tilde_on_morphism(ab) == wmul(*P.ring, tilde_on_morphism(a), tilde_on_morphism(b)));
  }
}

TEST_CASE("display transport and isomorphism test") {
  const PairHD P = PairHD::make(FpAlgebra::prime_field(2), 2, 2, 1);
  std::mt19937_64 rng(43);
  for (int s = 0; s < 50; ++s) {
    const DisplayHD D{P, random_gl(*P.ring, 2, rng)};
    CHECK(display_validate(D));
    const PairMor f = random_pair_auto(P, rng);
    const DisplayHD E = display_apply(f, D);
    CHECK(display_morphism_valid(D, E, f));
    const auto iso = display_iso_test(D, E);
    REQUIRE(iso.has_value());
    CHECK(display_morphism_valid(D, E, *iso));
    CHECK(display_parse(display_format(D)).psi == D.psi);
  }
}

TEST_CASE("display counts and the link to zips at N = 1") {
  const auto t1 = display_classify(2, 2, 1, 1);
  CHECK(t1.classes.size() == 2);
  const auto t2 = display_classify(2, 2, 1, 2);
  CHECK(t2.classes.size() == 8);
  std::uint64_t sum = 0;
  for (const auto& c : t2.classes) sum += c.orbit_size;
  CHECK(sum == t2.display_count);
  const auto zt = zip_classify(CoeffField::make(2), 2, 1);
  std::set<std::size_t> zip_classes;
  for (const auto& c : t1.classes) {
    const FZipHD z = zip_of_display_N1(DisplayHD{t1.pair, c.psi});
    for (std::size_t i = 0; i < zt.classes.size(); ++i)
      if (zip_iso_test(z, zt.classes[i].rep)) zip_classes.insert(i);
  }
  CHECK(zip_classes.size() == zt.classes.size());
}

TEST_CASE("root datum of GL_h and cutoff bounds") {
  const RootDatumGL R(4);
  CHECK(R.roots().size() == 12);
  CHECK(R.weyl_order() == 24);
  const auto b = cutoff_bounds(2, {{1, 0}});
  CHECK(b.C == 1);
  CHECK(b.isogeny_bound == 2);
  CHECK(b.isomorphism_bound == 3);
  const auto b2 = cutoff_bounds(3, parse_cocharacter_set("(2,0,-1);(1,1,0)"));
  CHECK(b2.C == 3);
  CHECK(b2.isomorphism_bound == 7);
  CHECK(dominance_check({2, 1, 1}));
  CHECK_FALSE(dominance_check({0, 1}));
  CHECK_THROWS_AS(cutoff_bounds(2, {{0, 1}}), Error);
  CHECK_THROWS_AS(cutoff_bounds(2, {{1, 0, 0}}), Error);
}

TEST_CASE("cutoff bound property: C is the spread of the cocharacters") {
  std::mt19937_64 rng(44);
  for (int s = 0; s < 200; ++s) {
    const std::size_t h = 1 + rng() % 5;
    std::vector<std::vector<int>> S(1 + rng() % 3);
    int spread = 0;
    for (auto& xi : S) {
      xi.resize(h);
      for (auto& x : xi) x = static_cast<int>(rng() % 9) - 4;
      std::sort(xi.rbegin(), xi.rend());
      spread = std::max(spread, xi.front() - xi.back());
    }
    const auto b = cutoff_bounds(h, S);
    CHECK(b.C == spread);
    CHECK(b.isogeny_bound == b.C + 1);
    CHECK(b.isomorphism_bound == 2 * b.C + 1);
  }
}
