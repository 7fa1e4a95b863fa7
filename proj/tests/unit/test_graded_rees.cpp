#include <random>

#include "doctest.h"
#include "shtuka/error.hpp"
#include "shtuka/formats.hpp"
#include "shtuka/graded_rees.hpp"

using namespace shtuka;

namespace {

const ChainRing& w2() {
  static const ChainRing W = ChainRing::witt(FpAlgebra::prime_field(2), 2);
  return W;
}

RMatrix random_gl(const ChainRing& A, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    RMatrix m(A, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (auto& x : m.at(i, j)) x = static_cast<Elem>(rng() % A.residue()->size());
    if (m.residue_rank() == n) return m;
  }
}

FilteredChain sample_chain(const ChainRing& A, const std::vector<int>& twists, int jmin, int jmax,
                           std::mt19937_64& rng) {
  FilteredChain c = FilteredChain::twisted(A, twists[0], jmin, jmax);
  for (std::size_t i = 1; i < twists.size(); ++i)
    c = FilteredChain::direct_sum(c, FilteredChain::twisted(A, twists[i], jmin, jmax));
  std::vector<RMatrix> g;
  for (int j = jmin; j <= jmax; ++j) g.push_back(random_gl(A, c.rank(j), rng));
  return c.base_changed(g);
}

GradedReesModule sample_rees(const ChainRing& A, const ChainRing::Value& v, const std::vector<int>& twists,
                             int jmin, int jmax, std::mt19937_64& rng) {
  GradedReesModule m = GradedReesModule::twisted(A, v, twists[0], jmin, jmax);
  for (std::size_t i = 1; i < twists.size(); ++i)
    m = GradedReesModule::direct_sum(m, GradedReesModule::twisted(A, v, twists[i], jmin, jmax));
  std::vector<RMatrix> g;
  for (int j = jmin; j <= jmax; ++j) g.push_back(random_gl(A, m.rank(j), rng));
  return m.base_changed(g);
}

}  // namespace

TEST_CASE("twisted chains are filtered bundles with the expected graded pieces") {
  const FilteredChain c = FilteredChain::direct_sum(FilteredChain::twisted(w2(), -1, -3, 3),
                                                    FilteredChain::twisted(w2(), 1, -3, 3));
  CHECK(is_filtered_vb(c).ok);
  CHECK(c.rank(-3) == 2);
  CHECK(c.rank(0) == 1);
  CHECK(c.rank(2) == 0);
  std::size_t nonzero = 0;
  for (const auto& g : graded_of_filtered(c)) {
    CHECK(g.ker.invariants.empty());
    if (!g.coker.invariants.empty()) ++nonzero;
  }
  CHECK(nonzero == 2);
}

TEST_CASE("filtered bundle property: base change preserves the verdict") {
  std::mt19937_64 rng(21);
  for (const auto& A : {w2(), ChainRing::power_series(FpAlgebra::prime_field(3), 4)})
    for (int s = 0; s < 30; ++s) {
      std::vector<int> tw(1 + rng() % 3);
      for (auto& e : tw) e = static_cast<int>(rng() % 5) - 2;
      const auto c = sample_chain(A, tw, -3, 3, rng);
      const Verdict v = is_filtered_vb(c);
      CHECK_MESSAGE(v.ok, v.condition << " " << v.detail);
      const auto bad = c.with_tmap(-3, RMatrix(A, c.rank(-3), c.rank(-2)));
      CHECK_FALSE(is_filtered_vb(bad).ok);
    }
}

TEST_CASE("filtered verdicts name the failed condition") {
  const FilteredChain c = FilteredChain::twisted(w2(), 0, -2, 2);
  CHECK(is_filtered_vb(c.with_flags(false, true)).condition == "(iii)");
  RMatrix two = RMatrix::scalar(w2(), 1, w2().from_int(2));
  const Verdict v = is_filtered_vb(c.with_tmap(-2, two));
  CHECK_FALSE(v.ok);
  CHECK(v.condition == "(ii)");
  REQUIRE(v.degree.has_value());
  CHECK(*v.degree == -2);
}

TEST_CASE("Rees bundles: generated modules pass and recover their type") {
  std::mt19937_64 rng(22);
  const ChainRing A = ChainRing::power_series(FpAlgebra::prime_field(2), 6);
  const auto z = A.uniformizer_power(1);
  for (int s = 0; s < 30; ++s) {
    std::vector<int> tw(1 + rng() % 3);
    for (auto& e : tw) e = static_cast<int>(rng() % 5) - 2;
    const auto m = sample_rees(A, z, tw, -4, 4, rng);
    CHECK(is_rees_vb(m).ok);
    CHECK(normal_decomposition(m) == TypeVector::sorted(tw));
    // The t-chain never vanishes in high degree, so it is not a filtered bundle.
    const Verdict tc = is_filtered_vb(m.t_chain());
    CHECK_FALSE(tc.ok);
    CHECK(tc.condition == "(iii)");
  }
}

TEST_CASE("Rees constructor enforces tu = ut = v") {
  const auto& W = w2();
  std::vector<RMatrix> t{RMatrix::scalar(W, 1, W.one())}, u{RMatrix::scalar(W, 1, W.one())};
  CHECK_THROWS_AS(GradedReesModule(W, W.from_int(2), 0, 1, {1, 1}, t, u, true, true), Error);
}

TEST_CASE("fixed, attractor and repeller loci") {
  const ChainRing A = ChainRing::power_series(FpAlgebra::prime_field(2), 4);
  const auto unit = fix_attr_rep(A, A.one());
  CHECK_FALSE(unit.quotient.has_value());
  const auto z = fix_attr_rep(A, A.uniformizer_power(1));
  REQUIRE(z.quotient.has_value());
  CHECK(z.quotient->kind() == ChainRing::Kind::Field);
  const auto m = GradedReesModule::direct_sum(GradedReesModule::twisted(A, A.uniformizer_power(1), 0, -2, 2),
                                              GradedReesModule::twisted(A, A.uniformizer_power(1), 1, -2, 2));
  const auto r = fix_attr_rep(m);
  REQUIRE(r.pullbacks.has_value());
  std::size_t fixed_total = 0;
  for (const auto& f : r.pullbacks->fixed) fixed_total += f.free_rank(1);
  CHECK(fixed_total == 2);
}

TEST_CASE("Hecke pairs: type recovery and lattice chain") {
  const ChainRing A = ChainRing::power_series(FpAlgebra::prime_field(2), 8);
  HeckePair p{RMatrix(A, 2, 2), 1};
  p.phi0.at(0, 0) = A.uniformizer_power(3);  // z^2 after the shift
  p.phi0.at(1, 1) = A.one();                 // z^-1
  p.phi0.at(0, 1) = A.uniformizer_power(1);
  CHECK(hecke_type(p) == TypeVector({2, -1}));
  const auto rep = lattice_chain(p, -3, 3);
  CHECK(rep.verdict.ok);
  CHECK(normal_decomposition(rep.module) == TypeVector({2, -1}));
  HeckePair singular{RMatrix(A, 2, 2), 0};
  singular.phi0.at(0, 0) = A.one();
  CHECK_THROWS_AS(hecke_type(singular), Error);
}

TEST_CASE("bundle file formats round-trip") {
  std::mt19937_64 rng(23);
  for (const auto& A : {w2(), ChainRing::series(FpAlgebra::field_of_order(4), 3),
                        ChainRing::power_series(FpAlgebra::prime_field(3), 3)}) {
    CHECK(parse_ring_spec(ring_spec(A)) == A);
    const auto c = sample_chain(A, {0, 1}, -2, 2, rng);
    const std::string text = filtered_chain_format(c);
    CHECK(filtered_chain_format(filtered_chain_parse(text)) == text);
    CHECK(std::holds_alternative<FilteredChain>(bundle_parse(text)));
    const auto v = A.kind() == ChainRing::Kind::Witt ? A.from_int(2) : A.uniformizer_power(1);
    const auto m = sample_rees(A, v, {-1, 1}, -2, 2, rng);
    const std::string rt = rees_module_format(m);
    CHECK(rees_module_format(rees_module_parse(rt)) == rt);
    CHECK(std::holds_alternative<GradedReesModule>(bundle_parse(rt)));
  }
  const ChainRing P = ChainRing::power_series(FpAlgebra::prime_field(2), 6);
  HeckePair h{RMatrix::identity(P, 2), 2};
  h.phi0.at(0, 1) = P.uniformizer_power(1);
  const std::string ht = hecke_pair_format(h);
  CHECK(hecke_pair_format(hecke_pair_parse(ht)) == ht);
  CHECK(hecke_type(hecke_pair_parse(ht)) == hecke_type(h));
}

TEST_CASE("format parser rejects malformed input") {
  CHECK_THROWS_AS(parse_ring_spec("witt 6 2"), Error);
  CHECK_THROWS_AS(bundle_parse("not-a-bundle\n"), Error);
  CHECK_THROWS_AS(filtered_chain_parse("filtered-chain\nring field 2\nwindow 0 1\n"), Error);
}
