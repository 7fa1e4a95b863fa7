#include <numeric>

#include "doctest.h"
#include "shtuka/error.hpp"
#include "shtuka/shtuka_moduli.hpp"

using namespace shtuka;

namespace {

GroupParams params(std::uint64_t q, std::uint32_t m, std::vector<int> mu, std::size_t N) {
  return GroupParams(CoeffField::make(q, m), TypeVector(std::move(mu)), N);
}

std::vector<std::int32_t> partition_of(const GroupParams& P, Strategy s, ActionConvention c) {
  ClassifyOptions o;
  o.strategy = s;
  o.convention = c;
  o.keep_lookup = true;
  return shtuka_classify(P, o).class_of;
}

std::uint64_t orbit_total(const OrbitTable& t) {
  std::uint64_t n = 0;
  for (const auto& c : t.classes) n += c.orbit_size;
  return n;
}

}  // namespace

TEST_CASE("orbit partitions agree across strategies and conventions") {
  for (std::size_t N : {1u, 2u}) {
    const auto P = params(2, 1, {1, 0}, N);
    const auto ref = partition_of(P, Strategy::Full, ActionConvention::InverseOfSigma);
    CHECK(partition_of(P, Strategy::Bfs, ActionConvention::InverseOfSigma) == ref);
    CHECK(partition_of(P, Strategy::Full, ActionConvention::SigmaOfInverse) == ref);
    CHECK(partition_of(P, Strategy::Bfs, ActionConvention::SigmaOfInverse) == ref);
    const auto t = shtuka_classify(P);
    CHECK(orbit_total(t) == 6 * (N == 1 ? 1 : 16));
  }
}

TEST_CASE("lift strategy matches bfs") {
  for (auto [q, m, mu, N] : std::vector<std::tuple<std::uint64_t, std::uint32_t, std::vector<int>, std::size_t>>{
           {2, 1, {1, 0}, 3}, {2, 2, {1, 0}, 2}, {3, 1, {1, 0}, 2}, {2, 1, {2, 0}, 3}, {2, 1, {1, 1, 0}, 2}}) {
    CAPTURE(N);
    const auto P = params(q, m, mu, N);
    ClassifyOptions lift;
    lift.strategy = Strategy::Lift;
    const auto a = shtuka_classify(P);
    const auto b = shtuka_classify(P, lift);
    REQUIRE(a.class_count() == b.class_count());
    for (std::size_t i = 0; i < a.class_count(); ++i) {
      CHECK(a.classes[i].rep == b.classes[i].rep);
      CHECK(a.classes[i].orbit_size == b.classes[i].orbit_size);
    }
    CHECK(orbit_total(b) == a.space_order);
  }
}

TEST_CASE("canonicalize returns the class representative") {
  const auto P = params(2, 1, {1, 0}, 2);
  ClassifyOptions o;
  o.keep_lookup = true;
  const auto t = shtuka_classify(P, o);
  for (std::uint64_t k = 0; k < t.class_of.size(); k += 7) {
    if (t.class_of[k] < 0) continue;
    const auto g = LoopMat::from_key(P.field, P.h, P.N, k);
    CHECK(shtuka_canonicalize(P, g) == t.classes[static_cast<std::size_t>(t.class_of[k])].rep);
  }
}

TEST_CASE("shtuka_act is a left action") {
  const auto P = params(3, 1, {1, 0}, 2);
  const auto gens = dg_generators(P);
  const TruncShtuka s{LoopMat::from_key(P.field, P.h, P.N, 0x1234 % loop_space_size(P.field, 2, 2)) +
                          LoopMat::identity(P.field, 2, 2),
                      P.mu};
  if (!s.g.is_invertible()) return;
  for (std::size_t i = 0; i + 1 < gens.size(); ++i) {
    const auto lhs = shtuka_act(dg_mul(gens[i], gens[i + 1]), s);
    const auto rhs = shtuka_act(gens[i], shtuka_act(gens[i + 1], s));
    CHECK(lhs.g == rhs.g);
  }
  CHECK_THROWS_AS(shtuka_act(DisplayGroupElem::identity(params(3, 1, {1, 0}, 1)), s), Error);
}

TEST_CASE("truncation and cutoff") {
  const auto P = params(2, 1, {1, 0}, 1);
  const auto r = shtuka_truncation_analysis(P);
  CHECK(r.surjective);
  ClassifyOptions lift;
  lift.strategy = Strategy::Lift;
  const auto r2 = shtuka_truncation_analysis(P, lift);
  CHECK(r2.image == r.image);
  const auto t = cutoff_experiment(2, TypeVector({1, 0}), 2, {1}, lift);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].class_counts.size() == 3);
  CHECK(t.bounds.C == 1);
}

TEST_CASE("budget and parse errors") {
  ClassifyOptions o;
  o.max_states = 10;
  CHECK_THROWS_AS(shtuka_classify(params(2, 1, {1, 0}, 1), o), Error);
  CHECK_THROWS_AS(parse_strategy("dfs"), Error);
  CHECK(parse_convention(to_string(ActionConvention::SigmaOfInverse)) == ActionConvention::SigmaOfInverse);
}
