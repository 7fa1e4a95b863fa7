#include <random>
#include <set>

#include "doctest.h"
#include "shtuka/error.hpp"
#include "shtuka/loop_group.hpp"
#include "shtuka/shtuka_moduli.hpp"

using namespace shtuka;

namespace {

GroupParams params(std::uint64_t q, std::vector<int> mu, std::size_t N) {
  return GroupParams(CoeffField::make(q), TypeVector(std::move(mu)), N);
}

std::vector<DisplayGroupElem> elements(const GroupParams& P) {
  std::vector<DisplayGroupElem> out;
  dg_enumerate(P, kDefaultStateBudget, [&](const DisplayGroupElem& e) { out.push_back(e); });
  return out;
}

}  // namespace

TEST_CASE("group counts match the closed form") {
  for (auto [q, mu] : std::vector<std::pair<std::uint64_t, std::vector<int>>>{
           {2, {1, 0}}, {3, {1, 0}}, {2, {1, 1, 0}}, {2, {2, 0}}, {2, {0, 0}}, {4, {1, 0}}})
    for (std::size_t N : {1u, 2u}) {
      const auto P = params(q, mu, N);
      CAPTURE(P.describe());
      CHECK(dg_count(P, kDefaultStateBudget) == dg_predicted_count(P));
    }
  CHECK(dg_count(params(2, {1, 0}, 1), kDefaultStateBudget) == 4);
  CHECK(dg_count(params(2, {1, 0}, 2), kDefaultStateBudget, 3) == 64);
}

TEST_CASE("truncation kernel has q^{h^2} elements") {
  CHECK(dg_kernel_count(params(2, {1, 0}, 1), kDefaultStateBudget) == 16);
  CHECK(dg_kernel_count(params(3, {1, 0}, 1), kDefaultStateBudget) == 81);
  CHECK(dg_kernel_count(params(2, {1, 1, 0}, 1), kDefaultStateBudget) == 512);
}

TEST_CASE("E_N is a group and tau, sigma are homomorphisms") {
  for (const auto& P : {params(2, {1, 0}, 2), params(3, {1, 0}, 1), params(2, {2, 0}, 2)}) {
    const auto E = elements(P);
    std::mt19937_64 rng(31);
    for (int s = 0; s < 200; ++s) {
      const auto& a = E[rng() % E.size()];
      const auto& b = E[rng() % E.size()];
      const auto ab = dg_mul(a, b);
      CHECK(dg_is_invertible(P, ab.coeffs()));
      CHECK(dg_mul(a, dg_inv(a)) == DisplayGroupElem::identity(P));
      CHECK(dg_tau(ab) == dg_tau(a) * dg_tau(b));
      CHECK(dg_sigma(ab) == dg_sigma(a) * dg_sigma(b));
      CHECK(dg_membership(dg_tau(a), P.mu));
    }
    CHECK(dg_from_loop(P, LoopMat::identity(P.field, P.h, P.N + 4)) == DisplayGroupElem::identity(P));
    CHECK_THROWS_AS(dg_from_loop(P, LoopMat::identity(P.field, P.h, 1)), Error);
  }
}

TEST_CASE("index enumeration covers the group without repeats") {
  const auto P = params(2, {1, 0}, 2);
  std::set<std::vector<Elem>> seen;
  const std::uint64_t n = dg_tuple_count(P, kDefaultStateBudget);
  for (std::uint64_t i = 0; i < n; ++i)
    if (auto e = dg_from_index(P, i)) CHECK(seen.insert(e->coeffs()).second);
  CHECK(seen.size() == dg_predicted_count(P));
}

TEST_CASE("E_1 factors as centralizer times unipotents") {
  const auto P = params(3, {1, 0}, 1);
  for (const auto& e : elements(P)) {
    const auto f = dg_factorize_E1(e);
    CHECK(dg_in_subgroup(f.c, SubgroupTag::Cent));
    CHECK(dg_in_subgroup(f.u_minus, SubgroupTag::UMinus));
    CHECK(dg_in_subgroup(f.u_plus, SubgroupTag::UPlus));
    CHECK(dg_mul(dg_mul(f.c, f.u_minus), f.u_plus) == e);
  }
}

TEST_CASE("generators generate") {
  const auto P = params(2, {1, 0}, 2);
  const auto gens = dg_generators(P);
  std::set<std::vector<Elem>> reached{DisplayGroupElem::identity(P).coeffs()};
  std::vector<DisplayGroupElem> frontier{DisplayGroupElem::identity(P)};
  while (!frontier.empty()) {
    std::vector<DisplayGroupElem> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        const auto y = dg_mul(x, g);
        if (reached.insert(y.coeffs()).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  CHECK(reached.size() == dg_predicted_count(P));
}

TEST_CASE("loop matrices: inverse, truncation, keys") {
  const CoeffField F = CoeffField::make(4);
  std::mt19937_64 rng(32);
  for (int s = 0; s < 100; ++s) {
    LoopMat g(F, 2, 3);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 3; ++k) g.coeff(i, j, k) = static_cast<Elem>(rng() % 4);
    CHECK(LoopMat::from_key(F, 2, 3, g.key()) == g);
    CHECK((g * g).truncated(2) == g.truncated(2) * g.truncated(2));
    CHECK((g * g).frobenius() == g.frobenius() * g.frobenius());
    if (g.is_invertible()) CHECK(g * g.inverse() == LoopMat::identity(F, 2, 3));
  }
  CHECK(loop_space_size(F, 2, 3) == 1ull << 24);
  CHECK(gl_order(2, 2) == 6);
  CHECK(gl_order(2, 2, 2) == 96);
}

TEST_CASE("group parameter validation") {
  CHECK_THROWS_AS(params(2, {0, 1}, 1), Error);
  CHECK_THROWS_AS(params(2, {1, 0}, 0), Error);
  CHECK_THROWS_AS(dg_count(params(2, {1, 1, 0}, 2), 100), Error);
}
