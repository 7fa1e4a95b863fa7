#include <random>

#include "doctest.h"
#include "shtuka/chain_ring.hpp"
#include "shtuka/error.hpp"
#include "shtuka/fp_algebra.hpp"
#include "shtuka/trunc_series.hpp"
#include "shtuka/witt.hpp"

using namespace shtuka;

namespace {

void check_ring_axioms(const FpAlgebra& F) {
  const Elem n = F.size();
  for (Elem a = 0; a < n; ++a) {
    CHECK(F.add(a, F.neg(a)) == 0);
    CHECK(F.mul(a, F.one()) == a);
    if (F.is_unit(a)) CHECK(F.mul(a, F.inv(a)) == F.one());
    for (Elem b = 0; b < n; ++b) {
      CHECK(F.add(a, b) == F.add(b, a));
      CHECK(F.mul(a, b) == F.mul(b, a));
      for (Elem c = 0; c < n; c += 3) {
        CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
        CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
      }
    }
  }
}

}  // namespace

TEST_CASE("finite fields and truncated algebras satisfy the ring axioms") {
  check_ring_axioms(*FpAlgebra::field_of_order(4));
  check_ring_axioms(*FpAlgebra::field_of_order(9));
  check_ring_axioms(*FpAlgebra::truncated(3, 2));
  check_ring_axioms(*FpAlgebra::truncated(2, 3));
}

TEST_CASE("frobenius is an automorphism of a perfect field") {
  const auto F = FpAlgebra::field_of_order(8);
  for (Elem a = 0; a < F->size(); ++a) {
    CHECK(F->frobenius_inverse(F->frobenius(a)) == a);
    CHECK(F->pow(a, 8) == a);
  }
  const auto T = FpAlgebra::truncated(2, 2);
  CHECK_FALSE(T->is_perfect());
  CHECK(T->frobenius(2) == 0);
}

TEST_CASE("field construction rejects non prime powers") {
  CHECK_THROWS_AS(FpAlgebra::field_of_order(6), Error);
  CHECK_THROWS_AS(FpAlgebra::prime_field(9), Error);
  CHECK(prime_power(27) == std::pair<std::uint32_t, std::uint32_t>{3, 3});
  CHECK(is_prime(101));
  CHECK_FALSE(is_prime(91));
}

TEST_CASE("element formatting round-trips") {
  for (auto F : {FpAlgebra::field_of_order(9), FpAlgebra::truncated(3, 3), FpAlgebra::prime_field(5)})
    for (Elem a = 0; a < F->size(); ++a) CHECK(F->parse(F->format(a)) == a);
}

TEST_CASE("truncated series inversion and errors") {
  const CoeffField F = CoeffField::make(3);
  std::mt19937_64 rng(11);
  for (int s = 0; s < 200; ++s) {
    std::vector<Elem> c(6);
    for (auto& x : c) x = static_cast<Elem>(rng() % 3);
    if (c[0] == 0) c[0] = 1;
    const TruncSeries f(F, c);
    CHECK(f * ts_inv(f) == TruncSeries::one(F, 6));
    CHECK(TruncSeries::parse(F, 6, f.format()) == f);
  }
  CHECK_THROWS_AS(ts_inv(TruncSeries::monomial(F, 4, 1, 1)), Error);
  CHECK_THROWS_AS(TruncSeries::one(F, 3) + TruncSeries::one(F, 4), Error);
  const TruncSeries z2 = TruncSeries::monomial(F, 5, 2, 2);
  CHECK(z2.valuation() == 2);
  CHECK((z2 * z2 * z2).is_zero());
}

TEST_CASE("Witt chain ring W_3(F_2) is Z/8") {
  const ChainRing W = ChainRing::witt(FpAlgebra::prime_field(2), 3);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      CHECK(W.add(W.from_int(a), W.from_int(b)) == W.from_int((a + b) % 8));
      CHECK(W.mul(W.from_int(a), W.from_int(b)) == W.from_int((a * b) % 8));
    }
  CHECK(W.valuation(W.from_int(4)) == 2);
  CHECK(W.mul(W.inv(W.from_int(3)), W.from_int(3)) == W.one());
  CHECK(W.divide(W.from_int(6), W.from_int(2)) == W.from_int(3));
  CHECK_THROWS_AS(W.inv(W.from_int(2)), Error);
  CHECK_THROWS_AS(W.divide(W.from_int(2), W.from_int(4)), Error);
}

TEST_CASE("chain rings format and parse") {
  const auto F4 = FpAlgebra::field_of_order(4);
  for (const auto& A : {ChainRing::witt(F4, 2), ChainRing::power_series(F4, 3), ChainRing::series(F4, 2),
                        ChainRing::field(F4)}) {
    std::mt19937_64 rng(5);
    for (int s = 0; s < 50; ++s) {
      ChainRing::Value v = A.zero();
      for (auto& x : v) x = static_cast<Elem>(rng() % 4);
      CHECK(A.parse(A.format(v)) == v);
    }
  }
}

TEST_CASE("Smith form diagonalizes over a chain ring") {
  const ChainRing A = ChainRing::power_series(FpAlgebra::prime_field(2), 4);
  std::mt19937_64 rng(3);
  for (int s = 0; s < 100; ++s) {
    RMatrix m(A, 3, 2);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        auto& v = m.at(i, j);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = static_cast<Elem>(rng() % 2) * (k > 0 || rng() % 3 == 0);
      }
    const SmithForm sf = smith_form(m);
    CHECK(sf.P * m * sf.Q == sf.D);
    CHECK(sf.P.residue_rank() == 3);
    CHECK(sf.Q.residue_rank() == 2);
    for (std::size_t i = 0; i + 1 < sf.valuations.size(); ++i) CHECK(sf.valuations[i] <= sf.valuations[i + 1]);
  }
}

TEST_CASE("matrix inverse") {
  const ChainRing W = ChainRing::witt(FpAlgebra::prime_field(3), 2);
  RMatrix m(W, 2, 2);
  m.at(0, 0) = W.from_int(1);
  m.at(0, 1) = W.from_int(3);
  m.at(1, 0) = W.from_int(2);
  m.at(1, 1) = W.from_int(4);
  CHECK(m * m.inverse() == RMatrix::identity(W, 2));
  m.at(1, 1) = W.from_int(6);
  CHECK_THROWS_AS(m.inverse(), Error);
}

TEST_CASE("Witt vectors over a non-perfect base") {
  const auto B = FpAlgebra::truncated(2, 2);
  std::mt19937_64 rng(7);
  for (int s = 0; s < 200; ++s) {
    std::vector<Elem> a(3), b(3);
    for (auto& x : a) x = static_cast<Elem>(rng() % 4);
    for (auto& x : b) x = static_cast<Elem>(rng() % 4);
    const WittVec x(B, a), y(B, b);
    CHECK(x + y == y + x);
    CHECK(x * y == y * x);
    CHECK((x - y) + y == x);
    CHECK(witt_neg(x) + x == WittVec::zero(B, 3));
    if (x.is_unit()) CHECK(x * witt_inv(x) == WittVec::one(B, 3));
    CHECK(witt_F(x * y) == witt_F(x) * witt_F(y));
  }
}

TEST_CASE("Teichmuller lifts are multiplicative") {
  const auto F = FpAlgebra::field_of_order(9);
  for (Elem a = 0; a < 9; ++a)
    for (Elem b = 0; b < 9; ++b)
      CHECK(WittVec::teichmuller(F, 3, a) * WittVec::teichmuller(F, 3, b) ==
            WittVec::teichmuller(F, 3, F->mul(a, b)));
}

TEST_CASE("Witt length limits") {
  CHECK_THROWS_AS(witt_laws(2, kDefaultMaxWittLength + 1), Error);
  const auto& L = witt_laws(2, 2);
  CHECK(L.sum.size() == 2);
  CHECK(L.prod.size() == 2);
  const auto F = FpAlgebra::prime_field(2);
  CHECK_THROWS_AS(WittVec::one(F, 2) + WittVec::one(F, 3), Error);
}
