#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "shtuka/fp_algebra.hpp"

namespace shtuka {

inline constexpr std::size_t kDefaultMaxWittLength = 6;

/// Integer polynomial with coefficients reduced modulo a fixed power of p.
/// Monomials are exponent vectors over a fixed variable count.
struct IntPoly {
  std::map<std::vector<std::uint16_t>, std::int64_t> terms;

  std::size_t size() const { return terms.size(); }
};

/// Addition, multiplication, negation and Frobenius laws of p-typical Witt
/// vectors of length N. Variables 0..N-1 are x_0..x_{N-1}, N..2N-1 are y_0..y_{N-1}.
/// Each polynomial S_n, P_n, Neg_n is exact modulo p^(N-n); Frob_n (in x_0..x_{n+1})
/// is exact modulo p^(N-1-n).
/// Reduction of an IntPoly modulo p, ready for evaluation over an F_p-algebra.
struct ModPTerm {
  std::uint32_t coeff;  // in [1, p)
  std::vector<std::pair<std::uint16_t, std::uint32_t>> factors;  // (variable, exponent)
};
using ModPPoly = std::vector<ModPTerm>;

struct WittLaws {
  std::uint32_t p = 0;
  std::size_t N = 0;
  std::vector<IntPoly> sum;
  std::vector<IntPoly> prod;
  std::vector<IntPoly> neg;
  std::vector<IntPoly> frob;  // length N-1

  std::vector<ModPPoly> sum_mod_p;
  std::vector<ModPPoly> prod_mod_p;
  std::vector<ModPPoly> neg_mod_p;
  std::vector<ModPPoly> frob_mod_p;
};

/// Solves the ghost equations recursively. Cached after the first call; safe to
/// call concurrently. Throws Overflow if p^N or the term count leaves the budget.
const WittLaws& witt_laws(std::uint32_t p, std::size_t N,
                          std::size_t max_length = kDefaultMaxWittLength);

/// Coefficient of a monomial (exponents over 2N variables), 0 if absent.
std::int64_t coefficient(const IntPoly& f, const std::vector<std::uint16_t>& exps);

/// Truncated p-typical Witt vector (a_0, ..., a_{N-1}) over an F_p-algebra.
class WittVec {
 public:
  WittVec(AlgebraPtr base, std::vector<Elem> coords);

  static WittVec zero(const AlgebraPtr& base, std::size_t N);
  static WittVec one(const AlgebraPtr& base, std::size_t N);
  /// Teichmueller lift (a, 0, ..., 0).
  static WittVec teichmuller(const AlgebraPtr& base, std::size_t N, Elem a);
  static WittVec from_int(const AlgebraPtr& base, std::size_t N, std::int64_t n);

  const AlgebraPtr& base() const noexcept { return base_; }
  std::size_t length() const noexcept { return coords_.size(); }
  const std::vector<Elem>& coords() const noexcept { return coords_; }
  Elem operator[](std::size_t i) const { return coords_[i]; }

  bool is_zero() const;
  bool is_unit() const { return base_->is_unit(coords_[0]); }
  bool in_ideal() const { return coords_[0] == 0; }
  /// Index of the first nonzero coordinate (length() for zero).
  std::size_t valuation() const;

  WittVec truncated(std::size_t length) const;

  bool operator==(const WittVec& o) const;
  bool operator!=(const WittVec& o) const { return !(*this == o); }
  /// Lexicographic order on coordinates; used for canonical forms.
  bool operator<(const WittVec& o) const { return coords_ < o.coords_; }

  std::string format() const;
  static WittVec parse(const AlgebraPtr& base, std::size_t N, std::string_view text);

 private:
  AlgebraPtr base_;
  std::vector<Elem> coords_;
};

WittVec witt_add(const WittVec& a, const WittVec& b);
WittVec witt_mul(const WittVec& a, const WittVec& b);
WittVec witt_neg(const WittVec& a);
WittVec witt_sub(const WittVec& a, const WittVec& b);
/// n * a for an integer n (so witt_scale(a, p) is p.a).
WittVec witt_scale(const WittVec& a, std::int64_t n);
/// Inverse of a unit; throws NonUnit otherwise.
WittVec witt_inv(const WittVec& a);

inline WittVec operator+(const WittVec& a, const WittVec& b) { return witt_add(a, b); }
inline WittVec operator-(const WittVec& a, const WittVec& b) { return witt_sub(a, b); }
inline WittVec operator*(const WittVec& a, const WittVec& b) { return witt_mul(a, b); }

/// Verschiebung as the raw shift W_N -> W_{N+1}: (a_0..a_{N-1}) -> (0,a_0..a_{N-1}).
WittVec witt_V_raise(const WittVec& a);
/// Length-preserving Verschiebung: the shift followed by truncation to N.
WittVec witt_V(const WittVec& a);
/// Frobenius. Over a perfect base this is (a_i) -> (a_i^p) at length N; otherwise
/// the ghost-defined Frobenius W_N -> W_{N-1} (LengthUnderflow for N = 1).
WittVec witt_F(const WittVec& a);
/// Inverse Frobenius on a perfect base.
WittVec witt_F_inverse(const WittVec& a);
/// Unique x of length N-1 with V(x) = w, for w in I_N (NotInIdeal otherwise).
WittVec witt_v_untwist(const WittVec& w);
/// The filtration product on I: V(x).V(y) := V(xy), returned through its V-preimage xy.
WittVec witt_fil_product(const WittVec& x, const WittVec& y);

}  // namespace shtuka
