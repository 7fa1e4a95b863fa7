#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace shtuka {

/// Element of a finite F_p-algebra, encoded as sum_i c_i p^i over the
/// coefficients of its polynomial representative (c_0 is the constant term).
using Elem = std::uint32_t;

/// F_p[x]/(m(x)) for a monic m. Two shapes are supported: m irreducible
/// (the field F_{p^deg}) and m = x^k (the non-reduced algebra F_p[x]/(x^k)).
class FpAlgebra {
 public:
  enum class Kind { Field, Truncated };

  static std::shared_ptr<const FpAlgebra> prime_field(std::uint32_t p);
  /// F_{p^deg} with the lexicographically smallest monic irreducible modulus.
  static std::shared_ptr<const FpAlgebra> field(std::uint32_t p, std::uint32_t deg);
  /// F_p[x]/(modulus); modulus given low-to-high, monic, checked irreducible.
  static std::shared_ptr<const FpAlgebra> field_with_modulus(std::uint32_t p,
                                                             std::vector<std::uint32_t> modulus);
  /// F_q for q a prime power.
  static std::shared_ptr<const FpAlgebra> field_of_order(std::uint64_t q);
  static std::shared_ptr<const FpAlgebra> truncated(std::uint32_t p, std::uint32_t k);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return deg_; }
  std::uint32_t size() const noexcept { return size_; }
  Kind kind() const noexcept { return kind_; }
  bool is_field() const noexcept { return kind_ == Kind::Field; }
  /// Frobenius x -> x^p is bijective.
  bool is_perfect() const noexcept { return kind_ == Kind::Field || deg_ == 1; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return deg_ == 0 ? 0 : 1; }
  Elem from_int(std::int64_t v) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem pow(Elem a, std::uint64_t e) const;
  bool is_unit(Elem a) const;
  /// Throws NonUnit for non-units.
  Elem inv(Elem a) const;
  Elem frobenius(Elem a) const { return pow(a, p_); }
  /// Inverse of x -> x^p; only defined on perfect algebras.
  Elem frobenius_inverse(Elem a) const;

  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(const std::vector<std::uint32_t>& d) const;

  /// Integer for prime fields, polynomial string "x^2+x+1" otherwise.
  std::string format(Elem a) const;
  /// Accepts an encoded integer or a polynomial string in x.
  Elem parse(std::string_view text) const;

  /// A short description such as "F_4" or "F_2[x]/(x^2)".
  std::string name() const;

  bool same_as(const FpAlgebra& other) const noexcept {
    return p_ == other.p_ && kind_ == other.kind_ && modulus_ == other.modulus_;
  }

  FpAlgebra(std::uint32_t p, std::vector<std::uint32_t> modulus, Kind kind);

 private:
  Elem mul_slow(Elem a, Elem b) const;

  std::uint32_t p_;
  std::uint32_t deg_;
  std::uint32_t size_;
  Kind kind_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pow_p_;  // p^i
  std::vector<Elem> add_table_;
  std::vector<Elem> mul_table_;
  std::vector<Elem> inv_table_;
  std::vector<Elem> frob_inv_table_;
};

using AlgebraPtr = std::shared_ptr<const FpAlgebra>;

bool is_prime(std::uint64_t n);
/// Returns (p, k) with q = p^k; throws InvalidArgument if q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q);

/// A coefficient field F_Q together with the size q of the constant field
/// kappa = F_q inside it. The Frobenius on coefficients is a -> a^q.
struct CoeffField {
  AlgebraPtr field;
  std::uint64_t q = 0;

  static CoeffField make(std::uint64_t q, std::uint32_t tower_degree = 1);
  Elem frob(Elem a) const { return field->pow(a, q); }
  Elem frob_inverse(Elem a) const;
  bool operator==(const CoeffField& o) const {
    return q == o.q && field->same_as(*o.field);
  }
};

}  // namespace shtuka
