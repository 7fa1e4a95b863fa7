#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "shtuka/fp_algebra.hpp"

namespace shtuka {

inline constexpr std::size_t kMaxSeriesLength = 64;

/// Element of R[[z]]/(z^N) with R = F_Q a finite field. Index i of the
/// coefficient vector holds the coefficient of z^i.
class TruncSeries {
 public:
  TruncSeries(CoeffField field, std::size_t length);
  TruncSeries(CoeffField field, std::vector<Elem> coeffs);

  static TruncSeries zero(const CoeffField& f, std::size_t length) { return TruncSeries(f, length); }
  static TruncSeries one(const CoeffField& f, std::size_t length);
  static TruncSeries constant(const CoeffField& f, std::size_t length, Elem c);
  /// c * z^k (zero if k >= length).
  static TruncSeries monomial(const CoeffField& f, std::size_t length, Elem c, std::size_t k);

  const CoeffField& field() const noexcept { return field_; }
  std::size_t length() const noexcept { return coeffs_.size(); }
  const std::vector<Elem>& coeffs() const noexcept { return coeffs_; }
  Elem operator[](std::size_t i) const { return coeffs_[i]; }

  bool is_zero() const;
  bool is_unit() const { return field_.field->is_unit(coeffs_[0]); }
  /// Index of the first nonzero coefficient, or length() for zero.
  std::size_t valuation() const;

  TruncSeries operator+(const TruncSeries& o) const;
  TruncSeries operator-(const TruncSeries& o) const;
  TruncSeries operator-() const;
  TruncSeries operator*(const TruncSeries& o) const;
  bool operator==(const TruncSeries& o) const;
  bool operator!=(const TruncSeries& o) const { return !(*this == o); }

  /// Drops (or zero-pads) to a new truncation level.
  TruncSeries truncated(std::size_t length) const;
  /// Multiplication by z^k, truncated.
  TruncSeries shifted_up(std::size_t k) const;

  std::string format() const;
  static TruncSeries parse(const CoeffField& f, std::size_t length, std::string_view text);

 private:
  void check_compatible(const TruncSeries& o) const;

  CoeffField field_;
  std::vector<Elem> coeffs_;
};

/// Coefficientwise a -> a^q.
TruncSeries ts_frobenius(const TruncSeries& f);
/// Multiplicative inverse modulo z^N; throws NonUnit when the constant term vanishes.
TruncSeries ts_inv(const TruncSeries& f);

}  // namespace shtuka
