#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "shtuka/fp_algebra.hpp"

namespace shtuka {

/// A finite chain ring with residue field F_q: the field itself, F_q[z]/(z^K),
/// F_q[[z]] known to precision K, or W_N(F_q). Every element is a unit times a
/// power of the uniformizer (z, resp. p). Elements are coefficient vectors of
/// length length(): series coefficients or Witt coordinates.
class ChainRing {
 public:
  enum class Kind { Field, Series, PowerSeries, Witt };
  using Value = std::vector<Elem>;

  static ChainRing field(AlgebraPtr residue);
  /// F_q[z]/(z^K) taken literally.
  static ChainRing series(AlgebraPtr residue, std::size_t K);
  /// F_q[[z]] with every element known modulo z^K; zero means "valuation >= K".
  static ChainRing power_series(AlgebraPtr residue, std::size_t K);
  static ChainRing witt(AlgebraPtr residue, std::size_t N);

  Kind kind() const noexcept { return kind_; }
  const AlgebraPtr& residue() const noexcept { return residue_; }
  std::size_t length() const noexcept { return length_; }
  /// Regular uniformizer (F_q[[z]]): valuations below K are certified, zero is not.
  bool is_dvr_approximation() const noexcept { return kind_ == Kind::PowerSeries; }

  Value zero() const { return Value(length_, 0); }
  Value one() const;
  Value from_int(std::int64_t n) const;
  Value uniformizer_power(std::size_t k) const;
  /// Teichmueller / constant lift of a residue element.
  Value lift(Elem a) const;

  Value add(const Value& a, const Value& b) const;
  Value sub(const Value& a, const Value& b) const;
  Value neg(const Value& a) const;
  Value mul(const Value& a, const Value& b) const;

  bool is_zero(const Value& a) const;
  bool is_unit(const Value& a) const { return a[0] != 0; }
  /// Index of the first nonzero coordinate; length() for zero.
  std::size_t valuation(const Value& a) const;
  Value inv(const Value& a) const;
  /// Some c with b*c = a; requires valuation(a) >= valuation(b).
  Value divide(const Value& a, const Value& b) const;
  /// Image in the residue field.
  Elem residue_of(const Value& a) const { return a[0]; }

  std::string format(const Value& a) const;
  Value parse(std::string_view text) const;
  std::string name() const;

  bool operator==(const ChainRing& o) const {
    return kind_ == o.kind_ && length_ == o.length_ && residue_->same_as(*o.residue_);
  }

 private:
  ChainRing(Kind kind, AlgebraPtr residue, std::size_t length);
  Value shift_down(const Value& a, std::size_t k) const;

  Kind kind_;
  AlgebraPtr residue_;
  std::size_t length_;
};

/// Dense row-major matrix over a ChainRing.
class RMatrix {
 public:
  RMatrix(ChainRing ring, std::size_t rows, std::size_t cols);
  static RMatrix identity(const ChainRing& ring, std::size_t n);
  static RMatrix scalar(const ChainRing& ring, std::size_t n, const ChainRing::Value& s);

  const ChainRing& ring() const noexcept { return ring_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  ChainRing::Value& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const ChainRing::Value& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RMatrix operator*(const RMatrix& o) const;
  RMatrix operator+(const RMatrix& o) const;
  RMatrix operator-(const RMatrix& o) const;
  bool operator==(const RMatrix& o) const;
  bool operator!=(const RMatrix& o) const { return !(*this == o); }

  bool is_zero() const;
  RMatrix transposed() const;
  /// Block-diagonal sum.
  static RMatrix direct_sum(const RMatrix& a, const RMatrix& b);
  /// Columns of a followed by columns of b.
  static RMatrix hconcat(const RMatrix& a, const RMatrix& b);

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row_dst += c * row_src
  void add_row_multiple(std::size_t dst, std::size_t src, const ChainRing::Value& c);
  void add_col_multiple(std::size_t dst, std::size_t src, const ChainRing::Value& c);
  void scale_row(std::size_t r, const ChainRing::Value& c);
  void scale_col(std::size_t c, const ChainRing::Value& s);

  /// Residue-field rank of the reduction modulo the uniformizer.
  std::size_t residue_rank() const;
  /// Inverse of a square matrix invertible over the ring; NotInvertible otherwise.
  RMatrix inverse() const;

  std::string format() const;

 private:
  ChainRing ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<ChainRing::Value> data_;
};

/// P * A * Q = D with P, Q invertible and D diagonal whose diagonal valuations
/// are weakly increasing.
struct SmithForm {
  RMatrix P;
  RMatrix D;
  RMatrix Q;
  std::vector<std::size_t> valuations;  // diagonal valuations, length min(rows, cols)
};

/// Smith normal form by valuation-minimal pivoting. Over a DVR approximation
/// every pivot of valuation < K is certified; zero pivots are reported as K.
SmithForm smith_form(const RMatrix& a);

}  // namespace shtuka
