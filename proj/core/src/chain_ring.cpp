#include "shtuka/chain_ring.hpp"

#include <algorithm>
#include <sstream>

#include "shtuka/error.hpp"
#include "shtuka/trunc_series.hpp"
#include "shtuka/witt.hpp"

namespace shtuka {

ChainRing::ChainRing(Kind kind, AlgebraPtr residue, std::size_t length)
    : kind_(kind), residue_(std::move(residue)), length_(length) {
  require(residue_ && residue_->is_field(), ErrorKind::UnsupportedBase, "residue ring must be a finite field");
  require(length_ >= 1, ErrorKind::InvalidArgument, "chain ring length must be positive");
}

ChainRing ChainRing::field(AlgebraPtr residue) { return ChainRing(Kind::Field, std::move(residue), 1); }

ChainRing ChainRing::series(AlgebraPtr residue, std::size_t K) {
  require(K <= kMaxSeriesLength, ErrorKind::InvalidArgument, "precision above 64");
  return ChainRing(Kind::Series, std::move(residue), K);
}

ChainRing ChainRing::power_series(AlgebraPtr residue, std::size_t K) {
  require(K <= kMaxSeriesLength, ErrorKind::InvalidArgument, "precision above 64");
  return ChainRing(Kind::PowerSeries, std::move(residue), K);
}

ChainRing ChainRing::witt(AlgebraPtr residue, std::size_t N) { return ChainRing(Kind::Witt, std::move(residue), N); }

namespace {

WittVec as_witt(const ChainRing& r, const ChainRing::Value& a) { return WittVec(r.residue(), a); }

}  // namespace

ChainRing::Value ChainRing::one() const { return lift(residue_->one()); }

ChainRing::Value ChainRing::lift(Elem a) const {
  Value v(length_, 0);
  v[0] = a;
  return v;
}

ChainRing::Value ChainRing::from_int(std::int64_t n) const {
  if (kind_ == Kind::Witt) return WittVec::from_int(residue_, length_, n).coords();
  return lift(residue_->from_int(n));
}

ChainRing::Value ChainRing::uniformizer_power(std::size_t k) const {
  Value v(length_, 0);
  if (k < length_) v[k] = residue_->one();
  return v;
}

ChainRing::Value ChainRing::add(const Value& a, const Value& b) const {
  if (kind_ == Kind::Witt) return witt_add(as_witt(*this, a), as_witt(*this, b)).coords();
  Value r(length_);
  for (std::size_t i = 0; i < length_; ++i) r[i] = residue_->add(a[i], b[i]);
  return r;
}

ChainRing::Value ChainRing::neg(const Value& a) const {
  if (kind_ == Kind::Witt) return witt_neg(as_witt(*this, a)).coords();
  Value r(length_);
  for (std::size_t i = 0; i < length_; ++i) r[i] = residue_->neg(a[i]);
  return r;
}

ChainRing::Value ChainRing::sub(const Value& a, const Value& b) const { return add(a, neg(b)); }

ChainRing::Value ChainRing::mul(const Value& a, const Value& b) const {
  if (kind_ == Kind::Witt) return witt_mul(as_witt(*this, a), as_witt(*this, b)).coords();
  Value r(length_, 0);
  for (std::size_t i = 0; i < length_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < length_; ++j) r[i + j] = residue_->add(r[i + j], residue_->mul(a[i], b[j]));
  }
  return r;
}

bool ChainRing::is_zero(const Value& a) const {
  return std::all_of(a.begin(), a.end(), [](Elem c) { return c == 0; });
}

std::size_t ChainRing::valuation(const Value& a) const {
  for (std::size_t i = 0; i < length_; ++i)
    if (a[i] != 0) return i;
  return length_;
}

ChainRing::Value ChainRing::inv(const Value& a) const {
  require(is_unit(a), ErrorKind::NonUnit, format(a) + " is not a unit in " + name());
  if (kind_ == Kind::Witt) return witt_inv(as_witt(*this, a)).coords();
  CoeffField cf{residue_, residue_->size()};
  return ts_inv(TruncSeries(cf, a)).coeffs();
}

// a / pi^k for valuation(a) >= k, padded with zeros at the top
ChainRing::Value ChainRing::shift_down(const Value& a, std::size_t k) const {
  Value r(length_, 0);
  for (std::size_t i = k; i < length_; ++i) r[i - k] = a[i];
  if (kind_ == Kind::Witt) {
    // V^k(y) = p^k F^{-k}(y), so dividing by p^k applies F^{-k} to the shifted coordinates.
    for (auto& x : r)
      for (std::size_t s = 0; s < k; ++s) x = residue_->frobenius_inverse(x);
  }
  return r;
}

ChainRing::Value ChainRing::divide(const Value& a, const Value& b) const {
  const std::size_t vb = valuation(b);
  const std::size_t va = valuation(a);
  require(vb < length_ || va >= length_, ErrorKind::NotInvertible, "division by zero");
  require(va >= vb, ErrorKind::NotInvertible, "division not exact: valuation " + std::to_string(va) + " < " +
                                                  std::to_string(vb));
  if (va >= length_) return zero();
  return mul(shift_down(a, vb), inv(shift_down(b, vb)));
}

std::string ChainRing::format(const Value& a) const {
  switch (kind_) {
    case Kind::Field: return residue_->format(a[0]);
    case Kind::Witt: return as_witt(*this, a).format();
    default: return TruncSeries(CoeffField{residue_, residue_->size()}, a).format();
  }
}

ChainRing::Value ChainRing::parse(std::string_view text) const {
  switch (kind_) {
    case Kind::Field: return {residue_->parse(text)};
    case Kind::Witt: return WittVec::parse(residue_, length_, text).coords();
    default: return TruncSeries::parse(CoeffField{residue_, residue_->size()}, length_, text).coeffs();
  }
}

std::string ChainRing::name() const {
  const std::string F = residue_->name();
  switch (kind_) {
    case Kind::Field: return F;
    case Kind::Series: return F + "[z]/(z^" + std::to_string(length_) + ")";
    case Kind::PowerSeries: return F + "[[z]] (precision " + std::to_string(length_) + ")";
    case Kind::Witt: return "W_" + std::to_string(length_) + "(" + F + ")";
  }
  return F;
}

RMatrix::RMatrix(ChainRing ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, ring_.zero()) {}

RMatrix RMatrix::identity(const ChainRing& ring, std::size_t n) { return scalar(ring, n, ring.one()); }

RMatrix RMatrix::scalar(const ChainRing& ring, std::size_t n, const ChainRing::Value& s) {
  RMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = s;
  return m;
}

RMatrix RMatrix::operator*(const RMatrix& o) const {
  require(cols_ == o.rows_ && ring_ == o.ring_, ErrorKind::ParameterMismatch, "matrix shapes do not compose");
  RMatrix r(ring_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto& a = at(i, k);
      if (ring_.is_zero(a)) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) = ring_.add(r.at(i, j), ring_.mul(a, o.at(k, j)));
    }
  return r;
}

RMatrix RMatrix::operator+(const RMatrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, ErrorKind::ParameterMismatch, "matrix shapes differ");
  RMatrix r(ring_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = ring_.add(data_[i], o.data_[i]);
  return r;
}

RMatrix RMatrix::operator-(const RMatrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, ErrorKind::ParameterMismatch, "matrix shapes differ");
  RMatrix r(ring_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = ring_.sub(data_[i], o.data_[i]);
  return r;
}

bool RMatrix::operator==(const RMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool RMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [&](const auto& v) { return ring_.is_zero(v); });
}

RMatrix RMatrix::transposed() const {
  RMatrix r(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

RMatrix RMatrix::direct_sum(const RMatrix& a, const RMatrix& b) {
  RMatrix r(a.ring_, a.rows_ + b.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) r.at(a.rows_ + i, a.cols_ + j) = b.at(i, j);
  return r;
}

RMatrix RMatrix::hconcat(const RMatrix& a, const RMatrix& b) {
  require(a.rows_ == b.rows_, ErrorKind::ParameterMismatch, "row counts differ");
  RMatrix r(a.ring_, a.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, a.cols_ + j) = b.at(i, j);
  }
  return r;
}

void RMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
}

void RMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
}

void RMatrix::add_row_multiple(std::size_t dst, std::size_t src, const ChainRing::Value& c) {
  if (ring_.is_zero(c)) return;
  for (std::size_t j = 0; j < cols_; ++j) at(dst, j) = ring_.add(at(dst, j), ring_.mul(c, at(src, j)));
}

void RMatrix::add_col_multiple(std::size_t dst, std::size_t src, const ChainRing::Value& c) {
  if (ring_.is_zero(c)) return;
  for (std::size_t i = 0; i < rows_; ++i) at(i, dst) = ring_.add(at(i, dst), ring_.mul(at(i, src), c));
}

void RMatrix::scale_row(std::size_t r, const ChainRing::Value& c) {
  for (std::size_t j = 0; j < cols_; ++j) at(r, j) = ring_.mul(c, at(r, j));
}

void RMatrix::scale_col(std::size_t c, const ChainRing::Value& s) {
  for (std::size_t i = 0; i < rows_; ++i) at(i, c) = ring_.mul(at(i, c), s);
}

std::size_t RMatrix::residue_rank() const {
  const auto& F = *ring_.residue();
  std::vector<std::vector<Elem>> m(rows_, std::vector<Elem>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m[i][j] = at(i, j)[0];
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
    std::size_t piv = rank;
    while (piv < rows_ && m[piv][col] == 0) ++piv;
    if (piv == rows_) continue;
    std::swap(m[piv], m[rank]);
    const Elem inv = F.inv(m[rank][col]);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == rank || m[i][col] == 0) continue;
      const Elem f = F.mul(m[i][col], inv);
      for (std::size_t j = col; j < cols_; ++j) m[i][j] = F.sub(m[i][j], F.mul(f, m[rank][j]));
    }
    ++rank;
  }
  return rank;
}

RMatrix RMatrix::inverse() const {
  require(rows_ == cols_, ErrorKind::NotInvertible, "non-square matrix");
  const std::size_t n = rows_;
  RMatrix a = *this;
  RMatrix inv = identity(ring_, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && !ring_.is_unit(a.at(piv, col))) ++piv;
    require(piv < n, ErrorKind::NotInvertible, "matrix is not invertible over " + ring_.name());
    a.swap_rows(piv, col);
    inv.swap_rows(piv, col);
    const auto u = ring_.inv(a.at(col, col));
    a.scale_row(col, u);
    inv.scale_row(col, u);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || ring_.is_zero(a.at(i, col))) continue;
      const auto f = ring_.neg(a.at(i, col));
      a.add_row_multiple(i, col, f);
      inv.add_row_multiple(i, col, f);
    }
  }
  return inv;
}

std::string RMatrix::format() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ", ";
      os << ring_.format(at(i, j));
    }
  }
  os << ']';
  return os.str();
}

SmithForm smith_form(const RMatrix& a) {
  const ChainRing& R = a.ring();
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  RMatrix D = a;
  RMatrix P = RMatrix::identity(R, m);
  RMatrix Q = RMatrix::identity(R, n);
  std::vector<std::size_t> vals;
  for (std::size_t k = 0; k < std::min(m, n); ++k) {
    // pivot of minimal valuation in the trailing block
    std::size_t best_v = R.length();
    std::size_t bi = k, bj = k;
    for (std::size_t i = k; i < m; ++i)
      for (std::size_t j = k; j < n; ++j) {
        const std::size_t v = R.valuation(D.at(i, j));
        if (v < best_v) {
          best_v = v;
          bi = i;
          bj = j;
        }
      }
    if (best_v == R.length()) {
      for (std::size_t r = k; r < std::min(m, n); ++r) vals.push_back(R.length());
      break;
    }
    D.swap_rows(k, bi);
    P.swap_rows(k, bi);
    D.swap_cols(k, bj);
    Q.swap_cols(k, bj);
    const auto pivot = D.at(k, k);
    for (std::size_t i = k + 1; i < m; ++i) {
      if (R.is_zero(D.at(i, k))) continue;
      const auto f = R.neg(R.divide(D.at(i, k), pivot));
      D.add_row_multiple(i, k, f);
      P.add_row_multiple(i, k, f);
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (R.is_zero(D.at(k, j))) continue;
      const auto f = R.neg(R.divide(D.at(k, j), pivot));
      D.add_col_multiple(j, k, f);
      Q.add_col_multiple(j, k, f);
    }
    vals.push_back(best_v);
  }
  return SmithForm{std::move(P), std::move(D), std::move(Q), std::move(vals)};
}

}  // namespace shtuka
