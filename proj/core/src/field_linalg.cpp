#include "shtuka/field_linalg.hpp"

#include <sstream>

#include "shtuka/error.hpp"

namespace shtuka {

FMat FMat::identity(std::size_t n) {
  FMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FMat FMat::columns(std::size_t first, std::size_t count) const {
  FMat r(rows, count);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < count; ++j) r.at(i, j) = at(i, first + j);
  return r;
}

FMat FMat::transposed() const {
  FMat r(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
  return r;
}

FMat fmul(const FpAlgebra& F, const FMat& x, const FMat& y) {
  require(x.cols == y.rows, ErrorKind::ParameterMismatch, "matrix shapes do not compose");
  FMat r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const Elem a = x.at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) r.at(i, j) = F.add(r.at(i, j), F.mul(a, y.at(k, j)));
    }
  return r;
}

FMat fadd(const FpAlgebra& F, const FMat& x, const FMat& y) {
  require(x.rows == y.rows && x.cols == y.cols, ErrorKind::ParameterMismatch, "matrix shapes differ");
  FMat r(x.rows, x.cols);
  for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = F.add(x.a[i], y.a[i]);
  return r;
}

FMat frref(const FpAlgebra& F, FMat m, std::vector<std::size_t>* pivots) {
  std::size_t row = 0;
  if (pivots) pivots->clear();
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t piv = row;
    while (piv < m.rows && m.at(piv, col) == 0) ++piv;
    if (piv == m.rows) continue;
    for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
    const Elem inv = F.inv(m.at(row, col));
    for (std::size_t j = 0; j < m.cols; ++j) m.at(row, j) = F.mul(m.at(row, j), inv);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row || m.at(i, col) == 0) continue;
      const Elem f = m.at(i, col);
      for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(row, j)));
    }
    if (pivots) pivots->push_back(col);
    ++row;
  }
  return m;
}

std::size_t frank(const FpAlgebra& F, FMat m) {
  std::vector<std::size_t> piv;
  frref(F, std::move(m), &piv);
  return piv.size();
}

std::optional<FMat> finverse(const FpAlgebra& F, const FMat& m) {
  require(m.rows == m.cols, ErrorKind::NotInvertible, "non-square matrix");
  const std::size_t n = m.rows;
  FMat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  std::vector<std::size_t> piv;
  aug = frref(F, std::move(aug), &piv);
  if (piv.size() < n || (n > 0 && piv[n - 1] >= n)) return std::nullopt;
  return aug.columns(n, n);
}

FMat fpow_entries(const FpAlgebra& F, const FMat& m, std::uint64_t e) {
  FMat r = m;
  for (auto& x : r.a) x = F.pow(x, e);
  return r;
}

std::optional<std::vector<Elem>> fsolve_rows(const FpAlgebra& F, const FMat& A, const std::vector<Elem>& b) {
  // x A = b  <=>  A^T x^T = b^T
  const std::size_t n = A.rows, m = A.cols;
  FMat aug(m, n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = A.at(j, i);
    aug.at(i, n) = b[i];
  }
  std::vector<std::size_t> piv;
  aug = frref(F, std::move(aug), &piv);
  if (!piv.empty() && piv.back() == n) return std::nullopt;
  std::vector<Elem> x(n, 0);
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at(r, n);
  return x;
}

std::string fformat(const FpAlgebra& F, const FMat& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (j) os << ", ";
      os << F.format(m.at(i, j));
    }
  }
  os << ']';
  return os.str();
}

}  // namespace shtuka
