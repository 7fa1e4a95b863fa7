#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "shtuka/fp_algebra.hpp"

namespace shtuka {

/// Dense row-major matrix over a finite field.
struct FMat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Elem> a;

  FMat() = default;
  FMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
  static FMat identity(std::size_t n);

  Elem& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  Elem at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  bool operator==(const FMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  bool operator!=(const FMat& o) const { return !(*this == o); }
  bool operator<(const FMat& o) const { return a < o.a; }

  FMat columns(std::size_t first, std::size_t count) const;
  FMat transposed() const;
};

FMat fmul(const FpAlgebra& F, const FMat& x, const FMat& y);
FMat fadd(const FpAlgebra& F, const FMat& x, const FMat& y);
std::size_t frank(const FpAlgebra& F, FMat m);
std::optional<FMat> finverse(const FpAlgebra& F, const FMat& m);
/// Reduced row echelon form; `pivots` receives the pivot columns.
FMat frref(const FpAlgebra& F, FMat m, std::vector<std::size_t>* pivots = nullptr);
/// Entrywise map a -> a^e.
FMat fpow_entries(const FpAlgebra& F, const FMat& m, std::uint64_t e);
/// Solves x * A = b for the row vector x when b lies in the row space of A.
std::optional<std::vector<Elem>> fsolve_rows(const FpAlgebra& F, const FMat& A, const std::vector<Elem>& b);
std::string fformat(const FpAlgebra& F, const FMat& m);

}  // namespace shtuka
