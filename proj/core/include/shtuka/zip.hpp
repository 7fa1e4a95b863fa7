#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shtuka/field_linalg.hpp"
#include "shtuka/fp_algebra.hpp"
#include "shtuka/shtuka_moduli.hpp"

namespace shtuka {

/// F-zip of type (h, d) over F_Q with the q-Frobenius: V = F_Q^h, a descending
/// flag V > C^1 > 0 (dim C^1 = d), an ascending flag 0 < D_0 < V (dim D_0 = h-d),
/// and semilinear isomorphisms gr^0_C -> gr_0^D, gr^1_C -> gr_1^D.
///
/// Subspaces are stored as row bases in reduced echelon form. Coordinates on a
/// subspace are taken in that basis; coordinates on a quotient V/S use the
/// standard vectors at the non-pivot columns of S. alpha maps a column vector x
/// to alpha * x^(q).
struct FZipHD {
  CoeffField field;
  std::size_t h = 0, d = 0;
  FMat C1;      // d x h
  FMat D0;      // (h-d) x h
  FMat alpha0;  // (h-d) x (h-d): V/C^1 -> D_0
  FMat alpha1;  // d x d: C^1 -> V/D_0

  /// Lexicographic on (C1, D0, alpha0, alpha1).
  bool operator<(const FZipHD& o) const;
  bool operator==(const FZipHD& o) const;
};

/// InvalidArgument unless the shapes, echelon forms and invertibility hold.
void zip_validate(const FZipHD& z);

/// Transport of structure along g in GL_h(F_Q).
FZipHD zip_act(const FMat& g, const FZipHD& z);

struct ZipIso {
  FMat g;  // g.Z = Z'
};

/// Exhaustive search over GL_h(F_Q); BudgetExceeded if Q^(h^2) > budget.
std::optional<ZipIso> zip_iso_test(const FZipHD& a, const FZipHD& b, std::uint64_t budget = kDefaultStateBudget);

/// Every zip of type (h, d), in increasing order.
std::vector<FZipHD> zip_enumerate(const CoeffField& field, std::size_t h, std::size_t d,
                                  std::uint64_t budget = kDefaultStateBudget);

struct ZipClass {
  FZipHD rep;  // minimal element of the orbit
  std::uint64_t orbit_size = 0;
  std::uint64_t automorphisms = 0;
};

struct ZipClassTable {
  CoeffField field;
  std::size_t h = 0, d = 0;
  std::uint64_t zip_count = 0;
  std::uint64_t group_order = 0;
  std::vector<ZipClass> classes;
};

ZipClassTable zip_classify(const CoeffField& field, std::size_t h, std::size_t d,
                           std::uint64_t budget = kDefaultStateBudget);

/// Replaces C by its Frobenius pullback (entries of C1 raised to the q-th power).
FZipHD zip_twist(const FZipHD& z);

/// mu_d = (1, ..., 1, 0, ..., 0) with d ones; TypeMismatch for other types.
std::size_t minuscule_d(const TypeVector& mu);

/// C^1 = span(e_1..e_d), D_0 = g.span(e_{d+1}..e_h), alpha induced by g.
FZipHD shtuka1_to_zip(const TruncShtuka& s);
/// Moves C^1 to the standard position and reads g off alpha.
TruncShtuka zip_to_shtuka1(const FZipHD& z);

/// Zip attached to an invertible g over F_Q with C^1 standard (shared by the
/// shtuka and display comparisons).
FZipHD zip_from_matrix(const CoeffField& field, std::size_t d, const FMat& g);

/// Every reduced echelon basis of a k-dimensional subspace of F_Q^h.
std::vector<FMat> subspaces(const FpAlgebra& F, std::size_t h, std::size_t k);
/// Every invertible n x n matrix over F_Q, in lexicographic order.
std::vector<FMat> general_linear(const FpAlgebra& F, std::size_t n, std::uint64_t budget);

std::string zip_format(const FZipHD& z);
FZipHD zip_parse(const std::string& text);

}  // namespace shtuka
