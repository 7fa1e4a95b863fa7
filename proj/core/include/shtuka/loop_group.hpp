#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shtuka/fp_algebra.hpp"
#include "shtuka/trunc_series.hpp"
#include "shtuka/type_vector.hpp"

namespace shtuka {

/// h x h matrix over R_N = F_Q[z]/(z^N): a point of the truncated loop group
/// when invertible. Coefficient k of entry (i, j) lives at ((k * h) + i) * h + j,
/// so the flat coefficient vector is ordered by z-degree first, then row-major.
class LoopMat {
 public:
  LoopMat(CoeffField field, std::size_t h, std::size_t N);
  static LoopMat identity(const CoeffField& field, std::size_t h, std::size_t N);
  static LoopMat from_entries(const CoeffField& field, std::size_t h, const std::vector<TruncSeries>& entries);

  const CoeffField& field() const noexcept { return field_; }
  std::size_t h() const noexcept { return h_; }
  std::size_t N() const noexcept { return N_; }

  Elem& coeff(std::size_t i, std::size_t j, std::size_t k) { return c_[(k * h_ + i) * h_ + j]; }
  Elem coeff(std::size_t i, std::size_t j, std::size_t k) const { return c_[(k * h_ + i) * h_ + j]; }
  const std::vector<Elem>& coeffs() const noexcept { return c_; }
  TruncSeries entry(std::size_t i, std::size_t j) const;
  void set_entry(std::size_t i, std::size_t j, const TruncSeries& s);

  LoopMat operator*(const LoopMat& o) const;
  LoopMat operator+(const LoopMat& o) const;
  bool operator==(const LoopMat& o) const { return c_ == o.c_ && h_ == o.h_ && N_ == o.N_; }
  bool operator!=(const LoopMat& o) const { return !(*this == o); }
  /// Lexicographic on the flat coefficient vector (z-degree most significant).
  bool operator<(const LoopMat& o) const { return c_ < o.c_; }

  /// Invertible iff the constant-term matrix is invertible over F_Q.
  bool is_invertible() const;
  /// NotInvertible otherwise.
  LoopMat inverse() const;
  LoopMat truncated(std::size_t N) const;
  /// Coefficientwise q-power.
  LoopMat frobenius() const;

  /// Integer code of the coefficient vector, most significant digit first.
  /// Order-preserving; requires Q^(N h^2) < 2^64.
  std::uint64_t key() const;
  static LoopMat from_key(const CoeffField& field, std::size_t h, std::size_t N, std::uint64_t key);

  std::string format() const;

 private:
  CoeffField field_;
  std::size_t h_, N_;
  std::vector<Elem> c_;
};

/// Q^(N h^2) when it fits in 64 bits (BudgetExceeded otherwise).
std::uint64_t loop_space_size(const CoeffField& field, std::size_t h, std::size_t N);
/// |GL_h(F_Q[z]/(z^N))|.
std::uint64_t gl_order(std::uint64_t Q, std::size_t h, std::size_t N = 1);

/// Parameters of E_N(GL_h, mu) over F_Q with the q-Frobenius.
struct GroupParams {
  CoeffField field;
  std::size_t h = 0;
  TypeVector mu;
  std::size_t N = 1;

  GroupParams(CoeffField field, TypeVector mu, std::size_t N);
  /// m_ij = max(0, mu_j - mu_i).
  std::size_t offset(std::size_t i, std::size_t j) const;
  std::size_t block(std::size_t i) const { return block_[i]; }
  bool same_as(const GroupParams& o) const;
  GroupParams at_level(std::size_t n) const { return GroupParams(field, mu, n); }
  std::string describe() const;

 private:
  std::vector<std::size_t> block_;
};

/// Point of E_N(GL_h, mu): entry (i, j) is z^{m_ij} times a series known modulo
/// z^N, stored as its N coefficients (same flat layout as LoopMat).
class DisplayGroupElem {
 public:
  /// NotInvertible unless the diagonal mu-blocks are invertible mod z.
  DisplayGroupElem(GroupParams params, std::vector<Elem> coeffs);
  static DisplayGroupElem identity(const GroupParams& params);

  const GroupParams& params() const noexcept { return params_; }
  Elem coeff(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(k * params_.h + i) * params_.h + j];
  }
  const std::vector<Elem>& coeffs() const noexcept { return c_; }
  /// Entry (i, j) as a series at precision m_ij + N.
  TruncSeries entry(std::size_t i, std::size_t j) const;

  bool operator==(const DisplayGroupElem& o) const { return c_ == o.c_; }
  bool operator!=(const DisplayGroupElem& o) const { return c_ != o.c_; }
  std::string format() const;

 private:
  GroupParams params_;
  std::vector<Elem> c_;
};

/// Whether the diagonal mu-blocks of a coefficient vector are invertible mod z.
bool dg_is_invertible(const GroupParams& params, const std::vector<Elem>& coeffs);

DisplayGroupElem dg_mul(const DisplayGroupElem& a, const DisplayGroupElem& b);
DisplayGroupElem dg_inv(const DisplayGroupElem& a);
/// g is invertible and val(g_ij) >= m_ij (read at level N).
bool dg_membership(const LoopMat& g, const TypeVector& mu);
/// Inclusion followed by truncation mod z^N.
LoopMat dg_tau(const DisplayGroupElem& e);
/// Coefficientwise Frobenius of mu(z) e mu(z)^{-1}, truncated mod z^N.
LoopMat dg_sigma(const DisplayGroupElem& e);
/// Drops the top coefficient of every entry (level N+1 -> N).
DisplayGroupElem dg_truncate(const DisplayGroupElem& e);
/// Reads off the element of E_N represented by a matrix g over R_{N + max m}
/// whose entries satisfy val(g_ij) >= m_ij.
DisplayGroupElem dg_from_loop(const GroupParams& params, const LoopMat& g);

/// Prod |GL_{n_i}(F_Q)| * Q^(h^2 - sum n_i^2) * Q^((N-1) h^2).
std::uint64_t dg_predicted_count(const GroupParams& params);
/// Number of coefficient tuples, Q^(N h^2); BudgetExceeded above `budget`.
std::uint64_t dg_tuple_count(const GroupParams& params, std::uint64_t budget);
/// Element with the given tuple index, or nullopt when not invertible.
std::optional<DisplayGroupElem> dg_from_index(const GroupParams& params, std::uint64_t index);
/// Visits every element with tuple index in [begin, end), in index order.
void dg_enumerate_range(const GroupParams& params, std::uint64_t begin, std::uint64_t end,
                        const std::function<void(const DisplayGroupElem&)>& visit);
/// Visits every element of E_N(F_Q); BudgetExceeded if Q^(N h^2) > budget.
void dg_enumerate(const GroupParams& params, std::uint64_t budget,
                  const std::function<void(const DisplayGroupElem&)>& visit);
/// Exhaustive count of E_N(F_Q), optionally split over `jobs` threads.
std::uint64_t dg_count(const GroupParams& params, std::uint64_t budget, unsigned jobs = 1);
/// Exhaustive count of ker(E_{N+1} -> E_N).
std::uint64_t dg_kernel_count(const GroupParams& params, std::uint64_t budget, unsigned jobs = 1);

enum class SubgroupTag { Cent, UPlus, UMinus, PPlus, PMinus };
std::string to_string(SubgroupTag tag);
bool dg_in_subgroup(const DisplayGroupElem& e, SubgroupTag tag);

struct E1Factorization {
  DisplayGroupElem c;
  DisplayGroupElem u_minus;
  DisplayGroupElem u_plus;
};
/// e = c u_minus u_plus with c in Cent, u_minus in U^-, u_plus in U^+ (N = 1).
E1Factorization dg_factorize_E1(const DisplayGroupElem& e);

/// Generators of E_N: torus elements, elementary unipotents over an F_p-basis
/// of F_Q inside Cent and U^{+-}, and z^k-level unipotents at every position.
std::vector<DisplayGroupElem> dg_generators(const GroupParams& params);

}  // namespace shtuka
