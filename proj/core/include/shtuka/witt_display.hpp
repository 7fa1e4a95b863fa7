#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "shtuka/shtuka_moduli.hpp"
#include "shtuka/witt.hpp"
#include "shtuka/zip.hpp"

namespace shtuka {

/// W_N(F_Q) as an explicit finite ring. Elements are indexed by their
/// coordinate tuple read as a base-Q number with a_0 most significant, so index
/// order is the lexicographic order on coordinates.
class WittRing {
 public:
  /// Cached per (field, N); UnsupportedBase unless the base is a perfect field.
  static std::shared_ptr<const WittRing> get(const AlgebraPtr& base, std::size_t N);

  const AlgebraPtr& base() const noexcept { return base_; }
  std::size_t length() const noexcept { return N_; }
  std::uint32_t size() const noexcept { return size_; }
  std::uint32_t p() const noexcept { return base_->p(); }

  std::uint32_t index(const WittVec& w) const;
  WittVec element(std::uint32_t i) const;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * size_ + b]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * size_ + b]; }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t frob(std::uint32_t a) const { return frob_[a]; }
  /// Length-preserving Verschiebung.
  std::uint32_t ver(std::uint32_t a) const { return ver_[a]; }
  std::uint32_t scale_p(std::uint32_t a) const { return ver(frob(a)); }
  bool is_unit(std::uint32_t a) const { return unit_[a]; }
  std::uint32_t inv(std::uint32_t a) const;
  bool in_ideal(std::uint32_t a) const { return !unit_[a]; }
  std::uint32_t zero() const { return 0; }
  std::uint32_t one() const { return one_; }

  WittRing(AlgebraPtr base, std::size_t N);

 private:
  AlgebraPtr base_;
  std::size_t N_;
  std::uint32_t size_, one_;
  std::vector<std::uint32_t> add_, mul_, neg_, frob_, ver_, inv_;
  std::vector<bool> unit_;
};
using WittRingPtr = std::shared_ptr<const WittRing>;

/// Dense row-major matrix over W_N(F_Q), entries as ring indices.
struct WMat {
  std::size_t rows = 0, cols = 0;
  std::vector<std::uint32_t> a;

  WMat() = default;
  WMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
  std::uint32_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  bool operator==(const WMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  bool operator!=(const WMat& o) const { return !(*this == o); }
  bool operator<(const WMat& o) const { return a < o.a; }
};

WMat wmat_identity(const WittRing& W, std::size_t n);
WMat wmul(const WittRing& W, const WMat& x, const WMat& y);
WMat wadd(const WittRing& W, const WMat& x, const WMat& y);
WMat wfrob(const WittRing& W, const WMat& x);
/// nullopt unless the reduction mod p is invertible.
std::optional<WMat> winverse(const WittRing& W, const WMat& x);
WMat wmat_from(const WittRing& W, std::size_t rows, std::size_t cols, const std::vector<WittVec>& entries);
std::string wformat(const WittRing& W, const WMat& m);

/// Pair (M, M_1) in normal form: M = L + T = W^h with L the first d
/// coordinates and M_1 = L + I T.
struct PairHD {
  WittRingPtr ring;
  std::size_t h = 0, d = 0;

  static PairHD make(const AlgebraPtr& base, std::size_t N, std::size_t h, std::size_t d);
  bool operator==(const PairHD& o) const { return ring == o.ring && h == o.h && d == o.d; }
};

/// Morphism of pairs with blocks a: L -> L', b: T -> L', c: L -> I T', e: T -> T'.
/// The c-block is recorded through y with c = V(y); y keeps the top Witt
/// coordinate that V truncates away, and M~_1 depends on it.
struct PairMor {
  PairHD src, dst;
  WMat a, b, y, e;

  static PairMor identity(const PairHD& p);
  /// The map M -> M' as a block matrix [a b; V(y) e].
  WMat matrix() const;
  /// Invertible iff a and e are invertible mod p.
  bool is_invertible() const;
};

/// Reads (a, b, c, e) off a block matrix; NotInIdeal if a c-entry is a unit.
/// The top coordinate of each V-preimage is set to 0.
PairMor pair_mor_from_matrix(const PairHD& src, const PairHD& dst, const WMat& f);

/// m o m'.
PairMor pair_mor_compose(const PairMor& m, const PairMor& mp);
PairMor pair_mor_inverse(const PairMor& m);

/// [F(a), p F(b); y, F(e)]: the induced map on M~_1 = L^F + T^F.
WMat tilde_on_morphism(const PairMor& m);

struct DisplayHD {
  PairHD pair;
  WMat psi;  // M~_1 -> M
};

bool display_validate(const DisplayHD& D);
/// Psi' tilde(f) = f Psi, with f a morphism of the underlying pairs.
bool display_morphism_valid(const DisplayHD& D, const DisplayHD& Dp, const PairMor& f);
/// The display D' with f: D -> D' an isomorphism (Psi' = f Psi tilde(f)^{-1}).
DisplayHD display_apply(const PairMor& f, const DisplayHD& D);

/// Every invertible pair morphism of p, in lexicographic order of (a, b, y, e).
std::vector<PairMor> pair_automorphisms(const PairHD& p, std::uint64_t budget = kDefaultStateBudget);

std::optional<PairMor> display_iso_test(const DisplayHD& D, const DisplayHD& Dp,
                                        std::uint64_t budget = kDefaultStateBudget);

struct DisplayClass {
  WMat psi;  // lexicographically minimal in its class
  std::uint64_t orbit_size = 0;
  std::uint64_t automorphisms = 0;
};

struct DisplayClassTable {
  PairHD pair;
  std::uint64_t display_count = 0;  // |GL_h(W_N(F_Q))|
  std::uint64_t group_order = 0;    // invertible pair morphisms
  std::vector<DisplayClass> classes;
};

/// q is the size of the residue field F_Q; p is implied.
DisplayClassTable display_classify(std::uint64_t q, std::size_t h, std::size_t d, std::size_t N,
                                   std::uint64_t budget = kDefaultStateBudget, unsigned jobs = 1);

/// N = 1 only: V = M, C^1 = L, D_0 = Psi(T^F), alpha induced by Psi. The zip
/// uses the p-Frobenius of the residue field.
FZipHD zip_of_display_N1(const DisplayHD& D);

std::string display_format(const DisplayHD& D);
DisplayHD display_parse(const std::string& text);

}  // namespace shtuka
