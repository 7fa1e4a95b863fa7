#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shtuka/chain_ring.hpp"
#include "shtuka/type_vector.hpp"

namespace shtuka {

/// Outcome of a bundle criterion. On failure `condition` names the violated
/// condition and `degree` the first offending j.
struct Verdict {
  bool ok = true;
  std::string condition;
  std::optional<int> degree;
  std::string detail;

  static Verdict pass() { return {}; }
  static Verdict fail(std::string condition, std::optional<int> degree, std::string detail) {
    return {false, std::move(condition), degree, std::move(detail)};
  }
};

/// A filtered module ... -> M_{j+1} -t-> M_j -> ... with free M_j, stored on a
/// window [jmin, jmax]. Below the window M_j = M_{jmin} with t the identity when
/// `t_iso_below`, otherwise M_j = 0. Above it M_j = 0 when `zero_above`,
/// otherwise M_j = M_{jmax} with t the identity.
class FilteredChain {
 public:
  /// tmaps[k] is t: M_{jmin+k+1} -> M_{jmin+k}, a rank(jmin+k) x rank(jmin+k+1) matrix.
  FilteredChain(ChainRing base, int jmin, int jmax, std::vector<std::size_t> ranks, std::vector<RMatrix> tmaps,
                bool t_iso_below, bool zero_above);

  /// The filtered line bundle O(e): M_j = A for j <= e and 0 above.
  static FilteredChain twisted(const ChainRing& base, int e, int jmin, int jmax);
  static FilteredChain direct_sum(const FilteredChain& a, const FilteredChain& b);
  /// Same module on a larger window (needs the boundary flags).
  FilteredChain extended(int jmin, int jmax) const;
  /// Replace the basis of each M_j by g_j (g[k] acts on M_{jmin+k}).
  FilteredChain base_changed(const std::vector<RMatrix>& g) const;

  const ChainRing& base() const noexcept { return base_; }
  int jmin() const noexcept { return jmin_; }
  int jmax() const noexcept { return jmax_; }
  bool t_iso_below() const noexcept { return t_iso_below_; }
  bool zero_above() const noexcept { return zero_above_; }
  std::size_t rank(int j) const;
  /// t: M_{j+1} -> M_j for any j (boundary behaviour from the flags).
  RMatrix t(int j) const;

  FilteredChain with_flags(bool t_iso_below, bool zero_above) const;
  FilteredChain with_tmap(int j, RMatrix m) const;

 private:
  ChainRing base_;
  int jmin_, jmax_;
  std::vector<std::size_t> ranks_;
  std::vector<RMatrix> tmaps_;
  bool t_iso_below_, zero_above_;
};

/// Graded module over the Rees algebra A[t,u]/(tu - v): free M_j with
/// t: M_{j+1} -> M_j and u: M_j -> M_{j+1} such that t u = u t = v. Below the
/// window t is the identity and u is v (when `t_iso_below`); above it u is the
/// identity and t is v (when `u_iso_above`).
class GradedReesModule {
 public:
  /// tmaps[k]: M_{jmin+k+1} -> M_{jmin+k}; umaps[k]: M_{jmin+k} -> M_{jmin+k+1}.
  /// Throws InvalidArgument if t u or u t differs from v.
  GradedReesModule(ChainRing base, ChainRing::Value v, int jmin, int jmax, std::vector<std::size_t> ranks,
                   std::vector<RMatrix> tmaps, std::vector<RMatrix> umaps, bool t_iso_below, bool u_iso_above);

  /// O(e): M_j = Fil^{j-e}, i.e. t = id, u = v below e and t = v, u = id from e on.
  static GradedReesModule twisted(const ChainRing& base, const ChainRing::Value& v, int e, int jmin, int jmax);
  static GradedReesModule direct_sum(const GradedReesModule& a, const GradedReesModule& b);
  GradedReesModule extended(int jmin, int jmax) const;
  GradedReesModule base_changed(const std::vector<RMatrix>& g) const;
  GradedReesModule with_flags(bool t_iso_below, bool u_iso_above) const;

  const ChainRing& base() const noexcept { return base_; }
  const ChainRing::Value& v() const noexcept { return v_; }
  int jmin() const noexcept { return jmin_; }
  int jmax() const noexcept { return jmax_; }
  bool t_iso_below() const noexcept { return t_iso_below_; }
  bool u_iso_above() const noexcept { return u_iso_above_; }
  std::size_t rank(int j) const;
  RMatrix t(int j) const;
  RMatrix u(int j) const;
  /// The underlying chain of t-maps on [jmin, jmax + 1], so that the boundary
  /// map t = v into M_{jmax} is included; zero_above is false.
  FilteredChain t_chain() const;

 private:
  ChainRing base_;
  ChainRing::Value v_;
  int jmin_, jmax_;
  std::vector<std::size_t> ranks_;
  std::vector<RMatrix> tmaps_, umaps_;
  bool t_iso_below_, u_iso_above_;
};

/// A finitely generated module over a chain ring, as the list of valuations
/// v_i of its cyclic summands A/pi^{v_i} (v_i = length() means a free summand).
struct ModuleShape {
  std::vector<std::size_t> invariants;
  std::size_t free_rank(std::size_t length) const;
};

/// Quotients of a graded module by t-images, u-images and both.
struct ReesPullbacks {
  std::vector<int> degrees;
  std::vector<ModuleShape> attractor;  // M_j / t M_{j+1}
  std::vector<ModuleShape> repeller;   // M_j / u M_{j-1}
  std::vector<ModuleShape> fixed;      // M_j / (t M_{j+1} + u M_{j-1})
};

struct AttractorTriple {
  std::string fixed;      // B^0 = A/(v)
  std::string repeller;   // B^- = R[t]
  std::string attractor;  // B^+ = Sym_R
  std::optional<ChainRing> quotient;  // R = A/(v), absent when R = 0
  std::optional<ReesPullbacks> pullbacks;
};

AttractorTriple fix_attr_rep(const ChainRing& base, const ChainRing::Value& v);
AttractorTriple fix_attr_rep(const GradedReesModule& m);

Verdict is_filtered_vb(const FilteredChain& c);
Verdict is_rees_vb(const GradedReesModule& m);

/// Cokernel and kernel of t: M_{j+1} -> M_j, degree by degree.
struct GradedHomology {
  int degree;
  ModuleShape coker;         // H^0_j
  ModuleShape ker;           // H^{-1}_j
  RMatrix kernel_generators; // columns generate Ker(t) inside M_{j+1}
};
std::vector<GradedHomology> graded_of_filtered(const FilteredChain& c);

/// Multiset of twists e_i with m = (+) O(e_i), sorted decreasingly. NotABundle
/// unless is_rees_vb(m) holds.
TypeVector normal_decomposition(const GradedReesModule& m);

/// Gluing datum (E, E', Phi) on the punctured Rees stack with E = E' = A^h,
/// A = F_q[[z]] at precision K. Phi = z^{-denominator} * phi0.
struct HeckePair {
  RMatrix phi0;
  int denominator = 0;

  std::size_t h() const { return phi0.rows(); }
  std::size_t precision() const { return phi0.ring().length(); }
};

/// Invariant-factor exponents of Phi over F_q[[z]]; PrecisionExhausted if a
/// pivot cannot be certified at precision K.
TypeVector hecke_type(const HeckePair& p);

struct LatticeChainReport {
  GradedReesModule module;
  std::vector<RMatrix> bases;                // column bases of M_j inside E, j in window
  std::vector<std::size_t> quotient_ranks;   // rank_R M_j / t M_{j+1}
  std::vector<std::size_t> fixed_ranks;      // rank_R M_j / (M_{j+1} + z M_{j-1})
  int t_stable_below;  // t: M_{j+1} -> M_j is an isomorphism for every j < this
  int u_stable_above;  // u: M_j -> M_{j+1} is an isomorphism for every j >= this
  Verdict verdict;
};

/// M_j = z^j Phi^{-1}(E') intersected with E, with t the inclusion and u
/// multiplication by z.
LatticeChainReport lattice_chain(const HeckePair& p, int jmin, int jmax);

}  // namespace shtuka
