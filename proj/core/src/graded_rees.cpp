#include "shtuka/graded_rees.hpp"

#include <algorithm>
#include <map>

#include "shtuka/error.hpp"

namespace shtuka {

namespace {

std::string deg_str(int j) { return std::to_string(j); }

RMatrix zero_matrix(const ChainRing& R, std::size_t r, std::size_t c) { return RMatrix(R, r, c); }

// Invariants of A^rows / im(rel): one per row, capped at the ring length.
std::vector<std::size_t> row_invariants(const SmithForm& sf, std::size_t rows, std::size_t L) {
  std::vector<std::size_t> inv(rows, L);
  for (std::size_t i = 0; i < sf.valuations.size(); ++i) inv[i] = std::min(sf.valuations[i], L);
  return inv;
}

ModuleShape shape_from(const std::vector<std::size_t>& inv) {
  ModuleShape s;
  for (auto v : inv)
    if (v > 0) s.invariants.push_back(v);
  std::sort(s.invariants.begin(), s.invariants.end());
  return s;
}

ModuleShape quotient_shape(const RMatrix& rel) {
  const auto sf = smith_form(rel);
  return shape_from(row_invariants(sf, rel.rows(), rel.ring().length()));
}

// A free R-module M_j / im(rel) over R = A / pi^s, described by the row
// transform P and the rows that survive as R-basis vectors.
struct Quotient {
  bool free = true;
  std::size_t bad_invariant = 0;
  RMatrix P;
  std::vector<std::size_t> basis_rows;
};

Quotient free_quotient(const RMatrix& rel, std::size_t s) {
  const auto sf = smith_form(rel);
  const auto inv = row_invariants(sf, rel.rows(), rel.ring().length());
  Quotient q{true, 0, sf.P, {}};
  for (std::size_t i = 0; i < inv.size(); ++i) {
    const std::size_t v = std::min(inv[i], s);
    if (inv[i] == 0) continue;
    if (v != s || inv[i] > s) {
      q.free = false;
      q.bad_invariant = inv[i];
    }
    q.basis_rows.push_back(i);
  }
  return q;
}

// Matrix of the map induced by f: A^n -> A^m between the quotients a = A^n/.. and b = A^m/..
RMatrix induced_map(const RMatrix& f, const Quotient& src, const Quotient& dst) {
  const RMatrix full = dst.P * f * src.P.inverse();
  RMatrix r(f.ring(), dst.basis_rows.size(), src.basis_rows.size());
  for (std::size_t i = 0; i < dst.basis_rows.size(); ++i)
    for (std::size_t j = 0; j < src.basis_rows.size(); ++j) r.at(i, j) = full.at(dst.basis_rows[i], src.basis_rows[j]);
  return r;
}

enum class Injectivity { Injective, NotInjective, Unknown };

Injectivity injectivity(const RMatrix& m) {
  if (m.cols() == 0) return Injectivity::Injective;
  if (m.cols() > m.rows()) return Injectivity::NotInjective;
  const auto sf = smith_form(m);
  const auto& R = m.ring();
  for (auto v : sf.valuations) {
    if (R.is_dvr_approximation()) {
      if (v >= R.length()) return Injectivity::Unknown;
    } else if (v > 0) {
      return Injectivity::NotInjective;
    }
  }
  return Injectivity::Injective;
}

std::size_t v_valuation(const ChainRing& R, const ChainRing::Value& v) { return R.valuation(v); }

}  // namespace

std::size_t ModuleShape::free_rank(std::size_t length) const {
  return static_cast<std::size_t>(std::count(invariants.begin(), invariants.end(), length));
}

// ---------------------------------------------------------------------------
// FilteredChain

FilteredChain::FilteredChain(ChainRing base, int jmin, int jmax, std::vector<std::size_t> ranks,
                             std::vector<RMatrix> tmaps, bool t_iso_below, bool zero_above)
    : base_(std::move(base)),
      jmin_(jmin),
      jmax_(jmax),
      ranks_(std::move(ranks)),
      tmaps_(std::move(tmaps)),
      t_iso_below_(t_iso_below),
      zero_above_(zero_above) {
  require(jmin_ <= jmax_, ErrorKind::InvalidArgument, "empty window");
  const auto n = static_cast<std::size_t>(jmax_ - jmin_);
  require(ranks_.size() == n + 1, ErrorKind::InvalidArgument, "expected one rank per degree of the window");
  require(tmaps_.size() == n, ErrorKind::InvalidArgument, "expected one t-map per pair of adjacent degrees");
  for (std::size_t k = 0; k < n; ++k) {
    const auto& m = tmaps_[k];
    require(m.ring() == base_, ErrorKind::MixedRings, "t-map over a different ring");
    require(m.rows() == ranks_[k] && m.cols() == ranks_[k + 1], ErrorKind::InvalidArgument,
            "t-map at degree " + deg_str(jmin_ + static_cast<int>(k)) + " has the wrong shape");
  }
}

FilteredChain FilteredChain::twisted(const ChainRing& base, int e, int jmin, int jmax) {
  require(jmin <= e && e <= jmax, ErrorKind::InvalidArgument, "twist outside the window");
  std::vector<std::size_t> ranks;
  std::vector<RMatrix> tm;
  for (int j = jmin; j <= jmax; ++j) ranks.push_back(j <= e ? 1 : 0);
  for (int j = jmin; j < jmax; ++j) {
    const std::size_t r = ranks[j - jmin], c = ranks[j + 1 - jmin];
    tm.push_back(r && c ? RMatrix::identity(base, 1) : zero_matrix(base, r, c));
  }
  return FilteredChain(base, jmin, jmax, std::move(ranks), std::move(tm), true, true);
}

std::size_t FilteredChain::rank(int j) const {
  if (j < jmin_) return t_iso_below_ ? ranks_.front() : 0;
  if (j > jmax_) return zero_above_ ? 0 : ranks_.back();
  return ranks_[static_cast<std::size_t>(j - jmin_)];
}

RMatrix FilteredChain::t(int j) const {
  if (j >= jmin_ && j < jmax_) return tmaps_[static_cast<std::size_t>(j - jmin_)];
  if (j < jmin_ && t_iso_below_) return RMatrix::identity(base_, ranks_.front());
  if (j >= jmax_ && !zero_above_) return RMatrix::identity(base_, ranks_.back());
  return zero_matrix(base_, rank(j), rank(j + 1));
}

FilteredChain FilteredChain::extended(int jmin, int jmax) const {
  require(jmin <= jmin_ && jmax >= jmax_, ErrorKind::InvalidArgument, "extension must contain the window");
  std::vector<std::size_t> ranks;
  std::vector<RMatrix> tm;
  for (int j = jmin; j <= jmax; ++j) ranks.push_back(rank(j));
  for (int j = jmin; j < jmax; ++j) tm.push_back(t(j));
  return FilteredChain(base_, jmin, jmax, std::move(ranks), std::move(tm), t_iso_below_, zero_above_);
}

FilteredChain FilteredChain::direct_sum(const FilteredChain& a, const FilteredChain& b) {
  require(a.base_ == b.base_, ErrorKind::MixedRings, "direct sum over different rings");
  const int lo = std::min(a.jmin_, b.jmin_), hi = std::max(a.jmax_, b.jmax_);
  const auto A = a.extended(lo, hi), B = b.extended(lo, hi);
  std::vector<std::size_t> ranks;
  std::vector<RMatrix> tm;
  for (int j = lo; j <= hi; ++j) ranks.push_back(A.rank(j) + B.rank(j));
  for (int j = lo; j < hi; ++j) tm.push_back(RMatrix::direct_sum(A.t(j), B.t(j)));
  return FilteredChain(a.base_, lo, hi, std::move(ranks), std::move(tm), a.t_iso_below_ && b.t_iso_below_,
                       a.zero_above_ && b.zero_above_);
}

FilteredChain FilteredChain::base_changed(const std::vector<RMatrix>& g) const {
  require(g.size() == ranks_.size(), ErrorKind::InvalidArgument, "one base change per degree expected");
  std::vector<RMatrix> tm;
  for (std::size_t k = 0; k + 1 < g.size(); ++k) tm.push_back(g[k] * tmaps_[k] * g[k + 1].inverse());
  return FilteredChain(base_, jmin_, jmax_, ranks_, std::move(tm), t_iso_below_, zero_above_);
}

FilteredChain FilteredChain::with_flags(bool t_iso_below, bool zero_above) const {
  return FilteredChain(base_, jmin_, jmax_, ranks_, tmaps_, t_iso_below, zero_above);
}

FilteredChain FilteredChain::with_tmap(int j, RMatrix m) const {
  require(j >= jmin_ && j < jmax_, ErrorKind::InvalidArgument, "degree outside the window");
  auto tm = tmaps_;
  tm[static_cast<std::size_t>(j - jmin_)] = std::move(m);
  return FilteredChain(base_, jmin_, jmax_, ranks_, std::move(tm), t_iso_below_, zero_above_);
}

// ---------------------------------------------------------------------------
// GradedReesModule

GradedReesModule::GradedReesModule(ChainRing base, ChainRing::Value v, int jmin, int jmax,
                                   std::vector<std::size_t> ranks, std::vector<RMatrix> tmaps,
                                   std::vector<RMatrix> umaps, bool t_iso_below, bool u_iso_above)
    : base_(std::move(base)),
      v_(std::move(v)),
      jmin_(jmin),
      jmax_(jmax),
      ranks_(std::move(ranks)),
      tmaps_(std::move(tmaps)),
      umaps_(std::move(umaps)),
      t_iso_below_(t_iso_below),
      u_iso_above_(u_iso_above) {
  require(jmin_ <= jmax_, ErrorKind::InvalidArgument, "empty window");
  require(v_.size() == base_.length(), ErrorKind::MixedRings, "v is not an element of the base");
  const auto n = static_cast<std::size_t>(jmax_ - jmin_);
  require(ranks_.size() == n + 1, ErrorKind::InvalidArgument, "expected one rank per degree of the window");
  require(tmaps_.size() == n && umaps_.size() == n, ErrorKind::InvalidArgument,
          "expected one t-map and one u-map per pair of adjacent degrees");
  for (std::size_t k = 0; k < n; ++k) {
    const int j = jmin_ + static_cast<int>(k);
    const auto& t = tmaps_[k];
    const auto& u = umaps_[k];
    require(t.ring() == base_ && u.ring() == base_, ErrorKind::MixedRings, "map over a different ring");
    require(t.rows() == ranks_[k] && t.cols() == ranks_[k + 1], ErrorKind::InvalidArgument,
            "t-map at degree " + deg_str(j) + " has the wrong shape");
    require(u.rows() == ranks_[k + 1] && u.cols() == ranks_[k], ErrorKind::InvalidArgument,
            "u-map at degree " + deg_str(j) + " has the wrong shape");
    require(t * u == RMatrix::scalar(base_, ranks_[k], v_), ErrorKind::InvalidArgument,
            "t u differs from v on M_" + deg_str(j));
    require(u * t == RMatrix::scalar(base_, ranks_[k + 1], v_), ErrorKind::InvalidArgument,
            "u t differs from v on M_" + deg_str(j + 1));
  }
}

GradedReesModule GradedReesModule::twisted(const ChainRing& base, const ChainRing::Value& v, int e, int jmin,
                                           int jmax) {
  require(jmin <= e && e <= jmax, ErrorKind::InvalidArgument, "twist outside the window");
  const auto n = static_cast<std::size_t>(jmax - jmin);
  std::vector<RMatrix> tm, um;
  const auto one = RMatrix::identity(base, 1);
  const auto vv = RMatrix::scalar(base, 1, v);
  for (int j = jmin; j < jmax; ++j) {
    tm.push_back(j < e ? one : vv);
    um.push_back(j < e ? vv : one);
  }
  return GradedReesModule(base, v, jmin, jmax, std::vector<std::size_t>(n + 1, 1), std::move(tm), std::move(um),
                          true, true);
}

std::size_t GradedReesModule::rank(int j) const {
  if (j < jmin_) return ranks_.front();
  if (j > jmax_) return ranks_.back();
  return ranks_[static_cast<std::size_t>(j - jmin_)];
}

RMatrix GradedReesModule::t(int j) const {
  if (j >= jmin_ && j < jmax_) return tmaps_[static_cast<std::size_t>(j - jmin_)];
  if (j < jmin_) return RMatrix::identity(base_, ranks_.front());
  return RMatrix::scalar(base_, ranks_.back(), v_);
}

RMatrix GradedReesModule::u(int j) const {
  if (j >= jmin_ && j < jmax_) return umaps_[static_cast<std::size_t>(j - jmin_)];
  if (j < jmin_) return RMatrix::scalar(base_, ranks_.front(), v_);
  return RMatrix::identity(base_, ranks_.back());
}

GradedReesModule GradedReesModule::extended(int jmin, int jmax) const {
  require(jmin <= jmin_ && jmax >= jmax_, ErrorKind::InvalidArgument, "extension must contain the window");
  std::vector<std::size_t> ranks;
  std::vector<RMatrix> tm, um;
  for (int j = jmin; j <= jmax; ++j) ranks.push_back(rank(j));
  for (int j = jmin; j < jmax; ++j) {
    tm.push_back(t(j));
    um.push_back(u(j));
  }
  return GradedReesModule(base_, v_, jmin, jmax, std::move(ranks), std::move(tm), std::move(um), t_iso_below_,
                          u_iso_above_);
}

GradedReesModule GradedReesModule::direct_sum(const GradedReesModule& a, const GradedReesModule& b) {
  require(a.base_ == b.base_ && a.v_ == b.v_, ErrorKind::MixedRings, "direct sum over different Rees algebras");
  const int lo = std::min(a.jmin_, b.jmin_), hi = std::max(a.jmax_, b.jmax_);
  const auto A = a.extended(lo, hi), B = b.extended(lo, hi);
  std::vector<std::size_t> ranks;
  std::vector<RMatrix> tm, um;
  for (int j = lo; j <= hi; ++j) ranks.push_back(A.rank(j) + B.rank(j));
  for (int j = lo; j < hi; ++j) {
    tm.push_back(RMatrix::direct_sum(A.t(j), B.t(j)));
    um.push_back(RMatrix::direct_sum(A.u(j), B.u(j)));
  }
  return GradedReesModule(a.base_, a.v_, lo, hi, std::move(ranks), std::move(tm), std::move(um),
                          a.t_iso_below_ && b.t_iso_below_, a.u_iso_above_ && b.u_iso_above_);
}

GradedReesModule GradedReesModule::base_changed(const std::vector<RMatrix>& g) const {
  require(g.size() == ranks_.size(), ErrorKind::InvalidArgument, "one base change per degree expected");
  std::vector<RMatrix> tm, um;
  for (std::size_t k = 0; k + 1 < g.size(); ++k) {
    tm.push_back(g[k] * tmaps_[k] * g[k + 1].inverse());
    um.push_back(g[k + 1] * umaps_[k] * g[k].inverse());
  }
  return GradedReesModule(base_, v_, jmin_, jmax_, ranks_, std::move(tm), std::move(um), t_iso_below_,
                          u_iso_above_);
}

GradedReesModule GradedReesModule::with_flags(bool t_iso_below, bool u_iso_above) const {
  return GradedReesModule(base_, v_, jmin_, jmax_, ranks_, tmaps_, umaps_, t_iso_below, u_iso_above);
}

FilteredChain GradedReesModule::t_chain() const {
  std::vector<std::size_t> ranks = ranks_;
  ranks.push_back(ranks_.back());
  std::vector<RMatrix> tm = tmaps_;
  tm.push_back(t(jmax_));
  return FilteredChain(base_, jmin_, jmax_ + 1, std::move(ranks), std::move(tm), t_iso_below_, false);
}

// ---------------------------------------------------------------------------
// Attractor, repeller, fixed locus

namespace {

std::optional<ChainRing> quotient_ring(const ChainRing& A, const ChainRing::Value& v) {
  const std::size_t s = A.valuation(v);
  if (s == 0) return std::nullopt;
  if (s >= A.length()) return A;
  if (s == 1) return ChainRing::field(A.residue());
  if (A.kind() == ChainRing::Kind::Witt) return ChainRing::witt(A.residue(), s);
  return ChainRing::series(A.residue(), s);
}

}  // namespace

AttractorTriple fix_attr_rep(const ChainRing& base, const ChainRing::Value& v) {
  require(v.size() == base.length(), ErrorKind::UnsupportedBase, "v is not an element of " + base.name());
  require(base.kind() != ChainRing::Kind::PowerSeries || !base.is_zero(v), ErrorKind::PrecisionExhausted,
          "v vanishes to the working precision");
  AttractorTriple out;
  out.quotient = quotient_ring(base, v);
  const std::string R = out.quotient ? out.quotient->name() : "0";
  out.fixed = R;
  out.repeller = out.quotient ? R + "[t]" : "0";
  out.attractor = out.quotient ? "Sym_" + R + "(L) = " + R + "[u]" : "0";
  return out;
}

AttractorTriple fix_attr_rep(const GradedReesModule& m) {
  auto out = fix_attr_rep(m.base(), m.v());
  ReesPullbacks pb;
  for (int j = m.jmin(); j <= m.jmax(); ++j) {
    const RMatrix t = m.t(j);
    const RMatrix u = m.u(j - 1);
    pb.degrees.push_back(j);
    pb.attractor.push_back(quotient_shape(t));
    pb.repeller.push_back(quotient_shape(u));
    pb.fixed.push_back(quotient_shape(RMatrix::hconcat(t, u)));
  }
  out.pullbacks = std::move(pb);
  return out;
}

// ---------------------------------------------------------------------------
// Bundle criteria

Verdict is_filtered_vb(const FilteredChain& c) {
  if (!c.t_iso_below())
    return Verdict::fail("(iii)", c.jmin(), "t is not declared an isomorphism below the window");
  if (!c.zero_above()) return Verdict::fail("(iii)", c.jmax(), "M_j is not declared zero above the window");
  const auto& R = c.base();
  for (int j = c.jmin(); j < c.jmax(); ++j) {
    const RMatrix t = c.t(j);
    if (t.residue_rank() == t.cols()) continue;
    const auto inj = injectivity(t);
    if (inj == Injectivity::Injective) {
      const auto shape = quotient_shape(t);
      return Verdict::fail("(ii)", j, "cokernel of t: M_" + deg_str(j + 1) + " -> M_" + deg_str(j) +
                                          " has torsion (largest invariant " +
                                          std::to_string(shape.invariants.back()) + " over " + R.name() + ")");
    }
    std::string detail = "t: M_" + deg_str(j + 1) + " -> M_" + deg_str(j) + " is not injective";
    if (inj == Injectivity::Unknown) detail += " to precision " + std::to_string(R.length());
    if (t.cols() <= t.rows() && R.kind() != ChainRing::Kind::Field) {
      const auto shape = quotient_shape(t);
      bool torsion = std::any_of(shape.invariants.begin(), shape.invariants.end(),
                                 [&](std::size_t v) { return v < R.length(); });
      if (torsion) detail += " and its cokernel has torsion";
    }
    return Verdict::fail("(ii)", j, detail);
  }
  return Verdict::pass();
}

namespace {

// Check that the map induced by f between free R-module quotients src_rel and
// dst_rel is split injective over R = A / pi^s.
std::optional<std::string> check_quotient_map(const RMatrix& f, const RMatrix& src_rel, const RMatrix& dst_rel,
                                              std::size_t s, const std::string& what) {
  const auto src = free_quotient(src_rel, s);
  const auto dst = free_quotient(dst_rel, s);
  if (!src.free)
    return "source of " + what + " is not projective over A/(v) (invariant " + std::to_string(src.bad_invariant) + ")";
  if (!dst.free)
    return "target of " + what + " is not projective over A/(v) (invariant " + std::to_string(dst.bad_invariant) + ")";
  if (src.basis_rows.empty()) return std::nullopt;
  const RMatrix m = induced_map(f, src, dst);
  if (m.residue_rank() != m.cols()) return what + " is not injective with projective cokernel";
  return std::nullopt;
}

}  // namespace

Verdict is_rees_vb(const GradedReesModule& m) {
  const auto& A = m.base();
  if (A.kind() == ChainRing::Kind::PowerSeries && A.is_zero(m.v()))
    throw Error(ErrorKind::PrecisionExhausted, "v vanishes to the working precision");
  if (!m.t_iso_below()) return Verdict::fail("(b)", m.jmin(), "t is not declared an isomorphism below the window");
  if (!m.u_iso_above()) return Verdict::fail("(b)", m.jmax(), "u is not declared an isomorphism above the window");

  const std::size_t s = std::min(v_valuation(A, m.v()), A.length());
  // v regular: criterion (iii) of the injective case; otherwise v lies in the
  // maximal ideal of a finite chain ring and (b), (a), (c) decide.
  const bool v_regular = A.kind() == ChainRing::Kind::PowerSeries || s == 0;

  for (int j = m.jmin() - 1; j <= m.jmax() + 1; ++j) {
    if (s > 0) {
      // u: M_{j-1}/t M_j -> M_j/t M_{j+1}
      if (auto err = check_quotient_map(m.u(j - 1), m.t(j - 1), m.t(j), s,
                                        "u: M_" + deg_str(j - 1) + "/tM_" + deg_str(j) + " -> M_" + deg_str(j) +
                                            "/tM_" + deg_str(j + 1)))
        return Verdict::fail("(a)", j, *err);
      if (!v_regular) {
        // t: M_{j+1}/u M_j -> M_j/u M_{j-1}
        if (auto err = check_quotient_map(m.t(j), m.u(j), m.u(j - 1), s,
                                          "t: M_" + deg_str(j + 1) + "/uM_" + deg_str(j) + " -> M_" + deg_str(j) +
                                              "/uM_" + deg_str(j - 1)))
          return Verdict::fail("(a)", j, *err);
      }
    }
    if (v_regular && j >= m.jmin() && j < m.jmax()) {
      const auto inj = injectivity(m.t(j));
      if (inj == Injectivity::Unknown)
        throw Error(ErrorKind::PrecisionExhausted, "injectivity of t at degree " + deg_str(j) +
                                                       " is not decidable at precision " +
                                                       std::to_string(A.length()));
      if (inj == Injectivity::NotInjective)
        return Verdict::fail("(d)", j, "t: M_" + deg_str(j + 1) + " -> M_" + deg_str(j) + " is not injective");
    }
  }
  return Verdict::pass();
}

// ---------------------------------------------------------------------------

std::vector<GradedHomology> graded_of_filtered(const FilteredChain& c) {
  const auto& R = c.base();
  const std::size_t L = R.length();
  std::vector<GradedHomology> out;
  for (int j = c.jmin() - 1; j <= c.jmax(); ++j) {
    const RMatrix t = c.t(j);
    const auto sf = smith_form(t);
    GradedHomology h{j, shape_from(row_invariants(sf, t.rows(), L)), {}, RMatrix(R, t.cols(), 0)};
    std::vector<std::size_t> ker_inv;
    std::vector<std::pair<std::size_t, std::size_t>> gens;  // (column, shift)
    for (std::size_t i = 0; i < t.cols(); ++i) {
      const std::size_t v = i < sf.valuations.size() ? std::min(sf.valuations[i], L) : L;
      const bool contributes = R.is_dvr_approximation() ? v == L : v > 0;
      if (!contributes) continue;
      ker_inv.push_back(v);
      gens.emplace_back(i, L - v);
    }
    h.ker = shape_from(ker_inv);
    RMatrix K(R, t.cols(), gens.size());
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const auto pi = R.uniformizer_power(gens[g].second);
      for (std::size_t r = 0; r < t.cols(); ++r) K.at(r, g) = R.mul(sf.Q.at(r, gens[g].first), pi);
    }
    h.kernel_generators = std::move(K);
    out.push_back(std::move(h));
  }
  return out;
}

TypeVector normal_decomposition(const GradedReesModule& m) {
  const auto verdict = is_rees_vb(m);
  if (!verdict.ok)
    throw Error(ErrorKind::NotABundle, "condition " + verdict.condition + " fails: " + verdict.detail);
  const auto& A = m.base();
  const std::size_t s = std::min(A.valuation(m.v()), A.length());
  const std::size_t h = m.rank(m.jmin() - 1);
  if (s == 0) return TypeVector(std::vector<int>(h, 0));
  std::vector<int> e;
  for (int j = m.jmin(); j <= m.jmax(); ++j) {
    const auto q = free_quotient(RMatrix::hconcat(m.t(j), m.u(j - 1)), s);
    if (!q.free) throw Error(ErrorKind::NotABundle, "fixed-point pullback at degree " + deg_str(j) + " is not free");
    for (std::size_t k = 0; k < q.basis_rows.size(); ++k) e.push_back(j);
  }
  if (e.size() != h)
    throw Error(ErrorKind::NotABundle, "fixed-point ranks sum to " + std::to_string(e.size()) + " instead of " +
                                           std::to_string(h));
  return TypeVector::sorted(std::move(e));
}

// ---------------------------------------------------------------------------
// Hecke pairs and lattice chains

namespace {

SmithForm certified_smith(const HeckePair& p) {
  const auto& R = p.phi0.ring();
  require(R.kind() == ChainRing::Kind::PowerSeries, ErrorKind::UnsupportedBase,
          "Hecke pairs live over F_q[[z]]");
  require(p.phi0.rows() == p.phi0.cols(), ErrorKind::InvalidArgument, "Phi must be square");
  auto sf = smith_form(p.phi0);
  for (auto v : sf.valuations)
    require(v < R.length(), ErrorKind::PrecisionExhausted,
            "invariant factor not certified at precision " + std::to_string(R.length()));
  return sf;
}

}  // namespace

TypeVector hecke_type(const HeckePair& p) {
  const auto sf = certified_smith(p);
  std::vector<int> e;
  for (auto v : sf.valuations) e.push_back(static_cast<int>(v) - p.denominator);
  return TypeVector::sorted(std::move(e));
}

LatticeChainReport lattice_chain(const HeckePair& p, int jmin, int jmax) {
  require(jmin <= jmax, ErrorKind::InvalidArgument, "empty window");
  const auto sf = certified_smith(p);
  const auto& R = p.phi0.ring();
  const std::size_t h = p.h();
  std::vector<int> e;
  for (auto v : sf.valuations) e.push_back(static_cast<int>(v) - p.denominator);

  // In the basis Q e_i the lattice M_j is spanned by z^{max(0, j - e_i)} Q e_i.
  auto exponent = [&](int j, std::size_t i) { return std::max(0, j - e[i]); };
  std::vector<RMatrix> bases;
  for (int j = jmin; j <= jmax; ++j) {
    RMatrix B = sf.Q;
    for (std::size_t i = 0; i < h; ++i) B.scale_col(i, R.uniformizer_power(static_cast<std::size_t>(exponent(j, i))));
    bases.push_back(std::move(B));
  }
  std::vector<RMatrix> tm, um;
  for (int j = jmin; j < jmax; ++j) {
    RMatrix t(R, h, h), u(R, h, h);
    for (std::size_t i = 0; i < h; ++i) {
      const int dt = exponent(j + 1, i) - exponent(j, i);
      t.at(i, i) = R.uniformizer_power(static_cast<std::size_t>(dt));
      u.at(i, i) = R.uniformizer_power(static_cast<std::size_t>(1 - dt));
    }
    tm.push_back(std::move(t));
    um.push_back(std::move(u));
  }
  const int emin = h ? *std::min_element(e.begin(), e.end()) : 0;
  const int emax = h ? *std::max_element(e.begin(), e.end()) : 0;
  GradedReesModule module(R, R.uniformizer_power(1), jmin, jmax, std::vector<std::size_t>(jmax - jmin + 1, h),
                          std::move(tm), std::move(um), jmin <= emin, jmax >= emax);

  LatticeChainReport rep{module, std::move(bases), {}, {}, emin, emax, is_rees_vb(module)};
  for (int j = jmin; j <= jmax; ++j) {
    rep.quotient_ranks.push_back(quotient_shape(rep.module.t(j)).invariants.size());
    rep.fixed_ranks.push_back(quotient_shape(RMatrix::hconcat(rep.module.t(j), rep.module.u(j - 1))).invariants.size());
  }
  return rep;
}

}  // namespace shtuka
