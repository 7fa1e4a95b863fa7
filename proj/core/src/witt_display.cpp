#include "shtuka/witt_display.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "shtuka/error.hpp"

namespace shtuka {

WittRing::WittRing(AlgebraPtr base, std::size_t N) : base_(std::move(base)), N_(N) {
  require(base_->is_field(), ErrorKind::UnsupportedBase, "Witt rings here need a finite field base");
  require(N >= 1, ErrorKind::LengthUnderflow, "Witt length must be positive");
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < N; ++i) s *= base_->size();
  require(s <= 256, ErrorKind::BudgetExceeded, "W_N(F_Q) has more than 256 elements");
  size_ = static_cast<std::uint32_t>(s);
  std::vector<WittVec> el;
  el.reserve(size_);
  for (std::uint32_t i = 0; i < size_; ++i) el.push_back(element(i));
  one_ = index(WittVec::one(base_, N));
  add_.resize(size_ * size_);
  mul_.resize(size_ * size_);
  neg_.resize(size_);
  frob_.resize(size_);
  ver_.resize(size_);
  unit_.resize(size_);
  inv_.assign(size_, 0);
  for (std::uint32_t a = 0; a < size_; ++a) {
    neg_[a] = index(witt_neg(el[a]));
    frob_[a] = index(witt_F(el[a]));
    ver_[a] = index(witt_V(el[a]));
    unit_[a] = el[a].is_unit();
    for (std::uint32_t b = a; b < size_; ++b) {
      add_[a * size_ + b] = add_[b * size_ + a] = index(witt_add(el[a], el[b]));
      mul_[a * size_ + b] = mul_[b * size_ + a] = index(witt_mul(el[a], el[b]));
    }
  }
  for (std::uint32_t a = 0; a < size_; ++a)
    if (unit_[a])
      for (std::uint32_t b = 0; b < size_; ++b)
        if (mul_[a * size_ + b] == one_) inv_[a] = b;
}

std::shared_ptr<const WittRing> WittRing::get(const AlgebraPtr& base, std::size_t N) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, std::vector<std::uint32_t>, std::size_t>, std::shared_ptr<const WittRing>>
      cache;
  const auto key = std::make_tuple(base->p(), base->modulus(), N);
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(key);
    if (it != cache.end() && it->second->base()->same_as(*base)) return it->second;
  }
  auto ring = std::make_shared<const WittRing>(base, N);
  std::lock_guard<std::mutex> lk(mu);
  return cache.emplace(key, ring).first->second;
}

std::uint32_t WittRing::index(const WittVec& w) const {
  require(w.length() == N_ && w.base()->same_as(*base_), ErrorKind::MixedRings, "Witt vector from another ring");
  std::uint32_t k = 0;
  for (auto c : w.coords()) k = k * base_->size() + c;
  return k;
}

WittVec WittRing::element(std::uint32_t i) const {
  std::vector<Elem> c(N_);
  for (std::size_t k = N_; k-- > 0;) {
    c[k] = i % base_->size();
    i /= base_->size();
  }
  return WittVec(base_, std::move(c));
}

std::uint32_t WittRing::inv(std::uint32_t a) const {
  require(unit_[a], ErrorKind::NonUnit, element(a).format() + " is not a unit");
  return inv_[a];
}

// ---------------------------------------------------------------------------

WMat wmat_identity(const WittRing& W, std::size_t n) {
  WMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = W.one();
  return m;
}

WMat wmul(const WittRing& W, const WMat& x, const WMat& y) {
  require(x.cols == y.rows, ErrorKind::ParameterMismatch, "matrix shapes do not compose");
  WMat r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const auto v = x.at(i, k);
      if (!v) continue;
      for (std::size_t j = 0; j < y.cols; ++j) r.at(i, j) = W.add(r.at(i, j), W.mul(v, y.at(k, j)));
    }
  return r;
}

WMat wadd(const WittRing& W, const WMat& x, const WMat& y) {
  require(x.rows == y.rows && x.cols == y.cols, ErrorKind::ParameterMismatch, "matrix shapes differ");
  WMat r(x.rows, x.cols);
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = W.add(x.a[i], y.a[i]);
  return r;
}

WMat wfrob(const WittRing& W, const WMat& x) {
  WMat r = x;
  for (auto& v : r.a) v = W.frob(v);
  return r;
}

std::optional<WMat> winverse(const WittRing& W, const WMat& x) {
  require(x.rows == x.cols, ErrorKind::NotInvertible, "non-square matrix");
  const std::size_t n = x.rows;
  WMat m = x, r = wmat_identity(W, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && !W.is_unit(m.at(piv, col))) ++piv;
    if (piv == n) return std::nullopt;  // local ring: some pivot is a unit iff invertible
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(m.at(piv, j), m.at(col, j));
      std::swap(r.at(piv, j), r.at(col, j));
    }
    const auto iv = W.inv(m.at(col, col));
    for (std::size_t j = 0; j < n; ++j) {
      m.at(col, j) = W.mul(m.at(col, j), iv);
      r.at(col, j) = W.mul(r.at(col, j), iv);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || !m.at(i, col)) continue;
      const auto f = m.at(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        m.at(i, j) = W.sub(m.at(i, j), W.mul(f, m.at(col, j)));
        r.at(i, j) = W.sub(r.at(i, j), W.mul(f, r.at(col, j)));
      }
    }
  }
  return r;
}

WMat wmat_from(const WittRing& W, std::size_t rows, std::size_t cols, const std::vector<WittVec>& entries) {
  require(entries.size() == rows * cols, ErrorKind::InvalidArgument, "wrong number of matrix entries");
  WMat m(rows, cols);
  for (std::size_t i = 0; i < entries.size(); ++i) m.a[i] = W.index(entries[i]);
  return m;
}

std::string wformat(const WittRing& W, const WMat& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < m.cols; ++j) os << (j ? ", " : "") << W.element(m.at(i, j)).format();
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

WMat block(const WMat& m, std::size_t r0, std::size_t c0, std::size_t r, std::size_t c) {
  WMat b(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) b.at(i, j) = m.at(r0 + i, c0 + j);
  return b;
}

void put(WMat& m, std::size_t r0, std::size_t c0, const WMat& b) {
  for (std::size_t i = 0; i < b.rows; ++i)
    for (std::size_t j = 0; j < b.cols; ++j) m.at(r0 + i, c0 + j) = b.at(i, j);
}

WMat map_entries(const WMat& m, const std::function<std::uint32_t(std::uint32_t)>& f) {
  WMat r = m;
  for (auto& v : r.a) v = f(v);
  return r;
}

WMat assemble(std::size_t h, std::size_t d, const WMat& a, const WMat& b, const WMat& c, const WMat& e) {
  WMat m(h, h);
  put(m, 0, 0, a);
  put(m, 0, d, b);
  put(m, d, 0, c);
  put(m, d, d, e);
  return m;
}

void check_blocks(const PairMor& m) {
  const std::size_t d = m.src.d, t = m.src.h - m.src.d, dp = m.dst.d, tp = m.dst.h - m.dst.d;
  require(m.src.ring == m.dst.ring, ErrorKind::MixedRings, "pairs over different rings");
  require(m.a.rows == dp && m.a.cols == d && m.b.rows == dp && m.b.cols == t && m.y.rows == tp && m.y.cols == d &&
              m.e.rows == tp && m.e.cols == t,
          ErrorKind::ParameterMismatch, "pair morphism blocks have the wrong shapes");
}

}  // namespace

PairHD PairHD::make(const AlgebraPtr& base, std::size_t N, std::size_t h, std::size_t d) {
  require(d <= h, ErrorKind::InvalidArgument, "d exceeds h");
  return {WittRing::get(base, N), h, d};
}

PairMor PairMor::identity(const PairHD& p) {
  const auto& W = *p.ring;
  const std::size_t t = p.h - p.d;
  return {p, p, wmat_identity(W, p.d), WMat(p.d, t), WMat(t, p.d), wmat_identity(W, t)};
}

WMat PairMor::matrix() const {
  check_blocks(*this);
  const auto& W = *src.ring;
  return assemble(dst.h, dst.d, a, b, map_entries(y, [&](std::uint32_t v) { return W.ver(v); }), e);
}

bool PairMor::is_invertible() const {
  const auto& W = *src.ring;
  return src.h == dst.h && src.d == dst.d && winverse(W, a).has_value() && winverse(W, e).has_value();
}

PairMor pair_mor_from_matrix(const PairHD& src, const PairHD& dst, const WMat& f) {
  require(src.ring == dst.ring, ErrorKind::MixedRings, "pairs over different rings");
  require(f.rows == dst.h && f.cols == src.h, ErrorKind::ParameterMismatch, "matrix has the wrong shape");
  const auto& W = *src.ring;
  const std::size_t d = src.d, t = src.h - src.d, dp = dst.d, tp = dst.h - dst.d;
  WMat c = block(f, dp, 0, tp, d);
  WMat y(tp, d);
  for (std::size_t i = 0; i < c.a.size(); ++i) {
    require(W.in_ideal(c.a[i]), ErrorKind::NotInIdeal,
            "c-entry " + W.element(c.a[i]).format() + " is not in the ideal I");
    const WittVec w = W.element(c.a[i]);
    std::vector<Elem> coords(w.coords().begin() + 1, w.coords().end());
    coords.push_back(0);
    y.a[i] = W.index(WittVec(W.base(), std::move(coords)));
  }
  return {src, dst, block(f, 0, 0, dp, d), block(f, 0, d, dp, t), std::move(y), block(f, dp, d, tp, t)};
}

PairMor pair_mor_compose(const PairMor& m, const PairMor& mp) {
  check_blocks(m);
  check_blocks(mp);
  require(mp.dst == m.src, ErrorKind::ParameterMismatch, "morphisms do not compose");
  const auto& W = *m.src.ring;
  const WMat f = wmul(W, m.matrix(), mp.matrix());
  const std::size_t d = mp.src.d, t = mp.src.h - d, dp = m.dst.d, tp = m.dst.h - dp;
  // c-block of the product is V(y) a' + e V(y') = V(y F(a') + F(e) y').
  WMat y = wadd(W, wmul(W, m.y, wfrob(W, mp.a)), wmul(W, wfrob(W, m.e), mp.y));
  return {mp.src, m.dst, block(f, 0, 0, dp, d), block(f, 0, d, dp, t), std::move(y), block(f, dp, d, tp, t)};
}

PairMor pair_mor_inverse(const PairMor& m) {
  require(m.is_invertible(), ErrorKind::NotInvertible, "pair morphism is not invertible");
  const auto& W = *m.src.ring;
  const WMat finv = *winverse(W, m.matrix());
  const std::size_t d = m.src.d, t = m.src.h - d;
  PairMor r{m.dst, m.src, block(finv, 0, 0, d, d), block(finv, 0, d, d, t), WMat(), block(finv, d, d, t, t)};
  // m o r = id forces y F(a_r) + F(e) y_r = 0.
  const WMat neg_y = map_entries(m.y, [&](std::uint32_t v) { return W.neg(v); });
  r.y = wmul(W, wmul(W, *winverse(W, wfrob(W, m.e)), neg_y), wfrob(W, r.a));
  return r;
}

WMat tilde_on_morphism(const PairMor& m) {
  check_blocks(m);
  const auto& W = *m.src.ring;
  const WMat pb = map_entries(m.b, [&](std::uint32_t v) { return W.scale_p(W.frob(v)); });
  return assemble(m.dst.h, m.dst.d, wfrob(W, m.a), pb, m.y, wfrob(W, m.e));
}

bool display_validate(const DisplayHD& D) {
  return D.psi.rows == D.pair.h && D.psi.cols == D.pair.h && winverse(*D.pair.ring, D.psi).has_value();
}

bool display_morphism_valid(const DisplayHD& D, const DisplayHD& Dp, const PairMor& f) {
  if (!(f.src == D.pair) || !(f.dst == Dp.pair)) return false;
  const auto& W = *D.pair.ring;
  return wmul(W, Dp.psi, tilde_on_morphism(f)) == wmul(W, f.matrix(), D.psi);
}

DisplayHD display_apply(const PairMor& f, const DisplayHD& D) {
  require(f.src == D.pair, ErrorKind::ParameterMismatch, "morphism source is not the display's pair");
  require(f.is_invertible(), ErrorKind::NotInvertible, "pair morphism is not invertible");
  const auto& W = *D.pair.ring;
  const WMat tinv = *winverse(W, tilde_on_morphism(f));
  return {f.dst, wmul(W, wmul(W, f.matrix(), D.psi), tinv)};
}

std::vector<PairMor> pair_automorphisms(const PairHD& p, std::uint64_t budget) {
  const auto& W = *p.ring;
  const std::size_t n = p.h * p.h;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    require(total <= budget / W.size(), ErrorKind::BudgetExceeded, "pair automorphism search exceeds the budget");
    total *= W.size();
  }
  const std::size_t d = p.d, t = p.h - p.d;
  std::vector<PairMor> out;
  std::vector<std::uint32_t> digits(n);
  for (std::uint64_t k = 0; k < total; ++k) {
    std::uint64_t x = k;
    for (std::size_t i = n; i-- > 0;) {
      digits[i] = static_cast<std::uint32_t>(x % W.size());
      x /= W.size();
    }
    PairMor m{p, p, WMat(d, d), WMat(d, t), WMat(t, d), WMat(t, t)};
    std::size_t pos = 0;
    for (auto* blk : {&m.a, &m.b, &m.y, &m.e})
      for (auto& v : blk->a) v = digits[pos++];
    if (m.is_invertible()) out.push_back(std::move(m));
  }
  return out;
}

std::optional<PairMor> display_iso_test(const DisplayHD& D, const DisplayHD& Dp, std::uint64_t budget) {
  require(D.pair == Dp.pair, ErrorKind::ParameterMismatch, "displays of different types");
  require(display_validate(D) && display_validate(Dp), ErrorKind::NotInvertible, "Psi is not invertible");
  for (const auto& f : pair_automorphisms(D.pair, budget))
    if (display_morphism_valid(D, Dp, f)) return f;
  return std::nullopt;
}

DisplayClassTable display_classify(std::uint64_t q, std::size_t h, std::size_t d, std::size_t N,
                                   std::uint64_t budget, unsigned jobs) {
  const PairHD pair = PairHD::make(FpAlgebra::field_of_order(q), N, h, d);
  const auto& W = *pair.ring;
  const auto group = pair_automorphisms(pair, budget);
  std::uint64_t space = 1;
  for (std::size_t i = 0; i < h * h; ++i) {
    require(space <= budget / W.size(), ErrorKind::BudgetExceeded, "display space exceeds the budget");
    space *= W.size();
  }
  struct Action {
    WMat f, tinv;
  };
  std::vector<Action> acts;
  acts.reserve(group.size());
  for (const auto& g : group) acts.push_back({g.matrix(), *winverse(W, tilde_on_morphism(g))});

  auto key_of = [&](const WMat& m) {
    std::uint64_t k = 0;
    for (auto v : m.a) k = k * W.size() + v;
    return k;
  };
  auto from_key = [&](std::uint64_t k) {
    WMat m(h, h);
    for (std::size_t i = h * h; i-- > 0;) {
      m.a[i] = static_cast<std::uint32_t>(k % W.size());
      k /= W.size();
    }
    return m;
  };

  DisplayClassTable t{pair, 0, group.size(), {}};
  std::vector<bool> seen(space, false);
  const unsigned nj = std::max(1u, jobs);
  std::vector<std::uint64_t> images(acts.size());
  for (std::uint64_t k = 0; k < space; ++k) {
    if (seen[k]) continue;
    const WMat psi = from_key(k);
    if (!winverse(W, psi)) continue;
    std::vector<std::thread> threads;
    for (unsigned j = 0; j < nj; ++j)
      threads.emplace_back([&, j] {
        for (std::size_t i = j; i < acts.size(); i += nj)
          images[i] = key_of(wmul(W, wmul(W, acts[i].f, psi), acts[i].tinv));
      });
    for (auto& th : threads) th.join();
    std::uint64_t orbit = 0, stab = 0;
    for (auto img : images) {
      if (img == k) ++stab;
      if (!seen[img]) {
        seen[img] = true;
        ++orbit;
      }
    }
    t.display_count += orbit;
    t.classes.push_back({psi, orbit, stab});
  }
  return t;
}

FZipHD zip_of_display_N1(const DisplayHD& D) {
  require(D.pair.ring->length() == 1, ErrorKind::InvalidArgument, "zip comparison needs N = 1");
  require(display_validate(D), ErrorKind::NotInvertible, "Psi is not invertible");
  const auto& W = *D.pair.ring;
  FMat g(D.pair.h, D.pair.h);
  for (std::size_t i = 0; i < g.a.size(); ++i) g.a[i] = W.element(D.psi.a[i])[0];
  return zip_from_matrix(CoeffField{W.base(), W.p()}, D.pair.d, g);
}

std::string display_format(const DisplayHD& D) {
  const auto& W = *D.pair.ring;
  std::ostringstream os;
  os << "display Q " << W.base()->size() << " N " << W.length() << " h " << D.pair.h << " d " << D.pair.d << '\n';
  for (std::size_t i = 0; i < D.pair.h; ++i) {
    for (std::size_t j = 0; j < D.pair.h; ++j) os << (j ? " " : "") << W.element(D.psi.at(i, j)).format();
    os << '\n';
  }
  return os.str();
}

DisplayHD display_parse(const std::string& text) {
  std::istringstream is(text);
  std::string w, kQ, kN, kh, kd;
  std::uint64_t Q = 0;
  std::size_t N = 0, h = 0, d = 0;
  require(static_cast<bool>(is >> w >> kQ >> Q >> kN >> N >> kh >> h >> kd >> d) && w == "display" && kQ == "Q" &&
              kN == "N" && kh == "h" && kd == "d",
          ErrorKind::Parse, "display header must read 'display Q <Q> N <N> h <h> d <d>'");
  const PairHD pair = PairHD::make(FpAlgebra::field_of_order(Q), N, h, d);
  std::vector<WittVec> entries;
  for (std::size_t i = 0; i < h * h; ++i) {
    std::string tok;
    require(static_cast<bool>(is >> tok), ErrorKind::Parse, "display matrix is truncated");
    entries.push_back(WittVec::parse(pair.ring->base(), N, tok));
  }
  DisplayHD D{pair, wmat_from(*pair.ring, h, h, entries)};
  require(display_validate(D), ErrorKind::NotInvertible, "Psi is not invertible");
  return D;
}

}  // namespace shtuka
