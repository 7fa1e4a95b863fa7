#include "shtuka/witt.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <sstream>

#include "shtuka/error.hpp"

namespace shtuka {

namespace {

constexpr std::size_t kMaxTerms = 4'000'000;

using Exps = std::vector<std::uint16_t>;

struct PolyCtx {
  std::size_t vars;
  std::int64_t modulus;
};

std::int64_t mod(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

void add_term(IntPoly& f, const Exps& e, std::int64_t c, std::int64_t m) {
  c = mod(c, m);
  if (c == 0) return;
  auto [it, inserted] = f.terms.emplace(e, c);
  if (!inserted) {
    it->second = mod(it->second + c, m);
    if (it->second == 0) f.terms.erase(it);
  }
}

IntPoly poly_add(const IntPoly& f, const IntPoly& g, std::int64_t scale_g, const PolyCtx& ctx) {
  IntPoly r = f;
  for (const auto& [e, c] : g.terms)
    add_term(r, e, static_cast<std::int64_t>((static_cast<__int128>(c) * scale_g) % ctx.modulus), ctx.modulus);
  return r;
}

IntPoly poly_mul(const IntPoly& f, const IntPoly& g, const PolyCtx& ctx) {
  IntPoly r;
  Exps e(ctx.vars);
  for (const auto& [ef, cf] : f.terms) {
    for (const auto& [eg, cg] : g.terms) {
      for (std::size_t v = 0; v < ctx.vars; ++v) e[v] = static_cast<std::uint16_t>(ef[v] + eg[v]);
      add_term(r, e, static_cast<std::int64_t>((static_cast<__int128>(cf) * cg) % ctx.modulus), ctx.modulus);
    }
    if (r.size() > kMaxTerms)
      throw Error(ErrorKind::Overflow, "Witt polynomial term budget exceeded; raise the budget");
  }
  return r;
}

IntPoly poly_pow(const IntPoly& f, std::uint64_t e, const PolyCtx& ctx) {
  IntPoly result;
  add_term(result, Exps(ctx.vars, 0), 1, ctx.modulus);
  IntPoly base = f;
  while (e > 0) {
    if (e & 1) result = poly_mul(result, base, ctx);
    e >>= 1;
    if (e > 0) base = poly_mul(base, base, ctx);
  }
  return result;
}

// exact division of every coefficient by d (d | modulus, d | each coefficient)
IntPoly poly_divide(const IntPoly& f, std::int64_t d, const PolyCtx& ctx) {
  IntPoly r;
  for (const auto& [e, c] : f.terms) {
    if (c % d != 0)
      throw Error(ErrorKind::Overflow, "ghost equation not divisible; coefficient budget too small");
    add_term(r, e, c / d, ctx.modulus);
  }
  return r;
}

// w_n over variables offset..offset+n
IntPoly ghost(std::uint32_t p, std::size_t n, std::size_t offset, const PolyCtx& ctx) {
  IntPoly w;
  std::int64_t pi = 1;
  std::uint64_t exponent = 1;
  for (std::size_t i = 0; i < n; ++i) exponent *= p;
  for (std::size_t i = 0; i <= n; ++i) {
    Exps e(ctx.vars, 0);
    e[offset + i] = static_cast<std::uint16_t>(exponent);
    add_term(w, e, pi, ctx.modulus);
    pi *= p;
    exponent /= p;
  }
  return w;
}

// Given target ghost polynomials T_0..T_{count-1}, solve sum_i p^i X_i^{p^{n-i}} = T_n.
std::vector<IntPoly> solve_ghost(std::uint32_t p, const std::vector<IntPoly>& targets, const PolyCtx& ctx) {
  std::vector<IntPoly> out;
  std::int64_t pn = 1;
  for (std::size_t n = 0; n < targets.size(); ++n) {
    IntPoly numer = targets[n];
    std::int64_t pi = 1;
    std::uint64_t exponent = pn;  // p^(n-i) for i = 0
    for (std::size_t i = 0; i < n; ++i) {
      numer = poly_add(numer, poly_pow(out[i], exponent, ctx), mod(-pi, ctx.modulus), ctx);
      pi *= p;
      exponent /= p;
    }
    out.push_back(poly_divide(numer, pn, ctx));
    pn *= p;
  }
  return out;
}

ModPPoly reduce_mod_p(const IntPoly& f, std::uint32_t p) {
  ModPPoly r;
  for (const auto& [e, c] : f.terms) {
    const auto cp = static_cast<std::uint32_t>(c % p);
    if (cp == 0) continue;
    ModPTerm t{cp, {}};
    for (std::size_t v = 0; v < e.size(); ++v)
      if (e[v] != 0) t.factors.emplace_back(static_cast<std::uint16_t>(v), e[v]);
    r.push_back(std::move(t));
  }
  return r;
}

std::unique_ptr<WittLaws> build_laws(std::uint32_t p, std::size_t N) {
  auto laws = std::make_unique<WittLaws>();
  laws->p = p;
  laws->N = N;
  __int128 m = 1;
  for (std::size_t i = 0; i < N; ++i) {
    m *= p;
    if (m >= (static_cast<__int128>(1) << 31))
      throw Error(ErrorKind::Overflow, "p^N exceeds the coefficient budget");
  }
  std::uint64_t top_exponent = 1;
  for (std::size_t i = 0; i < N; ++i) top_exponent *= p;
  if (top_exponent > 0xFFFF) throw Error(ErrorKind::Overflow, "Witt monomial exponents exceed 16 bits");
  const PolyCtx ctx{2 * N, static_cast<std::int64_t>(m)};

  std::vector<IntPoly> sum_t, prod_t, neg_t;
  for (std::size_t n = 0; n < N; ++n) {
    IntPoly wx = ghost(p, n, 0, ctx);
    IntPoly wy = ghost(p, n, N, ctx);
    sum_t.push_back(poly_add(wx, wy, 1, ctx));
    prod_t.push_back(poly_mul(wx, wy, ctx));
    neg_t.push_back(poly_add(IntPoly{}, wx, ctx.modulus - 1, ctx));
  }
  laws->sum = solve_ghost(p, sum_t, ctx);
  laws->prod = solve_ghost(p, prod_t, ctx);
  laws->neg = solve_ghost(p, neg_t, ctx);
  if (N >= 2) {
    std::vector<IntPoly> frob_t;
    for (std::size_t n = 0; n + 1 < N; ++n) frob_t.push_back(ghost(p, n + 1, 0, ctx));
    laws->frob = solve_ghost(p, frob_t, ctx);
  }
  for (const auto& f : laws->sum) laws->sum_mod_p.push_back(reduce_mod_p(f, p));
  for (const auto& f : laws->prod) laws->prod_mod_p.push_back(reduce_mod_p(f, p));
  for (const auto& f : laws->neg) laws->neg_mod_p.push_back(reduce_mod_p(f, p));
  for (const auto& f : laws->frob) laws->frob_mod_p.push_back(reduce_mod_p(f, p));
  return laws;
}

Elem evaluate(const ModPPoly& f, const FpAlgebra& R, const std::vector<Elem>& vars) {
  Elem acc = 0;
  for (const auto& t : f) {
    Elem v = R.from_int(t.coeff);
    for (const auto& [var, e] : t.factors) {
      v = R.mul(v, R.pow(vars[var], e));
      if (v == 0) break;
    }
    acc = R.add(acc, v);
  }
  return acc;
}

void check_same_ring(const WittVec& a, const WittVec& b) {
  require(a.base()->same_as(*b.base()) && a.length() == b.length(), ErrorKind::MixedRings,
          "Witt vectors over different bases or lengths");
}

}  // namespace

std::int64_t coefficient(const IntPoly& f, const std::vector<std::uint16_t>& exps) {
  auto it = f.terms.find(exps);
  return it == f.terms.end() ? 0 : it->second;
}

const WittLaws& witt_laws(std::uint32_t p, std::size_t N, std::size_t max_length) {
  require(is_prime(p), ErrorKind::InvalidArgument, "p must be prime");
  require(N >= 1, ErrorKind::InvalidArgument, "Witt length must be positive");
  require(N <= max_length, ErrorKind::Overflow,
          "Witt length " + std::to_string(N) + " exceeds configured maximum " + std::to_string(max_length));
  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, std::size_t>, std::unique_ptr<WittLaws>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{p, N}];
  if (!slot) slot = build_laws(p, N);
  return *slot;
}

WittVec::WittVec(AlgebraPtr base, std::vector<Elem> coords) : base_(std::move(base)), coords_(std::move(coords)) {
  require(!coords_.empty(), ErrorKind::InvalidArgument, "Witt vector length must be positive");
  for (Elem c : coords_) require(c < base_->size(), ErrorKind::InvalidArgument, "Witt coordinate out of range");
}

WittVec WittVec::zero(const AlgebraPtr& base, std::size_t N) { return WittVec(base, std::vector<Elem>(N, 0)); }

WittVec WittVec::one(const AlgebraPtr& base, std::size_t N) { return teichmuller(base, N, base->one()); }

WittVec WittVec::teichmuller(const AlgebraPtr& base, std::size_t N, Elem a) {
  std::vector<Elem> c(N, 0);
  c[0] = a;
  return WittVec(base, std::move(c));
}

WittVec WittVec::from_int(const AlgebraPtr& base, std::size_t N, std::int64_t n) {
  return witt_scale(one(base, N), n);
}

bool WittVec::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](Elem c) { return c == 0; });
}

std::size_t WittVec::valuation() const {
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (coords_[i] != 0) return i;
  return coords_.size();
}

WittVec WittVec::truncated(std::size_t length) const {
  std::vector<Elem> c(length, 0);
  std::copy_n(coords_.begin(), std::min(length, coords_.size()), c.begin());
  return WittVec(base_, std::move(c));
}

bool WittVec::operator==(const WittVec& o) const {
  return base_->same_as(*o.base_) && coords_ == o.coords_;
}

std::string WittVec::format() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ',';
    os << base_->format(coords_[i]);
  }
  os << ')';
  return os.str();
}

WittVec WittVec::parse(const AlgebraPtr& base, std::size_t N, std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  require(s.size() >= 2 && s.front() == '(' && s.back() == ')', ErrorKind::Parse,
          "Witt vector must look like (a0,a1,...), got '" + std::string(text) + "'");
  s = s.substr(1, s.size() - 2);
  std::vector<Elem> coords;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto comma = s.find(',', start);
    if (comma == std::string::npos) comma = s.size();
    coords.push_back(base->parse(s.substr(start, comma - start)));
    start = comma + 1;
  }
  require(coords.size() == N, ErrorKind::Parse,
          "expected " + std::to_string(N) + " Witt coordinates, got " + std::to_string(coords.size()));
  return WittVec(base, std::move(coords));
}

namespace {

WittVec apply_binary(const std::vector<ModPPoly>& laws, const WittVec& a, const WittVec& b) {
  const std::size_t N = a.length();
  std::vector<Elem> vars(2 * N);
  std::copy(a.coords().begin(), a.coords().end(), vars.begin());
  std::copy(b.coords().begin(), b.coords().end(), vars.begin() + static_cast<std::ptrdiff_t>(N));
  std::vector<Elem> out(N);
  for (std::size_t n = 0; n < N; ++n) out[n] = evaluate(laws[n], *a.base(), vars);
  return WittVec(a.base(), std::move(out));
}

}  // namespace

WittVec witt_add(const WittVec& a, const WittVec& b) {
  check_same_ring(a, b);
  if (a.length() == 1) return WittVec(a.base(), {a.base()->add(a[0], b[0])});
  return apply_binary(witt_laws(a.base()->p(), a.length()).sum_mod_p, a, b);
}

WittVec witt_mul(const WittVec& a, const WittVec& b) {
  check_same_ring(a, b);
  if (a.length() == 1) return WittVec(a.base(), {a.base()->mul(a[0], b[0])});
  return apply_binary(witt_laws(a.base()->p(), a.length()).prod_mod_p, a, b);
}

WittVec witt_neg(const WittVec& a) {
  const std::size_t N = a.length();
  if (N == 1) return WittVec(a.base(), {a.base()->neg(a[0])});
  const auto& laws = witt_laws(a.base()->p(), N).neg_mod_p;
  std::vector<Elem> vars(2 * N, 0);
  std::copy(a.coords().begin(), a.coords().end(), vars.begin());
  std::vector<Elem> out(N);
  for (std::size_t n = 0; n < N; ++n) out[n] = evaluate(laws[n], *a.base(), vars);
  return WittVec(a.base(), std::move(out));
}

WittVec witt_sub(const WittVec& a, const WittVec& b) { return witt_add(a, witt_neg(b)); }

WittVec witt_scale(const WittVec& a, std::int64_t n) {
  WittVec result = WittVec::zero(a.base(), a.length());
  WittVec base = n < 0 ? witt_neg(a) : a;
  std::uint64_t k = static_cast<std::uint64_t>(n < 0 ? -n : n);
  while (k > 0) {
    if (k & 1) result = witt_add(result, base);
    k >>= 1;
    if (k > 0) base = witt_add(base, base);
  }
  return result;
}

WittVec witt_inv(const WittVec& a) {
  require(a.is_unit(), ErrorKind::NonUnit, "Witt vector " + a.format() + " is not a unit");
  const auto& R = *a.base();
  const WittVec one = WittVec::one(a.base(), a.length());
  const WittVec two = witt_add(one, one);
  WittVec x = WittVec::teichmuller(a.base(), a.length(), R.inv(a[0]));
  // Newton iteration x <- x(2 - ax); the defect 1 - ax moves one V-step deeper each round.
  for (std::size_t i = 0; i <= a.length() + 1; ++i) {
    if (witt_mul(a, x) == one) return x;
    x = witt_mul(x, witt_sub(two, witt_mul(a, x)));
  }
  require(witt_mul(a, x) == one, ErrorKind::NonUnit, "Witt inverse did not converge");
  return x;
}

WittVec witt_V_raise(const WittVec& a) {
  std::vector<Elem> c(a.length() + 1, 0);
  std::copy(a.coords().begin(), a.coords().end(), c.begin() + 1);
  return WittVec(a.base(), std::move(c));
}

WittVec witt_V(const WittVec& a) { return witt_V_raise(a).truncated(a.length()); }

WittVec witt_F(const WittVec& a) {
  const auto& R = *a.base();
  if (R.is_perfect()) {
    std::vector<Elem> c(a.coords());
    for (auto& x : c) x = R.frobenius(x);
    return WittVec(a.base(), std::move(c));
  }
  require(a.length() >= 2, ErrorKind::LengthUnderflow, "Frobenius on W_1 of a non-perfect base");
  const std::size_t N = a.length();
  const auto& laws = witt_laws(R.p(), N).frob_mod_p;
  std::vector<Elem> vars(2 * N, 0);
  std::copy(a.coords().begin(), a.coords().end(), vars.begin());
  std::vector<Elem> out(N - 1);
  for (std::size_t n = 0; n + 1 < N; ++n) out[n] = evaluate(laws[n], R, vars);
  return WittVec(a.base(), std::move(out));
}

WittVec witt_F_inverse(const WittVec& a) {
  const auto& R = *a.base();
  require(R.is_perfect(), ErrorKind::UnsupportedBase, "inverse Frobenius needs a perfect base");
  std::vector<Elem> c(a.coords());
  for (auto& x : c) x = R.frobenius_inverse(x);
  return WittVec(a.base(), std::move(c));
}

WittVec witt_v_untwist(const WittVec& w) {
  require(w.in_ideal(), ErrorKind::NotInIdeal, w.format() + " is not in the image of V");
  require(w.length() >= 2, ErrorKind::LengthUnderflow, "V-preimage of an element of I_1 has length 0");
  return WittVec(w.base(), std::vector<Elem>(w.coords().begin() + 1, w.coords().end()));
}

WittVec witt_fil_product(const WittVec& x, const WittVec& y) { return witt_mul(x, y); }

}  // namespace shtuka
