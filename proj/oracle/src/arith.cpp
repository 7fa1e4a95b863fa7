#include <algorithm>
#include <functional>
#include <stdexcept>

#include "oracle/oracle.hpp"

namespace oracle {

namespace {

using Poly = std::vector<std::int64_t>;  // low degree first

Poly poly_mod(Poly a, const Poly& m, std::int64_t p) {
  // m monic
  const std::size_t dm = m.size() - 1;
  for (std::size_t i = a.size(); i-- > dm;) {
    const std::int64_t c = ((a[i] % p) + p) % p;
    if (!c) continue;
    for (std::size_t j = 0; j <= dm; ++j) a[i - dm + j] = ((a[i - dm + j] - c * m[j]) % p + p) % p;
  }
  a.resize(std::min(a.size(), dm));
  for (auto& x : a) x = ((x % p) + p) % p;
  return a;
}

bool divides(const Poly& f, const Poly& g, std::int64_t p) {
  Poly r = poly_mod(g, f, p);
  return std::all_of(r.begin(), r.end(), [](std::int64_t x) { return x == 0; });
}

Poly digits(u64 code, u32 p, std::size_t n) {
  Poly d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = static_cast<std::int64_t>(code % p);
    code /= p;
  }
  return d;
}

u64 ipow(u64 b, std::size_t e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

GF GF::make(u32 p, u32 k) {
  GF F;
  F.p = p;
  F.k = k;
  F.q = static_cast<u32>(ipow(p, k));
  Poly modulus;
  if (k == 1) {
    modulus = {0, 1};
  } else {
    for (u64 code = 0; code < F.q; ++code) {
      Poly m = digits(code, p, k);
      m.push_back(1);
      bool irreducible = true;
      for (u32 deg = 1; deg <= k / 2 && irreducible; ++deg)
        for (u64 c2 = 0; c2 < ipow(p, deg) && irreducible; ++c2) {
          Poly f = digits(c2, p, deg);
          f.push_back(1);
          if (divides(f, m, p)) irreducible = false;
        }
      if (irreducible) {
        modulus = m;
        break;
      }
    }
  }
  F.addt.resize(F.q * F.q);
  F.mult.resize(F.q * F.q);
  auto encode = [&](const Poly& a) {
    u64 c = 0;
    for (std::size_t i = a.size(); i-- > 0;) c = c * p + static_cast<u64>(a[i]);
    return static_cast<u32>(c);
  };
  for (u32 a = 0; a < F.q; ++a)
    for (u32 b = 0; b < F.q; ++b) {
      const Poly da = digits(a, p, k), db = digits(b, p, k);
      Poly s(k), m(2 * k, 0);
      for (u32 i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % p;
      for (u32 i = 0; i < k; ++i)
        for (u32 j = 0; j < k; ++j) m[i + j] += da[i] * db[j];
      F.addt[a * F.q + b] = encode(s);
      F.mult[a * F.q + b] = encode(k == 1 ? Poly{m[0] % p} : poly_mod(m, modulus, p));
    }
  return F;
}

u32 GF::neg(u32 a) const {
  for (u32 b = 0; b < q; ++b)
    if (add(a, b) == 0) return b;
  throw std::logic_error("no negative");
}

u32 GF::inv(u32 a) const {
  for (u32 b = 1; b < q; ++b)
    if (mul(a, b) == 1) return b;
  throw std::domain_error("zero has no inverse");
}

u32 GF::pow(u32 a, u64 e) const {
  u32 r = 1;
  while (e--) r = mul(r, a);
  return r;
}

// ---------------------------------------------------------------------------
// Ghost components over Z/p^M[x]/(x^k).

namespace {

struct Lift {
  u32 p, k;
  std::int64_t mod;
  Poly mul(const Poly& a, const Poly& b) const {
    Poly r(k, 0);
    for (u32 i = 0; i < k; ++i)
      for (u32 j = 0; i + j < k; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % mod;
    return r;
  }
  Poly add(const Poly& a, const Poly& b) const {
    Poly r(k);
    for (u32 i = 0; i < k; ++i) r[i] = (a[i] + b[i]) % mod;
    return r;
  }
  Poly scale(const Poly& a, std::int64_t c) const {
    Poly r(k);
    for (u32 i = 0; i < k; ++i) r[i] = (a[i] * (c % mod)) % mod;
    return r;
  }
  Poly pow(Poly a, u64 e) const {
    Poly r(k, 0);
    r[0] = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Poly lift(u32 code) const { return digits(code, p, k); }
  // w_n = sum_{i<=n} p^i a_i^{p^{n-i}}
  Poly ghost(const std::vector<u32>& a, std::size_t n) const {
    Poly w(k, 0);
    for (std::size_t i = 0; i <= n; ++i) w = add(w, scale(pow(lift(a[i]), ipow(p, n - i)), static_cast<std::int64_t>(ipow(p, i))));
    return w;
  }
  // Solves w_n(s) = target for s_n, given s_0..s_{n-1}.
  u32 solve(const std::vector<u32>& s, std::size_t n, const Poly& target) const {
    Poly r = target;
    for (std::size_t i = 0; i < n; ++i)
      r = add(r, scale(pow(lift(s[i]), ipow(p, n - i)), mod - static_cast<std::int64_t>(ipow(p, i))));
    const auto pn = static_cast<std::int64_t>(ipow(p, n));
    u64 code = 0;
    for (u32 i = k; i-- > 0;) {
      const std::int64_t c = ((r[i] % mod) + mod) % mod;
      if (c % pn != 0) throw std::logic_error("ghost congruence failed");
      code = code * p + static_cast<u64>((c / pn) % p);
    }
    return static_cast<u32>(code);
  }
};

template <class Op>
std::vector<u32> ghost_binary(u32 p, u32 k, const std::vector<u32>& a, const std::vector<u32>& b, Op op) {
  const std::size_t N = a.size();
  std::vector<u32> s;
  for (std::size_t n = 0; n < N; ++n) {
    const Lift L{p, k, static_cast<std::int64_t>(ipow(p, n + 1))};
    s.push_back(L.solve(s, n, op(L, L.ghost(a, n), L.ghost(b, n))));
  }
  return s;
}

}  // namespace

std::vector<u32> GhostWitt::add(const std::vector<u32>& a, const std::vector<u32>& b) const {
  return ghost_binary(p, k, a, b, [](const Lift& L, const Poly& x, const Poly& y) { return L.add(x, y); });
}

std::vector<u32> GhostWitt::mul(const std::vector<u32>& a, const std::vector<u32>& b) const {
  return ghost_binary(p, k, a, b, [](const Lift& L, const Poly& x, const Poly& y) { return L.mul(x, y); });
}

std::vector<u32> GhostWitt::frob(const std::vector<u32>& a) const {
  std::vector<u32> s;
  for (std::size_t n = 0; n + 1 < a.size(); ++n) {
    const Lift L{p, k, static_cast<std::int64_t>(ipow(p, n + 1))};
    s.push_back(L.solve(s, n, L.ghost(a, n + 1)));
  }
  return s;
}

std::vector<u32> GhostWitt::ver(const std::vector<u32>& a) const {
  std::vector<u32> r{0};
  r.insert(r.end(), a.begin(), a.end());
  return r;
}

u64 witt_to_int(u32 p, const std::vector<u32>& a) {
  const std::size_t N = a.size();
  const u64 mod = ipow(p, N);
  u64 total = 0;
  for (std::size_t i = 0; i < N; ++i) {
    // Teichmueller representative: a^{p^{N-1}} mod p^N
    u64 t = 1;
    for (u64 e = 0; e < ipow(p, N - 1); ++e) t = (t * a[i]) % mod;
    if (a[i] == 0) t = 0;
    total = (total + ipow(p, i) * t) % mod;
  }
  return total;
}

// ---------------------------------------------------------------------------

std::vector<int> hecke_type(u32 p, const std::vector<std::vector<std::vector<u32>>>& m, std::size_t K,
                            int denominator) {
  const std::size_t h = m.size();
  const auto P = static_cast<std::int64_t>(p);
  auto pmul = [&](const Poly& a, const Poly& b) {
    Poly r(K, 0);
    for (std::size_t i = 0; i < K; ++i)
      for (std::size_t j = 0; i + j < K; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % P;
    return r;
  };
  auto entry = [&](std::size_t i, std::size_t j) {
    Poly r(K, 0);
    for (std::size_t t = 0; t < std::min(K, m[i][j].size()); ++t) r[t] = m[i][j][t] % p;
    return r;
  };
  // Laplace expansion along the first selected row.
  std::function<Poly(const std::vector<std::size_t>&, const std::vector<std::size_t>&)> det =
      [&](const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) -> Poly {
    if (rows.size() == 1) return entry(rows[0], cols[0]);
    Poly acc(K, 0);
    std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      std::vector<std::size_t> sub_cols;
      for (std::size_t t = 0; t < cols.size(); ++t)
        if (t != c) sub_cols.push_back(cols[t]);
      const Poly term = pmul(entry(rows[0], cols[c]), det(sub_rows, sub_cols));
      for (std::size_t t = 0; t < K; ++t) acc[t] = ((acc[t] + (c % 2 ? P - term[t] : term[t])) % P + P) % P;
    }
    return acc;
  };
  auto subsets = [&](std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    for (u64 mask = 0; mask < (u64{1} << h); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountll(mask)) != k) continue;
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < h; ++i)
        if (mask >> i & 1) s.push_back(i);
      out.push_back(s);
    }
    return out;
  };
  std::vector<std::size_t> dk{0};
  for (std::size_t k = 1; k <= h; ++k) {
    std::size_t best = K;
    for (const auto& r : subsets(k))
      for (const auto& c : subsets(k)) {
        const Poly d = det(r, c);
        for (std::size_t t = 0; t < K; ++t)
          if (d[t]) {
            best = std::min(best, t);
            break;
          }
      }
    if (best >= K) return {};
    dk.push_back(best);
  }
  std::vector<int> e;
  for (std::size_t k = 1; k <= h; ++k) e.push_back(static_cast<int>(dk[k] - dk[k - 1]) - denominator);
  std::sort(e.rbegin(), e.rend());
  return e;
}

}  // namespace oracle
