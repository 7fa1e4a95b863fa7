#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "oracle/oracle.hpp"

namespace oracle {

namespace {

u64 ipow(u64 b, std::size_t e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

// Determinant over a field by cofactor expansion (h <= 4).
u32 det(const GF& F, const std::vector<u32>& a, std::size_t n) {
  if (n == 1) return a[0];
  u32 acc = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<u32> minor;
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) minor.push_back(a[i * n + j]);
    const u32 term = F.mul(a[c], det(F, minor, n - 1));
    acc = c % 2 ? F.sub(acc, term) : F.add(acc, term);
  }
  return acc;
}

std::size_t offset(const std::vector<int>& mu, std::size_t i, std::size_t j) {
  return static_cast<std::size_t>(std::max(0, mu[j] - mu[i]));
}

// Coefficient tuple s (layout (k h + i) h + j) is in E_N.
bool in_E(const GF& F, const std::vector<int>& mu, const std::vector<u32>& s) {
  const std::size_t h = mu.size();
  std::vector<u32> g0(h * h), c0(h * h);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      g0[i * h + j] = offset(mu, i, j) == 0 ? s[i * h + j] : 0;
      c0[i * h + j] = mu[i] <= mu[j] ? s[i * h + j] : 0;
    }
  return det(F, g0, h) != 0 && det(F, c0, h) != 0;
}

void decode(u64 key, u32 base, std::vector<u32>& out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<u32>(key % base);
    key /= base;
  }
}

u64 encode(const std::vector<u32>& v, u32 base) {
  u64 k = 0;
  for (auto x : v) k = k * base + x;
  return k;
}

// h x h matrices over F[z]/z^N, layout (k h + i) h + j.
struct Ring {
  const GF& F;
  std::size_t h, N;
  std::vector<u32> mul(const std::vector<u32>& A, const std::vector<u32>& B) const {
    std::vector<u32> C(h * h * N, 0);
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; a + b < N; ++b)
        for (std::size_t i = 0; i < h; ++i)
          for (std::size_t l = 0; l < h; ++l) {
            const u32 x = A[(a * h + i) * h + l];
            if (!x) continue;
            for (std::size_t j = 0; j < h; ++j) {
              u32& c = C[((a + b) * h + i) * h + j];
              c = F.add(c, F.mul(x, B[(b * h + l) * h + j]));
            }
          }
    return C;
  }
  std::vector<u32> inverse(const std::vector<u32>& A) const {
    // A = A0 (I - X) with X = 0 mod z; A^{-1} = (sum X^k) A0^{-1}.
    std::vector<u32> A0(h * h), inv0(h * h);
    std::copy(A.begin(), A.begin() + static_cast<std::ptrdiff_t>(h * h), A0.begin());
    const u32 d = det(F, A0, h);
    if (!d) throw std::domain_error("not invertible");
    // adjugate / det
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < h; ++j) {
        std::vector<u32> minor;
        for (std::size_t r = 0; r < h; ++r)
          for (std::size_t c = 0; c < h; ++c)
            if (r != j && c != i) minor.push_back(A0[r * h + c]);
        u32 cof = h == 1 ? 1 : det(F, minor, h - 1);
        if ((i + j) % 2) cof = F.neg(cof);
        inv0[i * h + j] = F.mul(cof, F.inv(d));
      }
    std::vector<u32> inv0N(h * h * N, 0);
    std::copy(inv0.begin(), inv0.end(), inv0N.begin());
    std::vector<u32> B = mul(inv0N, A);  // I - X
    std::vector<u32> X(h * h * N);
    for (std::size_t t = 0; t < X.size(); ++t) X[t] = F.neg(B[t]);
    for (std::size_t i = 0; i < h; ++i) X[i * h + i] = F.add(X[i * h + i], 1);
    std::vector<u32> sum(h * h * N, 0), pw(h * h * N, 0);
    for (std::size_t i = 0; i < h; ++i) sum[i * h + i] = pw[i * h + i] = 1;
    for (std::size_t k = 1; k < N; ++k) {
      pw = mul(pw, X);
      for (std::size_t t = 0; t < sum.size(); ++t) sum[t] = F.add(sum[t], pw[t]);
    }
    return mul(sum, inv0N);
  }
};

struct Pair {
  std::vector<u32> tau, siginv;
};

Pair make_pair(const GF& F, u64 qfrob, const std::vector<int>& mu, std::size_t N, const std::vector<u32>& s) {
  const std::size_t h = mu.size();
  const Ring R{F, h, N};
  std::vector<u32> tau(h * h * N, 0), sig(h * h * N, 0);
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < h; ++j) {
        const u32 c = s[(k * h + i) * h + j];
        const std::size_t kt = k + offset(mu, i, j);
        const std::size_t ks = k + static_cast<std::size_t>(std::max(0, mu[i] - mu[j]));
        if (kt < N) tau[(kt * h + i) * h + j] = c;
        if (ks < N) sig[(ks * h + i) * h + j] = F.pow(c, qfrob);
      }
  return {tau, R.inverse(sig)};
}

std::vector<Pair> group_pairs(const GF& F, u64 qfrob, const std::vector<int>& mu, std::size_t N) {
  const std::size_t h = mu.size(), n = h * h * N;
  std::vector<Pair> out;
  std::vector<u32> s(n);
  for (u64 key = 0; key < ipow(F.q, n); ++key) {
    decode(key, F.q, s);
    if (in_E(F, mu, s)) out.push_back(make_pair(F, qfrob, mu, N, s));
  }
  return out;
}

// Diagonal units, elementary matrices at every position, and z^k-level
// elementary perturbations of the identity.
std::vector<Pair> generator_pairs(const GF& F, u64 qfrob, const std::vector<int>& mu, std::size_t N) {
  const std::size_t h = mu.size();
  std::vector<Pair> out;
  auto identity = [&] {
    std::vector<u32> s(h * h * N, 0);
    for (std::size_t i = 0; i < h; ++i) s[i * h + i] = 1;
    return s;
  };
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j)
      for (u32 b = 1; b < F.q; ++b) {
        if (i == j && b == 1) continue;
        auto s = identity();
        s[i * h + j] = b;
        out.push_back(make_pair(F, qfrob, mu, N, s));
      }
  for (std::size_t k = 1; k < N; ++k)
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < h; ++j)
        for (u32 b = 1; b < F.q; ++b) {
          auto s = identity();
          s[(k * h + i) * h + j] = b;
          out.push_back(make_pair(F, qfrob, mu, N, s));
        }
  return out;
}

}  // namespace

u64 e_count(const GF& F, const std::vector<int>& mu, std::size_t N) {
  const std::size_t n = mu.size() * mu.size() * N;
  std::vector<u32> s(n);
  u64 count = 0;
  for (u64 key = 0; key < ipow(F.q, n); ++key) {
    decode(key, F.q, s);
    count += in_E(F, mu, s);
  }
  return count;
}

u64 e_kernel_count(const GF& F, const std::vector<int>& mu, std::size_t N) {
  // Elements of E_{N+1} whose first N coefficient levels are those of the identity.
  const std::size_t h = mu.size(), n = h * h;
  std::vector<u32> s(h * h * (N + 1), 0);
  std::vector<u32> top(n);
  u64 count = 0;
  for (u64 key = 0; key < ipow(F.q, n); ++key) {
    decode(key, F.q, top);
    std::fill(s.begin(), s.end(), 0);
    for (std::size_t i = 0; i < h; ++i) s[i * h + i] = 1;
    std::copy(top.begin(), top.end(), s.begin() + static_cast<std::ptrdiff_t>(N * n));
    count += in_E(F, mu, s);
  }
  return count;
}

OrbitData shtuka_orbits(const GF& F, u64 qfrob, const std::vector<int>& mu, std::size_t N) {
  const std::size_t h = mu.size(), n = h * h * N;
  const u64 space = ipow(F.q, n);
  const bool full = ipow(F.q, n) <= 70000;
  const auto pairs = full ? group_pairs(F, qfrob, mu, N) : generator_pairs(F, qfrob, mu, N);
  const Ring R{F, h, N};
  OrbitData out;
  out.class_of.assign(space, -1);
  std::vector<u32> g(n), g0(h * h);
  std::vector<u64> queue;
  for (u64 key = 0; key < space; ++key) {
    if (out.class_of[key] >= 0) continue;
    decode(key, F.q, g);
    std::copy(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(h * h), g0.begin());
    if (det(F, g0, h) == 0) continue;
    const auto c = static_cast<std::int32_t>(out.reps.size());
    out.class_of[key] = c;
    u64 size = 1;
    queue.assign(1, key);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      decode(queue[qi], F.q, g);
      for (const auto& pr : pairs) {
        const u64 k2 = encode(R.mul(R.mul(pr.tau, g), pr.siginv), F.q);
        if (out.class_of[k2] < 0) {
          out.class_of[k2] = c;
          ++size;
          if (!full) queue.push_back(k2);
        }
      }
      if (full) break;
    }
    out.reps.push_back(key);
    out.orbit_sizes.push_back(size);
  }
  return out;
}

LevelData shtuka_levels(const GF& F, u64 qfrob, const std::vector<int>& mu, std::size_t levels) {
  LevelData out;
  const u64 digits_per_level = ipow(F.q, mu.size() * mu.size());
  OrbitData prev;
  for (std::size_t n = 1; n <= levels; ++n) {
    OrbitData cur = shtuka_orbits(F, qfrob, mu, n);
    out.class_counts.push_back(cur.reps.size());
    if (n > 1) {
      std::vector<std::size_t> img;
      for (auto r : cur.reps) img.push_back(static_cast<std::size_t>(prev.class_of[r / digits_per_level]));
      out.images.push_back(std::move(img));
    }
    prev = std::move(cur);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Zips over F_p. A zip is stored without basis choices: C^1 and D_0 as reduced
// echelon bases, alpha0 as the endomorphism of V with kernel C^1 and image D_0,
// alpha1 as the reduced echelon basis of its graph {(c, v) : v in alpha1(c) + D_0}.

namespace {

using Mat = std::vector<std::vector<std::int64_t>>;

Mat rref(Mat m, std::int64_t p) {
  std::size_t row = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  auto inv = [&](std::int64_t a) {
    for (std::int64_t b = 1; b < p; ++b)
      if (a * b % p == 1) return b;
    throw std::domain_error("no inverse");
  };
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t piv = row;
    while (piv < m.size() && m[piv][c] % p == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[row]);
    const std::int64_t iv = inv(m[row][c]);
    for (auto& x : m[row]) x = x * iv % p;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][c] == 0) continue;
      const std::int64_t f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = ((m[i][j] - f * m[row][j]) % p + p) % p;
    }
    ++row;
  }
  m.resize(row);
  return m;
}

Mat matmul(const Mat& a, const Mat& b, std::int64_t p) {
  Mat r(a.size(), std::vector<std::int64_t>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) r[i][j] = (r[i][j] + a[i][k] * b[k][j]) % p;
  return r;
}

std::vector<Mat> all_matrices(std::size_t r, std::size_t c, std::int64_t p) {
  std::vector<Mat> out;
  const u64 total = ipow(static_cast<u64>(p), r * c);
  for (u64 k = 0; k < total; ++k) {
    Mat m(r, std::vector<std::int64_t>(c));
    u64 x = k;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        m[i][j] = static_cast<std::int64_t>(x % static_cast<u64>(p));
        x /= static_cast<u64>(p);
      }
    out.push_back(m);
  }
  return out;
}

std::size_t rank(const Mat& m, std::int64_t p) { return rref(m, p).size(); }

std::vector<Mat> subspaces_of(std::size_t h, std::size_t k, std::int64_t p) {
  std::set<Mat> s;
  if (k == 0) return {Mat{}};
  for (const auto& m : all_matrices(k, h, p))
    if (rank(m, p) == k) s.insert(rref(m, p));
  return {s.begin(), s.end()};
}

Mat transpose(const Mat& m) {
  if (m.empty()) return m;
  Mat t(m[0].size(), std::vector<std::int64_t>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[0].size(); ++j) t[j][i] = m[i][j];
  return t;
}

struct RawZip {
  Mat C, D, M0, G1;
  bool operator<(const RawZip& o) const { return std::tie(C, D, M0, G1) < std::tie(o.C, o.D, o.M0, o.G1); }
};

// Column vectors forming a complement of the row space of S (standard vectors).
std::vector<std::vector<std::int64_t>> complement(const Mat& S, std::size_t h, std::int64_t p) {
  std::vector<std::vector<std::int64_t>> out;
  Mat cur = S;
  for (std::size_t i = 0; i < h; ++i) {
    std::vector<std::int64_t> e(h, 0);
    e[i] = 1;
    Mat trial = cur;
    trial.push_back(e);
    if (rank(trial, p) > rank(cur, p)) {
      cur = trial;
      out.push_back(e);
    }
  }
  return out;
}

RawZip act(const Mat& g, const Mat& ginv, const RawZip& z, std::int64_t p) {
  const std::size_t h = g.size();
  RawZip r;
  auto img = [&](const Mat& rows) { return rows.empty() ? rows : rref(transpose(matmul(g, transpose(rows), p)), p); };
  r.C = img(z.C);
  r.D = img(z.D);
  r.M0 = matmul(matmul(g, z.M0, p), ginv, p);
  Mat gg(2 * h, std::vector<std::int64_t>(2 * h, 0));
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) gg[i][j] = gg[h + i][h + j] = g[i][j];
  r.G1 = rref(transpose(matmul(gg, transpose(z.G1), p)), p);
  return r;
}

}  // namespace

CountData zip_orbits(u32 pp, std::size_t h, std::size_t d) {
  const auto p = static_cast<std::int64_t>(pp);
  std::vector<RawZip> zips;
  const auto Cs = subspaces_of(h, d, p);
  const auto Ds = subspaces_of(h, h - d, p);
  for (const auto& C : Cs)
    for (const auto& D : Ds) {
      const auto compC = complement(C, h, p);  // basis of V/C^1
      const auto compD = complement(D, h, p);  // basis of V/D_0
      for (const auto& A0 : all_matrices(h - d, h - d, p)) {
        if (h - d && rank(A0, p) < h - d) continue;
        // M0 sends compC[j] to sum_r A0[r][j] D[r] and kills C.
        Mat src(h, std::vector<std::int64_t>(h, 0)), dst(h, std::vector<std::int64_t>(h, 0));
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t c = 0; c < h; ++c) src[c][i] = C[i][c];
        for (std::size_t j = 0; j < h - d; ++j) {
          for (std::size_t c = 0; c < h; ++c) src[c][d + j] = compC[j][c];
          for (std::size_t r = 0; r < h - d; ++r)
            for (std::size_t c = 0; c < h; ++c) dst[c][d + j] = (dst[c][d + j] + A0[r][j] * D[r][c]) % p;
        }
        // M0 = dst * src^{-1}
        Mat aug = transpose(src);
        Mat id(h, std::vector<std::int64_t>(h, 0));
        for (std::size_t i = 0; i < h; ++i) id[i][i] = 1;
        Mat big(h, std::vector<std::int64_t>(2 * h));
        for (std::size_t i = 0; i < h; ++i)
          for (std::size_t j = 0; j < h; ++j) {
            big[i][j] = src[i][j];
            big[i][h + j] = id[i][j];
          }
        big = rref(big, p);
        Mat srcinv(h, std::vector<std::int64_t>(h));
        for (std::size_t i = 0; i < h; ++i)
          for (std::size_t j = 0; j < h; ++j) srcinv[i][j] = big[i][h + j];
        const Mat M0 = matmul(dst, srcinv, p);
        for (const auto& A1 : all_matrices(d, d, p)) {
          if (d && rank(A1, p) < d) continue;
          Mat graph;
          for (std::size_t i = 0; i < d; ++i) {
            std::vector<std::int64_t> row(2 * h, 0);
            for (std::size_t c = 0; c < h; ++c) row[c] = C[i][c];
            for (std::size_t r = 0; r < d; ++r)
              for (std::size_t c = 0; c < h; ++c) row[h + c] = (row[h + c] + A1[r][i] * compD[r][c]) % p;
            graph.push_back(row);
          }
          for (std::size_t r = 0; r < h - d; ++r) {
            std::vector<std::int64_t> row(2 * h, 0);
            for (std::size_t c = 0; c < h; ++c) row[h + c] = D[r][c];
            graph.push_back(row);
          }
          zips.push_back({C, D, M0, rref(graph, p)});
        }
      }
    }
  std::sort(zips.begin(), zips.end());
  std::vector<std::pair<Mat, Mat>> group;
  for (const auto& g : all_matrices(h, h, p)) {
    if (rank(g, p) < h) continue;
    Mat big(h, std::vector<std::int64_t>(2 * h, 0));
    for (std::size_t i = 0; i < h; ++i) {
      for (std::size_t j = 0; j < h; ++j) big[i][j] = g[i][j];
      big[i][h + i] = 1;
    }
    big = rref(big, p);
    Mat ginv(h, std::vector<std::int64_t>(h));
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < h; ++j) ginv[i][j] = big[i][h + j];
    group.emplace_back(g, ginv);
  }
  CountData out;
  std::vector<bool> seen(zips.size(), false);
  for (std::size_t i = 0; i < zips.size(); ++i) {
    if (seen[i]) continue;
    ++out.classes;
    u64 size = 0;
    for (const auto& [g, gi] : group) {
      const RawZip z = act(g, gi, zips[i], p);
      auto it = std::lower_bound(zips.begin(), zips.end(), z);
      if (it == zips.end() || it->C != z.C || it->D != z.D || it->M0 != z.M0 || it->G1 != z.G1)
        throw std::logic_error("zip orbit left the enumeration");
      const auto j = static_cast<std::size_t>(it - zips.begin());
      if (!seen[j]) {
        seen[j] = true;
        ++size;
      }
    }
    out.orbit_sizes.push_back(size);
  }
  std::sort(out.orbit_sizes.begin(), out.orbit_sizes.end());
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct ZMod {
  std::int64_t p, m;
  Mat mul(const Mat& a, const Mat& b) const {
    Mat r(a.size(), std::vector<std::int64_t>(b[0].size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t k = 0; k < b.size(); ++k)
        for (std::size_t j = 0; j < b[0].size(); ++j) r[i][j] = (r[i][j] + a[i][k] * b[k][j]) % m;
    return r;
  }
  bool unit(std::int64_t a) const { return a % p != 0; }
  std::int64_t inv(std::int64_t a) const {
    for (std::int64_t b = 1; b < m; ++b)
      if (a * b % m == 1) return b;
    throw std::domain_error("non-unit");
  }
  std::optional<Mat> inverse(Mat a) const {
    const std::size_t n = a.size();
    Mat r(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = c;
      while (piv < n && !unit(a[piv][c])) ++piv;
      if (piv == n) return std::nullopt;
      std::swap(a[piv], a[c]);
      std::swap(r[piv], r[c]);
      const std::int64_t iv = inv(a[c][c]);
      for (std::size_t j = 0; j < n; ++j) {
        a[c][j] = a[c][j] * iv % m;
        r[c][j] = r[c][j] * iv % m;
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (i == c || a[i][c] == 0) continue;
        const std::int64_t f = a[i][c];
        for (std::size_t j = 0; j < n; ++j) {
          a[i][j] = ((a[i][j] - f * a[c][j]) % m + m) % m;
          r[i][j] = ((r[i][j] - f * r[c][j]) % m + m) % m;
        }
      }
    }
    return r;
  }
};

}  // namespace

namespace {

struct DisplayAct {
  Mat f, tinv;
};

std::vector<DisplayAct> display_acts(const ZMod& Z, std::int64_t p, std::size_t h, std::size_t d,
                                     const std::vector<Mat>& all) {
  std::vector<DisplayAct> acts;
  for (const auto& m : all) {
    // blocks of m read as (a, b, y, e)
    Mat f = m, t = m;
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < h; ++j) {
        if (i >= d && j < d) f[i][j] = p * m[i][j] % Z.m;
        if (i < d && j >= d) t[i][j] = p * m[i][j] % Z.m;
      }
    Mat a(d, std::vector<std::int64_t>(d)), e(h - d, std::vector<std::int64_t>(h - d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) a[i][j] = m[i][j];
    for (std::size_t i = 0; i < h - d; ++i)
      for (std::size_t j = 0; j < h - d; ++j) e[i][j] = m[d + i][d + j];
    if ((d && !Z.inverse(a)) || (h - d && !Z.inverse(e))) continue;
    acts.push_back({f, *Z.inverse(t)});
  }
  return acts;
}

}  // namespace

bool display_isomorphic(u32 pp, std::size_t h, std::size_t d, std::size_t N,
                        const std::vector<std::vector<std::int64_t>>& psi1,
                        const std::vector<std::vector<std::int64_t>>& psi2) {
  const auto p = static_cast<std::int64_t>(pp);
  const ZMod Z{p, static_cast<std::int64_t>(ipow(pp, N))};
  for (const auto& a : display_acts(Z, p, h, d, all_matrices(h, h, Z.m)))
    if (Z.mul(Z.mul(a.f, psi1), a.tinv) == psi2) return true;
  return false;
}

CountData display_orbits(u32 pp, std::size_t h, std::size_t d, std::size_t N) {
  const auto p = static_cast<std::int64_t>(pp);
  const ZMod Z{p, static_cast<std::int64_t>(ipow(pp, N))};
  const auto all = all_matrices(h, h, Z.m);
  const auto acts = display_acts(Z, p, h, d, all);
  std::map<Mat, std::size_t> index;
  for (std::size_t i = 0; i < all.size(); ++i) index[all[i]] = i;
  std::vector<bool> seen(all.size(), false);
  CountData out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (seen[i] || !Z.inverse(all[i])) continue;
    ++out.classes;
    u64 size = 0;
    for (const auto& a : acts) {
      const std::size_t j = index.at(Z.mul(Z.mul(a.f, all[i]), a.tinv));
      if (!seen[j]) {
        seen[j] = true;
        ++size;
      }
    }
    out.orbit_sizes.push_back(size);
  }
  std::sort(out.orbit_sizes.begin(), out.orbit_sizes.end());
  return out;
}

}  // namespace oracle
