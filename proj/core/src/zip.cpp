#include "shtuka/zip.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "shtuka/error.hpp"

namespace shtuka {

namespace {

std::vector<std::size_t> pivots_of(const FMat& s) {
  std::vector<std::size_t> piv;
  for (std::size_t r = 0; r < s.rows; ++r)
    for (std::size_t c = 0; c < s.cols; ++c)
      if (s.at(r, c) != 0) {
        piv.push_back(c);
        break;
      }
  return piv;
}

std::vector<std::size_t> non_pivots(const FMat& s) {
  const auto piv = pivots_of(s);
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < s.cols; ++c)
    if (std::find(piv.begin(), piv.end(), c) == piv.end()) out.push_back(c);
  return out;
}

bool is_rref(const FpAlgebra& F, const FMat& s) {
  std::vector<std::size_t> piv;
  const FMat r = frref(F, s, &piv);
  return piv.size() == s.rows && r == s;
}

std::vector<Elem> column(const FMat& m, std::size_t j) {
  std::vector<Elem> v(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) v[i] = m.at(i, j);
  return v;
}

std::vector<Elem> apply(const FpAlgebra& F, const FMat& g, const std::vector<Elem>& v) {
  std::vector<Elem> r(g.rows, 0);
  for (std::size_t i = 0; i < g.rows; ++i)
    for (std::size_t j = 0; j < g.cols; ++j) r[i] = F.add(r[i], F.mul(g.at(i, j), v[j]));
  return r;
}

// Coordinates of v (assumed to lie in S) in the echelon basis of S.
std::vector<Elem> sub_coords(const FMat& S, const std::vector<Elem>& v) {
  const auto piv = pivots_of(S);
  std::vector<Elem> c(piv.size());
  for (std::size_t r = 0; r < piv.size(); ++r) c[r] = v[piv[r]];
  return c;
}

// Coordinates of the class of v in V/S.
std::vector<Elem> quot_coords(const FpAlgebra& F, const FMat& S, std::vector<Elem> v) {
  const auto piv = pivots_of(S);
  for (std::size_t r = 0; r < piv.size(); ++r) {
    const Elem f = v[piv[r]];
    if (!f) continue;
    for (std::size_t c = 0; c < v.size(); ++c) v[c] = F.sub(v[c], F.mul(f, S.at(r, c)));
  }
  std::vector<Elem> out;
  for (auto c : non_pivots(S)) out.push_back(v[c]);
  return out;
}

FMat from_columns(const std::vector<std::vector<Elem>>& cols, std::size_t rows) {
  FMat m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
  return m;
}

FMat image_rows(const FpAlgebra& F, const FMat& g, const FMat& S) {
  return frref(F, fmul(F, S, g.transposed()));
}

// Map S -> S' induced by g, in echelon coordinates.
FMat sub_map(const FpAlgebra& F, const FMat& g, const FMat& S, const FMat& Sp) {
  std::vector<std::vector<Elem>> cols;
  for (std::size_t r = 0; r < S.rows; ++r) {
    std::vector<Elem> row(S.a.begin() + static_cast<std::ptrdiff_t>(r * S.cols),
                          S.a.begin() + static_cast<std::ptrdiff_t>((r + 1) * S.cols));
    cols.push_back(sub_coords(Sp, apply(F, g, row)));
  }
  return from_columns(cols, Sp.rows);
}

// Map V/S -> V/S' induced by g.
FMat quot_map(const FpAlgebra& F, const FMat& g, const FMat& S, const FMat& Sp) {
  std::vector<std::vector<Elem>> cols;
  const auto np = non_pivots(S);
  for (auto c : np) {
    std::vector<Elem> e(S.cols, 0);
    e[c] = 1;
    cols.push_back(quot_coords(F, Sp, apply(F, g, e)));
  }
  return from_columns(cols, Sp.cols - Sp.rows);
}

std::uint64_t checked_power(std::uint64_t b, std::size_t e, std::uint64_t budget, const char* what) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    require(r <= budget / b, ErrorKind::BudgetExceeded, std::string(what) + " exceeds the budget");
    r *= b;
  }
  return r;
}

}  // namespace

bool FZipHD::operator<(const FZipHD& o) const {
  return std::tie(C1.a, D0.a, alpha0.a, alpha1.a) < std::tie(o.C1.a, o.D0.a, o.alpha0.a, o.alpha1.a);
}

bool FZipHD::operator==(const FZipHD& o) const {
  return field == o.field && h == o.h && d == o.d && C1 == o.C1 && D0 == o.D0 && alpha0 == o.alpha0 &&
         alpha1 == o.alpha1;
}

void zip_validate(const FZipHD& z) {
  const auto& F = *z.field.field;
  require(z.d <= z.h, ErrorKind::InvalidArgument, "d exceeds h");
  require(z.C1.rows == z.d && z.C1.cols == z.h, ErrorKind::InvalidArgument, "C1 must be d x h");
  require(z.D0.rows == z.h - z.d && z.D0.cols == z.h, ErrorKind::InvalidArgument, "D0 must be (h-d) x h");
  require(is_rref(F, z.C1), ErrorKind::InvalidArgument, "C1 is not a reduced echelon basis");
  require(is_rref(F, z.D0), ErrorKind::InvalidArgument, "D0 is not a reduced echelon basis");
  require(z.alpha0.rows == z.h - z.d && z.alpha0.cols == z.h - z.d && finverse(F, z.alpha0).has_value(),
          ErrorKind::InvalidArgument, "alpha0 must be an invertible (h-d) x (h-d) matrix");
  require(z.alpha1.rows == z.d && z.alpha1.cols == z.d && finverse(F, z.alpha1).has_value(),
          ErrorKind::InvalidArgument, "alpha1 must be an invertible d x d matrix");
}

FZipHD zip_act(const FMat& g, const FZipHD& z) {
  const auto& F = *z.field.field;
  require(g.rows == z.h && g.cols == z.h, ErrorKind::ParameterMismatch, "g has the wrong size");
  FZipHD r = z;
  r.C1 = image_rows(F, g, z.C1);
  r.D0 = image_rows(F, g, z.D0);
  // alpha' = gr(g) alpha gr(g)^(q)^{-1}
  const FMat gc0 = quot_map(F, g, z.C1, r.C1);
  const FMat gc1 = sub_map(F, g, z.C1, r.C1);
  const FMat gd0 = sub_map(F, g, z.D0, r.D0);
  const FMat gd1 = quot_map(F, g, z.D0, r.D0);
  auto tw_inv = [&](const FMat& m) { return *finverse(F, fpow_entries(F, m, z.field.q)); };
  r.alpha0 = fmul(F, fmul(F, gd0, z.alpha0), tw_inv(gc0));
  r.alpha1 = fmul(F, fmul(F, gd1, z.alpha1), tw_inv(gc1));
  return r;
}

std::vector<FMat> general_linear(const FpAlgebra& F, std::size_t n, std::uint64_t budget) {
  const std::uint64_t total = checked_power(F.size(), n * n, budget, "GL_n enumeration");
  std::vector<FMat> out;
  FMat m(n, n);
  for (std::uint64_t k = 0; k < total; ++k) {
    std::uint64_t x = k;
    for (std::size_t i = n * n; i-- > 0;) {
      m.a[i] = static_cast<Elem>(x % F.size());
      x /= F.size();
    }
    if (frank(F, m) == n) out.push_back(m);
  }
  return out;
}

std::vector<FMat> subspaces(const FpAlgebra& F, std::size_t h, std::size_t k) {
  std::vector<FMat> out;
  std::vector<bool> choose(h, false);
  std::fill(choose.begin(), choose.begin() + static_cast<std::ptrdiff_t>(k), true);
  // Every pivot pattern, then every filling of the free slots.
  do {
    std::vector<std::size_t> piv;
    for (std::size_t c = 0; c < h; ++c)
      if (choose[c]) piv.push_back(c);
    std::vector<std::pair<std::size_t, std::size_t>> free_slots;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = piv[r] + 1; c < h; ++c)
        if (!choose[c]) free_slots.emplace_back(r, c);
    std::uint64_t fillings = 1;
    for (std::size_t i = 0; i < free_slots.size(); ++i) fillings *= F.size();
    for (std::uint64_t f = 0; f < fillings; ++f) {
      FMat m(k, h);
      for (std::size_t r = 0; r < k; ++r) m.at(r, piv[r]) = 1;
      std::uint64_t x = f;
      for (std::size_t i = free_slots.size(); i-- > 0;) {
        m.at(free_slots[i].first, free_slots[i].second) = static_cast<Elem>(x % F.size());
        x /= F.size();
      }
      out.push_back(std::move(m));
    }
  } while (std::prev_permutation(choose.begin(), choose.end()));
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<ZipIso> zip_iso_test(const FZipHD& a, const FZipHD& b, std::uint64_t budget) {
  zip_validate(a);
  zip_validate(b);
  require(a.field == b.field && a.h == b.h && a.d == b.d, ErrorKind::ParameterMismatch, "zips of different types");
  for (const auto& g : general_linear(*a.field.field, a.h, budget))
    if (zip_act(g, a) == b) return ZipIso{g};
  return std::nullopt;
}

std::vector<FZipHD> zip_enumerate(const CoeffField& field, std::size_t h, std::size_t d, std::uint64_t budget) {
  require(d <= h, ErrorKind::InvalidArgument, "d exceeds h");
  const auto& F = *field.field;
  const auto Cs = subspaces(F, h, d);
  const auto Ds = subspaces(F, h, h - d);
  const auto A0 = general_linear(F, h - d, budget);
  const auto A1 = general_linear(F, d, budget);
  const std::uint64_t total = Cs.size() * Ds.size() * A0.size() * A1.size();
  require(total <= budget, ErrorKind::BudgetExceeded, "zip enumeration exceeds the budget");
  std::vector<FZipHD> out;
  out.reserve(total);
  for (const auto& c : Cs)
    for (const auto& dd : Ds)
      for (const auto& a0 : A0)
        for (const auto& a1 : A1) out.push_back({field, h, d, c, dd, a0, a1});
  return out;
}

ZipClassTable zip_classify(const CoeffField& field, std::size_t h, std::size_t d, std::uint64_t budget) {
  const auto zips = zip_enumerate(field, h, d, budget);
  const auto group = general_linear(*field.field, h, budget);
  require(static_cast<double>(group.size()) * static_cast<double>(zips.size()) <= 64.0 * static_cast<double>(budget),
          ErrorKind::BudgetExceeded, "zip classification exceeds the budget");
  ZipClassTable t{field, h, d, zips.size(), group.size(), {}};
  std::vector<bool> seen(zips.size(), false);
  auto index_of = [&](const FZipHD& z) {
    auto it = std::lower_bound(zips.begin(), zips.end(), z);
    require(it != zips.end() && *it == z, ErrorKind::InvalidArgument, "transported zip missing from the enumeration");
    return static_cast<std::size_t>(it - zips.begin());
  };
  for (std::size_t i = 0; i < zips.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t orbit = 0, stab = 0;
    for (const auto& g : group) {
      const std::size_t j = index_of(zip_act(g, zips[i]));
      if (j == i) ++stab;
      if (!seen[j]) {
        seen[j] = true;
        ++orbit;
      }
    }
    t.classes.push_back({zips[i], orbit, stab});
  }
  return t;
}

FZipHD zip_twist(const FZipHD& z) {
  FZipHD r = z;
  r.C1 = fpow_entries(*z.field.field, z.C1, z.field.q);
  return r;
}

std::size_t minuscule_d(const TypeVector& mu) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    require(mu[i] == 0 || mu[i] == 1, ErrorKind::TypeMismatch, "type " + mu.format() + " is not of the form (1,..,1,0,..,0)");
    if (mu[i] == 1) ++d;
  }
  return d;
}

FZipHD zip_from_matrix(const CoeffField& field, std::size_t d, const FMat& g) {
  const auto& F = *field.field;
  const std::size_t h = g.rows;
  require(d <= h && g.cols == h, ErrorKind::InvalidArgument, "bad matrix shape for a zip");
  require(frank(F, g) == h, ErrorKind::NotInvertible, "matrix is not invertible");
  FZipHD z{field, h, d, FMat(d, h), FMat(), FMat(), FMat()};
  for (std::size_t i = 0; i < d; ++i) z.C1.at(i, i) = 1;
  z.D0 = frref(F, g.columns(d, h - d).transposed());
  std::vector<std::vector<Elem>> c0, c1;
  for (std::size_t j = d; j < h; ++j) c0.push_back(sub_coords(z.D0, column(g, j)));
  for (std::size_t i = 0; i < d; ++i) c1.push_back(quot_coords(F, z.D0, column(g, i)));
  z.alpha0 = from_columns(c0, h - d);
  z.alpha1 = from_columns(c1, d);
  return z;
}

FZipHD shtuka1_to_zip(const TruncShtuka& s) {
  require(s.g.N() == 1, ErrorKind::InvalidArgument, "shtuka must be 1-truncated");
  require(s.mu.size() == s.g.h(), ErrorKind::ParameterMismatch, "type has the wrong length");
  const std::size_t d = minuscule_d(s.mu);
  FMat g(s.g.h(), s.g.h());
  for (std::size_t i = 0; i < g.rows; ++i)
    for (std::size_t j = 0; j < g.cols; ++j) g.at(i, j) = s.g.coeff(i, j, 0);
  return zip_from_matrix(s.g.field(), d, g);
}

TruncShtuka zip_to_shtuka1(const FZipHD& z0) {
  zip_validate(z0);
  const auto& F = *z0.field.field;
  const std::size_t h = z0.h, d = z0.d;
  // B sends e_i to the i-th basis row of C^1 and e_{d+j} to the j-th complement vector.
  FMat B(h, h);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t c = 0; c < h; ++c) B.at(c, i) = z0.C1.at(i, c);
  const auto np = non_pivots(z0.C1);
  for (std::size_t j = 0; j < np.size(); ++j) B.at(np[j], d + j) = 1;
  const FZipHD z = zip_act(*finverse(F, B), z0);
  FMat g(h, h);
  for (std::size_t j = 0; j < h - d; ++j)
    for (std::size_t r = 0; r < h - d; ++r) {
      const Elem f = z.alpha0.at(r, j);
      for (std::size_t c = 0; c < h; ++c) g.at(c, d + j) = F.add(g.at(c, d + j), F.mul(f, z.D0.at(r, c)));
    }
  const auto dnp = non_pivots(z.D0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t r = 0; r < d; ++r) g.at(dnp[r], i) = z.alpha1.at(r, i);
  LoopMat m(z.field, h, 1);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) m.coeff(i, j, 0) = g.at(i, j);
  std::vector<int> mu(h, 0);
  std::fill(mu.begin(), mu.begin() + static_cast<std::ptrdiff_t>(d), 1);
  return {m, TypeVector(mu)};
}

// ---------------------------------------------------------------------------

namespace {

void write_matrix(std::ostringstream& os, const FpAlgebra& F, const std::string& name, const FMat& m) {
  os << name << ' ' << m.rows << ' ' << m.cols << '\n';
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) os << (j ? " " : "") << F.format(m.at(i, j));
    os << '\n';
  }
}

FMat read_matrix(std::istringstream& is, const FpAlgebra& F, const std::string& name) {
  std::string tag;
  std::size_t r = 0, c = 0;
  require(static_cast<bool>(is >> tag >> r >> c) && tag == name, ErrorKind::Parse, "expected block '" + name + "'");
  FMat m(r, c);
  for (auto& x : m.a) {
    std::string tok;
    require(static_cast<bool>(is >> tok), ErrorKind::Parse, "truncated matrix '" + name + "'");
    x = F.parse(tok);
  }
  return m;
}

}  // namespace

std::string zip_format(const FZipHD& z) {
  std::ostringstream os;
  const auto& F = *z.field.field;
  os << "zip Q " << F.size() << " q " << z.field.q << " h " << z.h << " d " << z.d << '\n';
  write_matrix(os, F, "C1", z.C1);
  write_matrix(os, F, "D0", z.D0);
  write_matrix(os, F, "alpha0", z.alpha0);
  write_matrix(os, F, "alpha1", z.alpha1);
  return os.str();
}

FZipHD zip_parse(const std::string& text) {
  std::istringstream is(text);
  std::string w, kQ, kq, kh, kd;
  std::uint64_t Q = 0, q = 0;
  std::size_t h = 0, d = 0;
  require(static_cast<bool>(is >> w >> kQ >> Q >> kq >> q >> kh >> h >> kd >> d) && w == "zip" && kQ == "Q" &&
              kq == "q" && kh == "h" && kd == "d",
          ErrorKind::Parse, "zip header must read 'zip Q <Q> q <q> h <h> d <d>'");
  const auto F = FpAlgebra::field_of_order(Q);
  require(prime_power(q).first == F->p() && (F->degree() % prime_power(q).second) == 0, ErrorKind::Parse,
          "q must be a power of p dividing the degree of Q");
  FZipHD z{CoeffField{F, q}, h, d, {}, {}, {}, {}};
  z.C1 = read_matrix(is, *F, "C1");
  z.D0 = read_matrix(is, *F, "D0");
  z.alpha0 = read_matrix(is, *F, "alpha0");
  z.alpha1 = read_matrix(is, *F, "alpha1");
  zip_validate(z);
  return z;
}

}  // namespace shtuka
