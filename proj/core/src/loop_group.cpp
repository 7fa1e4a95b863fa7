#include "shtuka/loop_group.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "shtuka/error.hpp"
#include "shtuka/field_linalg.hpp"

namespace shtuka {

namespace {

constexpr std::uint64_t kU64Max = ~std::uint64_t{0};

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    require(r <= kU64Max / base, ErrorKind::BudgetExceeded, "count exceeds 64 bits");
    r *= base;
  }
  return r;
}

bool constant_block_invertible(const FpAlgebra& F, const std::vector<Elem>& c, std::size_t h,
                               const std::vector<std::size_t>& idx) {
  FMat m(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) m.at(a, b) = c[idx[a] * h + idx[b]];
  return frank(F, m) == idx.size();
}

}  // namespace

// ---------------------------------------------------------------------------
// LoopMat

LoopMat::LoopMat(CoeffField field, std::size_t h, std::size_t N)
    : field_(std::move(field)), h_(h), N_(N), c_(h * h * N, 0) {
  require(N >= 1 && N <= kMaxSeriesLength, ErrorKind::InvalidArgument, "truncation level must lie in [1, 64]");
}

LoopMat LoopMat::identity(const CoeffField& field, std::size_t h, std::size_t N) {
  LoopMat m(field, h, N);
  for (std::size_t i = 0; i < h; ++i) m.coeff(i, i, 0) = 1;
  return m;
}

LoopMat LoopMat::from_entries(const CoeffField& field, std::size_t h, const std::vector<TruncSeries>& entries) {
  require(entries.size() == h * h && h > 0, ErrorKind::InvalidArgument, "expected h^2 entries");
  LoopMat m(field, h, entries[0].length());
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) m.set_entry(i, j, entries[i * h + j]);
  return m;
}

TruncSeries LoopMat::entry(std::size_t i, std::size_t j) const {
  std::vector<Elem> s(N_);
  for (std::size_t k = 0; k < N_; ++k) s[k] = coeff(i, j, k);
  return TruncSeries(field_, std::move(s));
}

void LoopMat::set_entry(std::size_t i, std::size_t j, const TruncSeries& s) {
  require(s.length() == N_ && s.field() == field_, ErrorKind::MixedRings, "entry over a different ring");
  for (std::size_t k = 0; k < N_; ++k) coeff(i, j, k) = s[k];
}

LoopMat LoopMat::operator*(const LoopMat& o) const {
  require(h_ == o.h_ && N_ == o.N_ && field_ == o.field_, ErrorKind::MixedRings, "loop matrices do not match");
  const auto& F = *field_.field;
  LoopMat r(field_, h_, N_);
  for (std::size_t a = 0; a < N_; ++a)
    for (std::size_t i = 0; i < h_; ++i)
      for (std::size_t l = 0; l < h_; ++l) {
        const Elem x = coeff(i, l, a);
        if (x == 0) continue;
        for (std::size_t b = 0; a + b < N_; ++b)
          for (std::size_t j = 0; j < h_; ++j) {
            const Elem y = o.coeff(l, j, b);
            if (y) r.coeff(i, j, a + b) = F.add(r.coeff(i, j, a + b), F.mul(x, y));
          }
      }
  return r;
}

LoopMat LoopMat::operator+(const LoopMat& o) const {
  require(h_ == o.h_ && N_ == o.N_ && field_ == o.field_, ErrorKind::MixedRings, "loop matrices do not match");
  LoopMat r(field_, h_, N_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = field_.field->add(c_[i], o.c_[i]);
  return r;
}

bool LoopMat::is_invertible() const {
  FMat m(h_, h_);
  std::copy_n(c_.begin(), h_ * h_, m.a.begin());
  return frank(*field_.field, m) == h_;
}

LoopMat LoopMat::inverse() const {
  const auto& F = *field_.field;
  FMat c0(h_, h_);
  std::copy_n(c_.begin(), h_ * h_, c0.a.begin());
  auto inv0 = finverse(F, c0);
  require(inv0.has_value(), ErrorKind::NotInvertible, "constant term of " + format() + " is singular");
  // sum_{a+b=k} A_a X_b = delta_k0, solved level by level
  std::vector<FMat> A(N_, FMat(h_, h_)), X(N_, FMat(h_, h_));
  for (std::size_t k = 0; k < N_; ++k) std::copy_n(c_.begin() + k * h_ * h_, h_ * h_, A[k].a.begin());
  X[0] = *inv0;
  for (std::size_t k = 1; k < N_; ++k) {
    FMat acc(h_, h_);
    for (std::size_t a = 1; a <= k; ++a) acc = fadd(F, acc, fmul(F, A[a], X[k - a]));
    FMat t = fmul(F, *inv0, acc);
    for (auto& x : t.a) x = F.neg(x);
    X[k] = std::move(t);
  }
  LoopMat r(field_, h_, N_);
  for (std::size_t k = 0; k < N_; ++k) std::copy_n(X[k].a.begin(), h_ * h_, r.c_.begin() + k * h_ * h_);
  return r;
}

LoopMat LoopMat::truncated(std::size_t N) const {
  LoopMat r(field_, h_, N);
  std::copy_n(c_.begin(), std::min(N, N_) * h_ * h_, r.c_.begin());
  return r;
}

LoopMat LoopMat::frobenius() const {
  LoopMat r = *this;
  for (auto& x : r.c_) x = field_.frob(x);
  return r;
}

std::uint64_t LoopMat::key() const {
  const std::uint64_t Q = field_.field->size();
  std::uint64_t k = 0;
  for (Elem x : c_) k = k * Q + x;
  return k;
}

LoopMat LoopMat::from_key(const CoeffField& field, std::size_t h, std::size_t N, std::uint64_t key) {
  const std::uint64_t Q = field.field->size();
  LoopMat m(field, h, N);
  for (std::size_t i = m.c_.size(); i-- > 0;) {
    m.c_[i] = static_cast<Elem>(key % Q);
    key /= Q;
  }
  return m;
}

std::string LoopMat::format() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < h_; ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < h_; ++j) {
      if (j) os << ", ";
      os << entry(i, j).format();
    }
  }
  os << ']';
  return os.str();
}

std::uint64_t loop_space_size(const CoeffField& field, std::size_t h, std::size_t N) {
  return checked_pow(field.field->size(), h * h * N);
}

std::uint64_t gl_order(std::uint64_t Q, std::size_t h, std::size_t N) {
  std::uint64_t r = 1;
  const std::uint64_t qh = checked_pow(Q, h);
  std::uint64_t qi = 1;
  for (std::size_t i = 0; i < h; ++i) {
    r *= qh - qi;
    qi *= Q;
  }
  const std::uint64_t tail = checked_pow(Q, h * h * (N - 1));
  require(tail == 0 || r <= kU64Max / tail, ErrorKind::BudgetExceeded, "count exceeds 64 bits");
  return r * tail;
}

// ---------------------------------------------------------------------------
// GroupParams

GroupParams::GroupParams(CoeffField f, TypeVector m, std::size_t n)
    : field(std::move(f)), h(m.size()), mu(std::move(m)), N(n) {
  require(h >= 1, ErrorKind::InvalidArgument, "rank must be positive");
  require(N >= 1 && N <= kMaxSeriesLength, ErrorKind::InvalidArgument, "level must lie in [1, 64]");
  block_.resize(h);
  std::size_t b = 0;
  for (std::size_t i = 0; i < h; ++i) {
    if (i > 0 && mu[i] != mu[i - 1]) ++b;
    block_[i] = b;
  }
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j)
      require(offset(i, j) + N <= kMaxSeriesLength, ErrorKind::InvalidArgument, "mu too spread for level N");
}

std::size_t GroupParams::offset(std::size_t i, std::size_t j) const {
  return static_cast<std::size_t>(std::max(0, mu[j] - mu[i]));
}

bool GroupParams::same_as(const GroupParams& o) const { return field == o.field && mu == o.mu && N == o.N; }

std::string GroupParams::describe() const {
  return "E_" + std::to_string(N) + "(GL_" + std::to_string(h) + ", " + mu.format() + ") over " +
         field.field->name() + " (q = " + std::to_string(field.q) + ")";
}

// ---------------------------------------------------------------------------
// DisplayGroupElem

bool dg_is_invertible(const GroupParams& params, const std::vector<Elem>& coeffs) {
  const auto& F = *params.field.field;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < params.h; ++i) {
    idx.push_back(i);
    if (i + 1 == params.h || params.block(i + 1) != params.block(i)) {
      if (!constant_block_invertible(F, coeffs, params.h, idx)) return false;
      idx.clear();
    }
  }
  return true;
}

DisplayGroupElem::DisplayGroupElem(GroupParams params, std::vector<Elem> coeffs)
    : params_(std::move(params)), c_(std::move(coeffs)) {
  require(c_.size() == params_.h * params_.h * params_.N, ErrorKind::InvalidArgument,
          "expected h^2 N coefficients");
  const Elem Q = params_.field.field->size();
  for (Elem x : c_) require(x < Q, ErrorKind::InvalidArgument, "coefficient out of range");
  require(dg_is_invertible(params_, c_), ErrorKind::NotInvertible, "a diagonal mu-block is singular mod z");
}

DisplayGroupElem DisplayGroupElem::identity(const GroupParams& params) {
  std::vector<Elem> c(params.h * params.h * params.N, 0);
  for (std::size_t i = 0; i < params.h; ++i) c[i * params.h + i] = 1;
  return DisplayGroupElem(params, std::move(c));
}

TruncSeries DisplayGroupElem::entry(std::size_t i, std::size_t j) const {
  const std::size_t m = params_.offset(i, j);
  std::vector<Elem> s(m + params_.N, 0);
  for (std::size_t k = 0; k < params_.N; ++k) s[m + k] = coeff(i, j, k);
  return TruncSeries(params_.field, std::move(s));
}

std::string DisplayGroupElem::format() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < params_.h; ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < params_.h; ++j) {
      if (j) os << ", ";
      os << entry(i, j).format();
    }
  }
  os << ']';
  return os.str();
}

DisplayGroupElem dg_mul(const DisplayGroupElem& a, const DisplayGroupElem& b) {
  const auto& P = a.params();
  require(P.same_as(b.params()), ErrorKind::ParameterMismatch, "elements of different display groups");
  const auto& F = *P.field.field;
  const std::size_t h = P.h, N = P.N;
  std::vector<Elem> r(h * h * N, 0);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t l = 0; l < h; ++l)
      for (std::size_t j = 0; j < h; ++j) {
        // z^{m_il} A * z^{m_lj} B = z^{m_ij} z^{shift} A B
        const std::size_t shift = P.offset(i, l) + P.offset(l, j) - P.offset(i, j);
        if (shift >= N) continue;
        for (std::size_t x = 0; x + shift < N; ++x) {
          const Elem ax = a.coeff(i, l, x);
          if (ax == 0) continue;
          for (std::size_t y = 0; x + y + shift < N; ++y) {
            const Elem by = b.coeff(l, j, y);
            if (by == 0) continue;
            Elem& dst = r[((x + y + shift) * h + i) * h + j];
            dst = F.add(dst, F.mul(ax, by));
          }
        }
      }
  return DisplayGroupElem(P, std::move(r));
}

namespace {

std::size_t max_offset(const GroupParams& P) {
  std::size_t m = 0;
  for (std::size_t i = 0; i < P.h; ++i)
    for (std::size_t j = 0; j < P.h; ++j) m = std::max(m, P.offset(i, j));
  return m;
}

LoopMat lift_to_loop(const DisplayGroupElem& e, std::size_t level) {
  const auto& P = e.params();
  LoopMat g(P.field, P.h, level);
  for (std::size_t i = 0; i < P.h; ++i)
    for (std::size_t j = 0; j < P.h; ++j) {
      const std::size_t m = P.offset(i, j);
      for (std::size_t k = 0; k < P.N && m + k < level; ++k) g.coeff(i, j, m + k) = e.coeff(i, j, k);
    }
  return g;
}

}  // namespace

DisplayGroupElem dg_from_loop(const GroupParams& params, const LoopMat& g) {
  require(g.h() == params.h && g.field() == params.field, ErrorKind::ParameterMismatch, "loop matrix mismatch");
  require(g.N() >= params.N + max_offset(params), ErrorKind::InvalidArgument, "loop matrix precision too low");
  std::vector<Elem> c(params.h * params.h * params.N);
  for (std::size_t i = 0; i < params.h; ++i)
    for (std::size_t j = 0; j < params.h; ++j) {
      const std::size_t m = params.offset(i, j);
      for (std::size_t k = 0; k < params.N; ++k) c[(k * params.h + i) * params.h + j] = g.coeff(i, j, m + k);
    }
  return DisplayGroupElem(params, std::move(c));
}

DisplayGroupElem dg_inv(const DisplayGroupElem& a) {
  const auto& P = a.params();
  // Any zero-padded lift lies in E_infinity; its inverse there reduces to a^{-1}.
  const LoopMat g = lift_to_loop(a, P.N + max_offset(P));
  return dg_from_loop(P, g.inverse());
}

bool dg_membership(const LoopMat& g, const TypeVector& mu) {
  require(g.h() == mu.size(), ErrorKind::ParameterMismatch, "rank of g and mu differ");
  if (!g.is_invertible()) return false;
  for (std::size_t i = 0; i < g.h(); ++i)
    for (std::size_t j = 0; j < g.h(); ++j) {
      const auto m = static_cast<std::size_t>(std::max(0, mu[j] - mu[i]));
      for (std::size_t k = 0; k < std::min(m, g.N()); ++k)
        if (g.coeff(i, j, k) != 0) return false;
    }
  return true;
}

LoopMat dg_tau(const DisplayGroupElem& e) { return lift_to_loop(e, e.params().N); }

LoopMat dg_sigma(const DisplayGroupElem& e) {
  const auto& P = e.params();
  LoopMat g(P.field, P.h, P.N);
  for (std::size_t i = 0; i < P.h; ++i)
    for (std::size_t j = 0; j < P.h; ++j) {
      const auto s = static_cast<std::size_t>(std::max(0, P.mu[i] - P.mu[j]));
      for (std::size_t k = 0; k + s < P.N; ++k) g.coeff(i, j, k + s) = P.field.frob(e.coeff(i, j, k));
    }
  return g;
}

DisplayGroupElem dg_truncate(const DisplayGroupElem& e) {
  const auto& P = e.params();
  require(P.N >= 2, ErrorKind::LengthUnderflow, "cannot truncate below level 1");
  const GroupParams Q = P.at_level(P.N - 1);
  std::vector<Elem> c(e.coeffs().begin(), e.coeffs().begin() + static_cast<std::ptrdiff_t>(P.h * P.h * Q.N));
  return DisplayGroupElem(Q, std::move(c));
}

// ---------------------------------------------------------------------------
// Counting and enumeration

std::uint64_t dg_predicted_count(const GroupParams& P) {
  const std::uint64_t Q = P.field.field->size();
  std::uint64_t r = 1;
  std::size_t sum_sq = 0;
  for (auto n : P.mu.multiplicities()) {
    const std::uint64_t g = gl_order(Q, n);
    require(r <= kU64Max / g, ErrorKind::BudgetExceeded, "count exceeds 64 bits");
    r *= g;
    sum_sq += n * n;
  }
  const std::uint64_t tail = checked_pow(Q, P.h * P.h - sum_sq + (P.N - 1) * P.h * P.h);
  require(r <= kU64Max / tail, ErrorKind::BudgetExceeded, "count exceeds 64 bits");
  return r * tail;
}

std::uint64_t dg_tuple_count(const GroupParams& P, std::uint64_t budget) {
  const std::uint64_t n = checked_pow(P.field.field->size(), P.h * P.h * P.N);
  require(n <= budget, ErrorKind::BudgetExceeded,
          "enumerating " + std::to_string(n) + " coefficient tuples exceeds the budget of " + std::to_string(budget));
  return n;
}

namespace {

std::vector<Elem> decode_index(const GroupParams& P, std::uint64_t index) {
  const std::uint64_t Q = P.field.field->size();
  std::vector<Elem> c(P.h * P.h * P.N);
  for (std::size_t i = c.size(); i-- > 0;) {
    c[i] = static_cast<Elem>(index % Q);
    index /= Q;
  }
  return c;
}

template <class Fn>
std::uint64_t parallel_count(std::uint64_t total, unsigned jobs, Fn&& count_range) {
  jobs = std::max(1u, jobs);
  if (jobs == 1 || total < 4096) return count_range(0, total);
  std::vector<std::thread> threads;
  std::atomic<std::uint64_t> sum{0};
  const std::uint64_t chunk = (total + jobs - 1) / jobs;
  for (unsigned t = 0; t < jobs; ++t) {
    const std::uint64_t b = std::min(total, t * chunk), e = std::min(total, b + chunk);
    threads.emplace_back([&, b, e] { sum += count_range(b, e); });
  }
  for (auto& th : threads) th.join();
  return sum.load();
}

}  // namespace

std::optional<DisplayGroupElem> dg_from_index(const GroupParams& P, std::uint64_t index) {
  auto c = decode_index(P, index);
  if (!dg_is_invertible(P, c)) return std::nullopt;
  return DisplayGroupElem(P, std::move(c));
}

void dg_enumerate_range(const GroupParams& P, std::uint64_t begin, std::uint64_t end,
                        const std::function<void(const DisplayGroupElem&)>& visit) {
  for (std::uint64_t i = begin; i < end; ++i)
    if (auto e = dg_from_index(P, i)) visit(*e);
}

void dg_enumerate(const GroupParams& P, std::uint64_t budget,
                  const std::function<void(const DisplayGroupElem&)>& visit) {
  dg_enumerate_range(P, 0, dg_tuple_count(P, budget), visit);
}

std::uint64_t dg_count(const GroupParams& P, std::uint64_t budget, unsigned jobs) {
  const std::uint64_t total = dg_tuple_count(P, budget);
  return parallel_count(total, jobs, [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t n = 0;
    for (std::uint64_t i = b; i < e; ++i) n += dg_is_invertible(P, decode_index(P, i));
    return n;
  });
}

std::uint64_t dg_kernel_count(const GroupParams& P, std::uint64_t budget, unsigned jobs) {
  const GroupParams up = P.at_level(P.N + 1);
  const std::uint64_t total = dg_tuple_count(up, budget);
  const auto id = DisplayGroupElem::identity(P);
  return parallel_count(total, jobs, [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t n = 0;
    for (std::uint64_t i = b; i < e; ++i) {
      auto c = decode_index(up, i);
      if (!dg_is_invertible(up, c)) continue;
      n += dg_truncate(DisplayGroupElem(up, std::move(c))) == id;
    }
    return n;
  });
}

// ---------------------------------------------------------------------------
// Subgroups and factorization

std::string to_string(SubgroupTag tag) {
  switch (tag) {
    case SubgroupTag::Cent: return "Cent";
    case SubgroupTag::UPlus: return "U+";
    case SubgroupTag::UMinus: return "U-";
    case SubgroupTag::PPlus: return "P+";
    case SubgroupTag::PMinus: return "P-";
  }
  return "?";
}

bool dg_in_subgroup(const DisplayGroupElem& e, SubgroupTag tag) {
  const auto& P = e.params();
  const bool unipotent = tag == SubgroupTag::UPlus || tag == SubgroupTag::UMinus;
  const bool lower_zero = tag == SubgroupTag::Cent || tag == SubgroupTag::UPlus || tag == SubgroupTag::PPlus;
  const bool upper_zero = tag == SubgroupTag::Cent || tag == SubgroupTag::UMinus || tag == SubgroupTag::PMinus;
  for (std::size_t i = 0; i < P.h; ++i)
    for (std::size_t j = 0; j < P.h; ++j) {
      const std::size_t bi = P.block(i), bj = P.block(j);
      for (std::size_t k = 0; k < P.N; ++k) {
        const Elem x = e.coeff(i, j, k);
        if (bi > bj && lower_zero && x) return false;
        if (bi < bj && upper_zero && x) return false;
        if (bi == bj && unipotent && x != (i == j && k == 0 ? 1u : 0u)) return false;
      }
    }
  return true;
}

E1Factorization dg_factorize_E1(const DisplayGroupElem& e) {
  const auto& P = e.params();
  require(P.N == 1, ErrorKind::InvalidArgument, "factorization is defined on E_1");
  const std::size_t h = P.h;
  std::vector<Elem> c(h * h, 0);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j)
      if (P.block(i) == P.block(j)) c[i * h + j] = e.coeff(i, j, 0);
  DisplayGroupElem cent(P, std::move(c));
  const DisplayGroupElem v = dg_mul(dg_inv(cent), e);
  std::vector<Elem> lo(h * h, 0), up(h * h, 0);
  for (std::size_t i = 0; i < h; ++i) {
    lo[i * h + i] = up[i * h + i] = 1;
    for (std::size_t j = 0; j < h; ++j) {
      if (P.block(i) > P.block(j)) lo[i * h + j] = v.coeff(i, j, 0);
      if (P.block(i) < P.block(j)) up[i * h + j] = v.coeff(i, j, 0);
    }
  }
  E1Factorization f{std::move(cent), DisplayGroupElem(P, std::move(lo)), DisplayGroupElem(P, std::move(up))};
  require(dg_mul(f.c, dg_mul(f.u_minus, f.u_plus)) == e, ErrorKind::InvalidArgument,
          "factorization failed to reassemble " + e.format());
  return f;
}

std::vector<DisplayGroupElem> dg_generators(const GroupParams& P) {
  const auto& F = *P.field.field;
  const std::size_t h = P.h;
  std::vector<DisplayGroupElem> gens;
  const auto id = DisplayGroupElem::identity(P);
  auto with = [&](std::size_t i, std::size_t j, std::size_t k, Elem x) {
    auto c = id.coeffs();
    c[(k * h + i) * h + j] = x;
    return DisplayGroupElem(P, std::move(c));
  };
  // multiplicative generator of F_Q^x
  const std::uint64_t order = F.size() - 1;
  Elem omega = 1;
  for (Elem a = 2; order > 1 && a < F.size(); ++a) {
    bool primitive = true;
    for (std::uint64_t d = 1; d < order && primitive; ++d)
      if (order % d == 0 && F.pow(a, d) == 1) primitive = false;
    if (primitive) {
      omega = a;
      break;
    }
  }
  if (order > 1)
    for (std::size_t i = 0; i < h; ++i) gens.push_back(with(i, i, 0, omega));
  std::vector<Elem> basis;
  for (std::uint32_t t = 0, b = 1; t < F.degree(); ++t, b *= F.p()) basis.push_back(b);
  for (std::size_t k = 0; k < P.N; ++k)
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < h; ++j) {
        if (k == 0 && i == j) continue;
        for (Elem b : basis) gens.push_back(with(i, j, k, b));
      }
  return gens;
}

}  // namespace shtuka
