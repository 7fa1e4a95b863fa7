#include "shtuka/shtuka_moduli.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_set>

#include "shtuka/error.hpp"
#include "shtuka/field_linalg.hpp"

namespace shtuka {

std::string to_string(ActionConvention c) {
  return c == ActionConvention::InverseOfSigma ? "sigma-inverse" : "sigma-of-inverse";
}

ActionConvention parse_convention(const std::string& s) {
  if (s == "sigma-inverse") return ActionConvention::InverseOfSigma;
  if (s == "sigma-of-inverse") return ActionConvention::SigmaOfInverse;
  throw Error(ErrorKind::Parse, "unknown action convention '" + s + "'");
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Full: return "full";
    case Strategy::Bfs: return "bfs";
    case Strategy::Lift: return "lift";
  }
  return "?";
}

Strategy parse_strategy(const std::string& s) {
  if (s == "full") return Strategy::Full;
  if (s == "bfs") return Strategy::Bfs;
  if (s == "lift") return Strategy::Lift;
  throw Error(ErrorKind::Parse, "unknown strategy '" + s + "'");
}

namespace {

LoopMat sigma_inverse(const DisplayGroupElem& e, ActionConvention conv) {
  return conv == ActionConvention::InverseOfSigma ? dg_sigma(e).inverse() : dg_sigma(dg_inv(e));
}

// Table-driven arithmetic on flat coefficient arrays of h x h matrices over R_N.
class Kernel {
 public:
  Kernel(const CoeffField& f, std::size_t h, std::size_t N) : h_(h), N_(N), Q_(f.field->size()) {
    require(Q_ <= 1024, ErrorKind::BudgetExceeded, "field too large for orbit enumeration");
    add_.resize(Q_ * Q_);
    mul_.resize(Q_ * Q_);
    for (Elem a = 0; a < Q_; ++a)
      for (Elem b = 0; b < Q_; ++b) {
        add_[a * Q_ + b] = f.field->add(a, b);
        mul_[a * Q_ + b] = f.field->mul(a, b);
      }
  }

  std::size_t size() const { return h_ * h_ * N_; }

  void mul(const Elem* A, const Elem* B, Elem* C) const {
    std::fill(C, C + size(), 0);
    for (std::size_t a = 0; a < N_; ++a)
      for (std::size_t i = 0; i < h_; ++i)
        for (std::size_t l = 0; l < h_; ++l) {
          const Elem x = A[(a * h_ + i) * h_ + l];
          if (!x) continue;
          const Elem* mrow = &mul_[x * Q_];
          for (std::size_t b = 0; a + b < N_; ++b) {
            const Elem* Brow = B + (b * h_ + l) * h_;
            Elem* Crow = C + ((a + b) * h_ + i) * h_;
            for (std::size_t j = 0; j < h_; ++j)
              if (Brow[j]) Crow[j] = add_[Crow[j] * Q_ + mrow[Brow[j]]];
          }
        }
  }

  std::uint64_t key(const Elem* A) const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < size(); ++i) k = k * Q_ + A[i];
    return k;
  }

  void decode(std::uint64_t k, Elem* A) const {
    for (std::size_t i = size(); i-- > 0;) {
      A[i] = static_cast<Elem>(k % Q_);
      k /= Q_;
    }
  }

 private:
  std::size_t h_, N_;
  std::uint64_t Q_;
  std::vector<Elem> add_, mul_;
};

struct ActionPair {
  std::vector<Elem> tau, siginv;
};

ActionPair make_pair(const DisplayGroupElem& e, ActionConvention conv) {
  return {dg_tau(e).coeffs(), sigma_inverse(e, conv).coeffs()};
}

// out = tau * g * siginv
struct Actor {
  const Kernel& K;
  std::vector<Elem> tmp;
  explicit Actor(const Kernel& k) : K(k), tmp(k.size()) {}
  void act(const ActionPair& p, const Elem* g, Elem* out) {
    K.mul(p.tau.data(), g, tmp.data());
    K.mul(tmp.data(), p.siginv.data(), out);
  }
};

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::vector<bool> invertible_constant_terms(const GroupParams& P) {
  const std::uint64_t n = ipow(P.field.field->size(), P.h * P.h);
  std::vector<bool> ok(n);
  for (std::uint64_t k = 0; k < n; ++k) ok[k] = LoopMat::from_key(P.field, P.h, 1, k).is_invertible();
  return ok;
}

OrbitTable base_table(const GroupParams& P, Strategy s, ActionConvention conv) {
  OrbitTable t{P, s, conv, {}, 0, dg_predicted_count(P), gl_order(P.field.field->size(), P.h, P.N), {}};
  return t;
}

// Orbits by expanding from the smallest unvisited point; the first point met in
// key order is therefore the lexicographic minimum of its orbit.
OrbitTable classify_dense(const GroupParams& P, const ClassifyOptions& opts, Strategy strategy) {
  const std::uint64_t space = loop_space_size(P.field, P.h, P.N);
  require(space <= opts.max_states, ErrorKind::BudgetExceeded,
          "point space of size " + std::to_string(space) + " exceeds --max-states " + std::to_string(opts.max_states));
  std::vector<ActionPair> pairs;
  if (strategy == Strategy::Full) {
    dg_enumerate(P, opts.max_group, [&](const DisplayGroupElem& e) { pairs.push_back(make_pair(e, opts.convention)); });
  } else {
    for (const auto& e : dg_generators(P)) pairs.push_back(make_pair(e, opts.convention));
  }
  OrbitTable table = base_table(P, strategy, opts.convention);
  table.generator_count = pairs.size();

  const Kernel K(P.field, P.h, P.N);
  Actor actor(K);
  const auto inv0 = invertible_constant_terms(P);
  const std::uint64_t tail = ipow(P.field.field->size(), P.h * P.h * (P.N - 1));
  std::vector<std::int32_t> class_of(space, -1);
  std::vector<Elem> g(K.size()), out(K.size());
  std::vector<std::uint64_t> queue;

  for (std::uint64_t head = 0; head < inv0.size(); ++head) {
    if (!inv0[head]) continue;
    for (std::uint64_t key = head * tail; key < (head + 1) * tail; ++key) {
      if (class_of[key] >= 0) continue;
      const auto c = static_cast<std::int32_t>(table.classes.size());
      class_of[key] = c;
      std::uint64_t size = 1;
      K.decode(key, g.data());
      if (strategy == Strategy::Full) {
        for (const auto& p : pairs) {
          actor.act(p, g.data(), out.data());
          auto& slot = class_of[K.key(out.data())];
          if (slot < 0) {
            slot = c;
            ++size;
          }
        }
      } else {
        queue.assign(1, key);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
          K.decode(queue[qi], g.data());
          for (const auto& p : pairs) {
            actor.act(p, g.data(), out.data());
            const std::uint64_t k2 = K.key(out.data());
            if (class_of[k2] < 0) {
              class_of[k2] = c;
              queue.push_back(k2);
              ++size;
            }
          }
        }
      }
      table.classes.push_back({LoopMat::from_key(P.field, P.h, P.N, key), size, std::nullopt});
    }
  }
  if (opts.keep_lookup) table.class_of = std::move(class_of);
  return table;
}

// ---------------------------------------------------------------------------
// Level-by-level lifting.

struct LiftClass {
  std::vector<Elem> rep;                   // coefficients at level n
  std::vector<std::vector<Elem>> stab;     // stabilizer in E_n, as coefficient vectors
};

// F_p-coordinates of a block X in M_h(F_Q), most significant first.
struct BlockSpace {
  std::uint32_t p, deg;
  std::size_t h2;
  std::size_t dim() const { return h2 * deg; }

  std::vector<Elem> to_vec(const Elem* X) const {
    std::vector<Elem> v(dim());
    for (std::size_t e = 0; e < h2; ++e) {
      Elem x = X[e];
      for (std::uint32_t t = 0; t < deg; ++t) {
        v[e * deg + (deg - 1 - t)] = x % p;
        x /= p;
      }
    }
    return v;
  }
  void from_vec(const std::vector<Elem>& v, Elem* X) const {
    for (std::size_t e = 0; e < h2; ++e) {
      Elem x = 0;
      for (std::uint32_t t = 0; t < deg; ++t) x = x * p + v[e * deg + t];
      X[e] = x;
    }
  }
};

// Reduced echelon basis of an F_p-subspace, used to take lexicographically
// minimal coset representatives.
struct Subspace {
  FMat basis;  // rows, reduced echelon form
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> free_cols;

  Subspace(const FpAlgebra& Fp, const FMat& gens, std::size_t dim) {
    basis = frref(Fp, gens, &pivots);
    basis.rows = pivots.size();
    basis.a.resize(basis.rows * basis.cols);
    std::vector<bool> is_piv(dim, false);
    for (auto c : pivots) is_piv[c] = true;
    for (std::size_t c = 0; c < dim; ++c)
      if (!is_piv[c]) free_cols.push_back(c);
  }

  void reduce(const FpAlgebra& Fp, std::vector<Elem>& v) const {
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      const Elem f = v[pivots[r]];
      if (!f) continue;
      for (std::size_t c = 0; c < v.size(); ++c) v[c] = Fp.sub(v[c], Fp.mul(f, basis.at(r, c)));
    }
  }

  std::uint64_t index(const std::vector<Elem>& reduced, std::uint32_t p) const {
    std::uint64_t k = 0;
    for (auto c : free_cols) k = k * p + reduced[c];
    return k;
  }
  std::vector<Elem> from_index(std::uint64_t k, std::uint32_t p, std::size_t dim) const {
    std::vector<Elem> v(dim, 0);
    for (std::size_t i = free_cols.size(); i-- > 0;) {
      v[free_cols[i]] = static_cast<Elem>(k % p);
      k /= p;
    }
    return v;
  }
};

struct UnionFind {
  std::vector<std::uint64_t> parent;
  explicit UnionFind(std::uint64_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::uint64_t find(std::uint64_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint64_t a, std::uint64_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent[a] = b;  // the root is the smallest index
  }
};

struct ChildResult {
  std::vector<LiftClass> children;
  std::vector<std::uint64_t> orbit_sizes;
};

// Classes at level n+1 lying over one class at level n.
ChildResult lift_class(const GroupParams& Pn, const LiftClass& cls, const ClassifyOptions& opts, bool want_stab) {
  const GroupParams Pu = Pn.at_level(Pn.N + 1);
  const std::size_t h = Pn.h, h2 = h * h, n = Pn.N;
  const auto& F = *Pn.field.field;
  const auto Fp = FpAlgebra::prime_field(F.p());
  const BlockSpace bs{F.p(), F.degree(), h2};
  const std::size_t d = bs.dim();
  const Kernel K(Pn.field, h, n + 1);
  Actor actor(K);

  std::vector<Elem> g(K.size(), 0), out(K.size());
  std::copy(cls.rep.begin(), cls.rep.end(), g.begin());
  auto top = [&](const std::vector<Elem>& m) { return std::vector<Elem>(m.begin() + n * h2, m.end()); };

  // Kernel of E_{n+1} -> E_n acts on lifts g + z^n X by translation X -> X + Lambda(T).
  auto kernel_elem = [&](const std::vector<Elem>& T) {
    auto c = DisplayGroupElem::identity(Pu).coeffs();
    std::copy(T.begin(), T.end(), c.begin() + n * h2);
    return DisplayGroupElem(Pu, std::move(c));
  };
  FMat lambda(d, d);  // row t = Lambda(basis vector t)
  for (std::size_t t = 0; t < d; ++t) {
    std::vector<Elem> tv(d, 0);
    tv[t] = 1;
    std::vector<Elem> T(h2);
    bs.from_vec(tv, T.data());
    actor.act(make_pair(kernel_elem(T), opts.convention), g.data(), out.data());
    const auto img = bs.to_vec(out.data() + n * h2);
    for (std::size_t c = 0; c < d; ++c) lambda.at(t, c) = img[c];
  }
  const Subspace image(*Fp, lambda, d);
  const std::uint64_t ker_size = ipow(F.p(), d - image.pivots.size());

  // Stabilizer elements s act on cosets by X -> X_s + A_s X B_s.
  struct Affine {
    std::vector<Elem> Xs;
    FMat A, B;
    DisplayGroupElem lift;
  };
  std::vector<Affine> affs;
  affs.reserve(cls.stab.size());
  for (const auto& s : cls.stab) {
    auto c = s;
    c.resize(K.size(), 0);
    DisplayGroupElem sl(Pu, std::move(c));
    const auto pr = make_pair(sl, opts.convention);
    actor.act(pr, g.data(), out.data());
    FMat A(h, h), B(h, h);
    std::copy_n(pr.tau.begin(), h2, A.a.begin());
    std::copy_n(pr.siginv.begin(), h2, B.a.begin());
    affs.push_back({top(out), std::move(A), std::move(B), std::move(sl)});
  }

  auto apply = [&](const Affine& a, const std::vector<Elem>& X) {
    FMat M(h, h);
    std::copy(X.begin(), X.end(), M.a.begin());
    const FMat Y = fmul(F, fmul(F, a.A, M), a.B);
    std::vector<Elem> r(h2);
    for (std::size_t e = 0; e < h2; ++e) r[e] = F.add(a.Xs[e], Y.a[e]);
    return r;
  };

  const std::uint64_t ncos = ipow(F.p(), image.free_cols.size());
  require(ncos <= opts.max_states, ErrorKind::BudgetExceeded, "too many cosets while lifting");
  UnionFind uf(ncos);
  std::vector<Elem> X(h2);
  for (std::uint64_t ci = 0; ci < ncos; ++ci) {
    bs.from_vec(image.from_index(ci, F.p(), d), X.data());
    for (const auto& a : affs) {
      auto v = bs.to_vec(apply(a, X).data());
      image.reduce(*Fp, v);
      uf.unite(ci, image.index(v, F.p()));
    }
  }
  std::map<std::uint64_t, std::uint64_t> comp_size;  // root -> number of cosets
  for (std::uint64_t ci = 0; ci < ncos; ++ci) ++comp_size[uf.find(ci)];

  // Reduced coset representatives are lexicographically minimal; ordering the
  // coordinates by significance makes the numeric order agree with key order,
  // so the smallest coset index in a component gives its canonical lift.
  ChildResult res;
  const std::uint64_t group_up = dg_predicted_count(Pu);
  const std::uint64_t H_size = cls.stab.size() * ipow(F.size(), h2);
  for (const auto& [root, nc] : comp_size) {
    const auto Xv = image.from_index(root, F.p(), d);
    std::vector<Elem> Xstar(h2);
    bs.from_vec(Xv, Xstar.data());
    LiftClass child;
    child.rep = g;
    std::copy(Xstar.begin(), Xstar.end(), child.rep.begin() + n * h2);
    const std::uint64_t stab_size = cls.stab.size() * ker_size / nc;
    require(stab_size * nc == cls.stab.size() * ker_size, ErrorKind::InvalidArgument, "orbit count is not integral");
    res.orbit_sizes.push_back(group_up / stab_size);
    (void)H_size;
    if (want_stab) {
      // s k_T fixes g + z^n X* iff Lambda(T) = A_s^{-1} (X* - X_s - A_s X* B_s) B_s^{-1}.
      std::vector<std::vector<Elem>> ker_basis;
      {
        // kernel of Lambda: solve via row reduction of [lambda | I]
        FMat aug(d, 2 * d);
        for (std::size_t r = 0; r < d; ++r) {
          for (std::size_t c = 0; c < d; ++c) aug.at(r, c) = lambda.at(r, c);
          aug.at(r, d + r) = 1;
        }
        std::vector<std::size_t> piv;
        aug = frref(*Fp, aug, &piv);
        for (std::size_t r = 0; r < d; ++r) {
          bool zero = true;
          for (std::size_t c = 0; c < d && zero; ++c) zero = aug.at(r, c) == 0;
          if (!zero) continue;
          std::vector<Elem> kv(d);
          for (std::size_t c = 0; c < d; ++c) kv[c] = aug.at(r, d + c);
          ker_basis.push_back(std::move(kv));
        }
      }
      require(ipow(F.p(), ker_basis.size()) == ker_size, ErrorKind::InvalidArgument, "kernel rank mismatch");
      for (const auto& a : affs) {
        const auto moved = apply(a, Xstar);
        FMat R(h, h);
        for (std::size_t e = 0; e < h2; ++e) R.a[e] = F.sub(Xstar[e], moved[e]);
        const FMat target = fmul(F, fmul(F, *finverse(F, a.A), R), *finverse(F, a.B));
        auto sol = fsolve_rows(*Fp, lambda, bs.to_vec(target.a.data()));
        if (!sol) continue;
        for (std::uint64_t combo = 0; combo < ker_size; ++combo) {
          std::vector<Elem> tv = *sol;
          std::uint64_t c = combo;
          for (const auto& kb : ker_basis) {
            const Elem f = static_cast<Elem>(c % F.p());
            c /= F.p();
            for (std::size_t i = 0; i < d; ++i) tv[i] = Fp->add(tv[i], Fp->mul(f, kb[i]));
          }
          std::vector<Elem> T(h2);
          bs.from_vec(tv, T.data());
          child.stab.push_back(dg_mul(a.lift, kernel_elem(T)).coeffs());
        }
      }
      require(child.stab.size() == stab_size, ErrorKind::InvalidArgument, "stabilizer size mismatch while lifting");
    }
    res.children.push_back(std::move(child));
  }
  return res;
}

std::vector<std::vector<Elem>> stabilizer_level1(const GroupParams& P, const LoopMat& rep,
                                                 const std::vector<DisplayGroupElem>& group, ActionConvention conv) {
  std::vector<std::vector<Elem>> stab;
  for (const auto& e : group)
    if (dg_tau(e) * rep * sigma_inverse(e, conv) == rep) stab.push_back(e.coeffs());
  (void)P;
  return stab;
}

std::vector<OrbitTable> classify_lift(const GroupParams& P, const ClassifyOptions& opts) {
  const GroupParams P1 = P.at_level(1);
  ClassifyOptions o1 = opts;
  o1.strategy = Strategy::Bfs;
  o1.keep_lookup = false;
  std::vector<OrbitTable> tables;
  tables.push_back(classify_dense(P1, o1, Strategy::Bfs));
  tables.back().strategy = Strategy::Lift;

  std::vector<DisplayGroupElem> E1;
  dg_enumerate(P1, opts.max_group, [&](const DisplayGroupElem& e) { E1.push_back(e); });
  std::vector<LiftClass> level;
  for (const auto& c : tables.back().classes)
    level.push_back({c.rep.coeffs(), stabilizer_level1(P1, c.rep, E1, opts.convention)});

  for (std::size_t n = 1; n < P.N; ++n) {
    const GroupParams Pn = P.at_level(n);
    const bool want_stab = n + 1 < P.N;
    std::vector<ChildResult> results(level.size());
    const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(level.size())));
    std::vector<std::thread> threads;
    std::exception_ptr failure;
    std::mutex fail_mu;
    for (unsigned t = 0; t < jobs; ++t)
      threads.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < level.size(); i += jobs) results[i] = lift_class(Pn, level[i], opts, want_stab);
        } catch (...) {
          std::lock_guard<std::mutex> lk(fail_mu);
          if (!failure) failure = std::current_exception();
        }
      });
    for (auto& th : threads) th.join();
    if (failure) std::rethrow_exception(failure);

    const GroupParams Pu = P.at_level(n + 1);
    OrbitTable table = base_table(Pu, Strategy::Lift, opts.convention);
    std::vector<LiftClass> next;
    for (std::size_t i = 0; i < results.size(); ++i) {
      table.generator_count = std::max(table.generator_count, level[i].stab.size());
      for (std::size_t k = 0; k < results[i].children.size(); ++k) {
        auto& ch = results[i].children[k];
        LoopMat rep(Pu.field, Pu.h, Pu.N);
        for (std::size_t j = 0; j < ch.rep.size(); ++j) rep.coeff(j % (Pu.h * Pu.h) / Pu.h, j % Pu.h, j / (Pu.h * Pu.h)) = ch.rep[j];
        table.classes.push_back({std::move(rep), results[i].orbit_sizes[k], i});
        next.push_back(std::move(ch));
      }
    }
    tables.push_back(std::move(table));
    level = std::move(next);
  }
  return tables;
}

}  // namespace

// ---------------------------------------------------------------------------

std::optional<std::size_t> OrbitTable::find(const LoopMat& rep) const {
  auto it = std::lower_bound(classes.begin(), classes.end(), rep,
                             [](const OrbitClass& c, const LoopMat& r) { return c.rep < r; });
  if (it == classes.end() || it->rep != rep) return std::nullopt;
  return static_cast<std::size_t>(it - classes.begin());
}

TruncShtuka shtuka_act(const DisplayGroupElem& e, const TruncShtuka& s, ActionConvention conv) {
  const auto& P = e.params();
  require(s.g.h() == P.h && s.g.N() == P.N && s.g.field() == P.field && s.mu == P.mu, ErrorKind::ParameterMismatch,
          "shtuka and group element have different parameters");
  return {dg_tau(e) * s.g * sigma_inverse(e, conv), s.mu};
}

OrbitTable shtuka_classify(const GroupParams& params, const ClassifyOptions& opts) {
  if (opts.strategy == Strategy::Lift) return classify_lift(params, opts).back();
  return classify_dense(params, opts, opts.strategy);
}

std::vector<OrbitTable> shtuka_classify_levels(const GroupParams& params, const ClassifyOptions& opts) {
  if (opts.strategy == Strategy::Lift) return classify_lift(params, opts);
  std::vector<OrbitTable> out;
  for (std::size_t n = 1; n <= params.N; ++n) out.push_back(classify_dense(params.at_level(n), opts, opts.strategy));
  return out;
}

LoopMat shtuka_canonicalize(const GroupParams& P, const LoopMat& g, ActionConvention conv, std::uint64_t max_states) {
  require(g.h() == P.h && g.N() == P.N && g.field() == P.field, ErrorKind::ParameterMismatch,
          "point and group have different parameters");
  require(g.is_invertible(), ErrorKind::NotInvertible, "g is not invertible");
  std::vector<ActionPair> pairs;
  for (const auto& e : dg_generators(P)) pairs.push_back(make_pair(e, conv));
  const Kernel K(P.field, P.h, P.N);
  Actor actor(K);
  std::unordered_set<std::uint64_t> seen{g.key()};
  std::deque<std::uint64_t> queue{g.key()};
  std::uint64_t best = g.key();
  std::vector<Elem> cur(K.size()), out(K.size());
  while (!queue.empty()) {
    K.decode(queue.front(), cur.data());
    queue.pop_front();
    for (const auto& p : pairs) {
      actor.act(p, cur.data(), out.data());
      const auto k = K.key(out.data());
      if (seen.insert(k).second) {
        require(seen.size() <= max_states, ErrorKind::BudgetExceeded, "orbit exceeds the state budget");
        best = std::min(best, k);
        queue.push_back(k);
      }
    }
  }
  return LoopMat::from_key(P.field, P.h, P.N, best);
}

TruncationReport truncation_report(const OrbitTable& lower, const OrbitTable& upper) {
  require(lower.params.N + 1 == upper.params.N && lower.params.field == upper.params.field &&
              lower.params.mu == upper.params.mu,
          ErrorKind::ParameterMismatch, "tables are not at consecutive levels");
  TruncationReport r{lower.params, lower.class_count(), upper.class_count(), {}, {}, false, false};
  r.fiber_sizes.assign(lower.class_count(), 0);
  for (const auto& c : upper.classes) {
    std::size_t img;
    if (c.parent) {
      img = *c.parent;
    } else {
      const LoopMat t = c.rep.truncated(lower.params.N);
      if (!lower.class_of.empty()) {
        img = static_cast<std::size_t>(lower.class_of[t.key()]);
      } else {
        auto found = lower.find(shtuka_canonicalize(lower.params, t, lower.convention));
        require(found.has_value(), ErrorKind::InvalidArgument, "truncated class missing from the lower table");
        img = *found;
      }
    }
    r.image.push_back(img);
    ++r.fiber_sizes[img];
  }
  r.surjective = std::all_of(r.fiber_sizes.begin(), r.fiber_sizes.end(), [](std::size_t f) { return f > 0; });
  r.injective = std::all_of(r.fiber_sizes.begin(), r.fiber_sizes.end(), [](std::size_t f) { return f <= 1; });
  return r;
}

TruncationReport shtuka_truncation_analysis(const GroupParams& params, const ClassifyOptions& opts) {
  if (opts.strategy == Strategy::Lift) {
    const auto levels = classify_lift(params.at_level(params.N + 1), opts);
    return truncation_report(levels[params.N - 1], levels[params.N]);
  }
  ClassifyOptions o = opts;
  o.keep_lookup = true;
  const auto lower = classify_dense(params, o, opts.strategy);
  const auto upper = classify_dense(params.at_level(params.N + 1), opts, opts.strategy);
  return truncation_report(lower, upper);
}

CutoffTable cutoff_experiment(std::uint64_t q, const TypeVector& mu, std::size_t N_max,
                              const std::vector<std::uint32_t>& tower_degrees, const ClassifyOptions& opts) {
  require(N_max >= 1, ErrorKind::InvalidArgument, "N_max must be positive");
  require(!tower_degrees.empty(), ErrorKind::InvalidArgument, "no tower degrees given");
  CutoffTable table{q, mu, N_max, {}, cutoff_bounds(mu.size(), {mu.values()})};
  for (auto m : tower_degrees) {
    const CoeffField F = CoeffField::make(q, m);
    const GroupParams P(F, mu, N_max + 1);
    const auto levels = shtuka_classify_levels(P, [&] {
      ClassifyOptions o = opts;
      if (o.strategy != Strategy::Lift) o.keep_lookup = true;
      return o;
    }());
    CutoffRow row;
    row.tower_degree = m;
    row.field_size = F.field->size();
    for (const auto& t : levels) row.class_counts.push_back(t.class_count());
    for (std::size_t n = 1; n <= N_max; ++n) {
      row.truncations.push_back(truncation_report(levels[n - 1], levels[n]));
      const auto& tr = row.truncations.back();
      if (tr.surjective && tr.injective && !row.cutoff) row.cutoff = n;
    }
    for (std::size_t n = N_max; n >= 1; --n) {
      const auto& tr = row.truncations[n - 1];
      if (!(tr.surjective && tr.injective)) break;
      row.stable_from = n;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace shtuka
