#include "shtuka/fp_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

#include "shtuka/error.hpp"

namespace shtuka {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonUnit: return "NonUnit";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::MixedRings: return "MixedRings";
    case ErrorKind::LengthUnderflow: return "LengthUnderflow";
    case ErrorKind::NotInIdeal: return "NotInIdeal";
    case ErrorKind::UnsupportedBase: return "UnsupportedBase";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ParameterMismatch: return "ParameterMismatch";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::NotABundle: return "NotABundle";
    case ErrorKind::NotDominant: return "NotDominant";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q) {
  require(q >= 2, ErrorKind::InvalidArgument, "q must be a prime power, got " + std::to_string(q));
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t k = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  require(r == 1, ErrorKind::InvalidArgument, "q must be a prime power, got " + std::to_string(q));
  return {static_cast<std::uint32_t>(p), k};
}

namespace {

using Poly = std::vector<std::int64_t>;  // low-to-high over F_p

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// remainder of f modulo monic g over F_p
Poly poly_rem(Poly f, const Poly& g, std::int64_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg && !f.empty()) {
    const std::int64_t lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) f[shift + i] = ((f[shift + i] - lead * g[i]) % p + p) % p;
    trim(f);
  }
  return f;
}

bool irreducible(const std::vector<std::uint32_t>& modulus, std::uint32_t p) {
  const std::size_t d = modulus.size() - 1;
  if (d == 1) return true;
  Poly f(modulus.begin(), modulus.end());
  // try every monic divisor of degree 1..d/2
  for (std::size_t k = 1; k <= d / 2; ++k) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly g(k + 1, 0);
      std::uint64_t r = idx;
      for (std::size_t i = 0; i < k; ++i) {
        g[i] = static_cast<std::int64_t>(r % p);
        r /= p;
      }
      g[k] = 1;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::pair<std::uint32_t, std::uint32_t>, AlgebraPtr>& field_cache() {
  static std::map<std::pair<std::uint32_t, std::uint32_t>, AlgebraPtr> c;
  return c;
}

constexpr std::uint32_t kTableLimit = 1024;

}  // namespace

FpAlgebra::FpAlgebra(std::uint32_t p, std::vector<std::uint32_t> modulus, Kind kind)
    : p_(p), deg_(static_cast<std::uint32_t>(modulus.size() - 1)), size_(1), kind_(kind),
      modulus_(std::move(modulus)) {
  require(is_prime(p), ErrorKind::InvalidArgument, "characteristic must be prime");
  require(deg_ >= 1 && modulus_.back() == 1, ErrorKind::InvalidArgument, "modulus must be monic of degree >= 1");
  std::uint64_t s = 1;
  for (std::uint32_t i = 0; i < deg_; ++i) {
    pow_p_.push_back(static_cast<std::uint32_t>(s));
    s *= p;
    require(s < (1ULL << 31), ErrorKind::Overflow, "algebra too large");
  }
  size_ = static_cast<std::uint32_t>(s);
  if (size_ <= kTableLimit) {
    add_table_.resize(static_cast<std::size_t>(size_) * size_);
    mul_table_.resize(static_cast<std::size_t>(size_) * size_);
    for (Elem a = 0; a < size_; ++a) {
      auto da = digits(a);
      for (Elem b = 0; b < size_; ++b) {
        auto db = digits(b);
        std::vector<std::uint32_t> dc(deg_);
        for (std::uint32_t i = 0; i < deg_; ++i) dc[i] = (da[i] + db[i]) % p_;
        add_table_[a * size_ + b] = from_digits(dc);
        mul_table_[a * size_ + b] = mul_slow(a, b);
      }
    }
    inv_table_.assign(size_, 0);
    for (Elem a = 0; a < size_; ++a)
      for (Elem b = 0; b < size_; ++b)
        if (mul_table_[a * size_ + b] == one()) inv_table_[a] = b;
    if (is_perfect()) {
      frob_inv_table_.assign(size_, 0);
      for (Elem a = 0; a < size_; ++a) frob_inv_table_[pow(a, p_)] = a;
    }
  }
}

AlgebraPtr FpAlgebra::prime_field(std::uint32_t p) { return field(p, 1); }

AlgebraPtr FpAlgebra::field(std::uint32_t p, std::uint32_t deg) {
  require(is_prime(p), ErrorKind::InvalidArgument, "p must be prime, got " + std::to_string(p));
  require(deg >= 1, ErrorKind::InvalidArgument, "field degree must be positive");
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto it = field_cache().find({p, deg});
    if (it != field_cache().end()) return it->second;
  }
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < deg; ++i) count *= p;
  AlgebraPtr result;
  for (std::uint64_t idx = 0; idx < count && !result; ++idx) {
    std::vector<std::uint32_t> m(deg + 1, 0);
    std::uint64_t r = idx;
    for (std::uint32_t i = 0; i < deg; ++i) {
      m[i] = static_cast<std::uint32_t>(r % p);
      r /= p;
    }
    m[deg] = 1;
    if (deg > 1 && m[0] == 0) continue;
    if (irreducible(m, p)) result = std::make_shared<const FpAlgebra>(p, m, Kind::Field);
  }
  std::lock_guard<std::mutex> lock(cache_mutex());
  field_cache()[{p, deg}] = result;
  return result;
}

AlgebraPtr FpAlgebra::field_with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  require(is_prime(p), ErrorKind::InvalidArgument, "p must be prime");
  require(!modulus.empty() && modulus.back() == 1, ErrorKind::InvalidArgument, "modulus must be monic");
  for (auto c : modulus) require(c < p, ErrorKind::InvalidArgument, "modulus coefficient out of range");
  require(irreducible(modulus, p), ErrorKind::InvalidArgument, "modulus is reducible over F_p");
  return std::make_shared<const FpAlgebra>(p, std::move(modulus), Kind::Field);
}

AlgebraPtr FpAlgebra::field_of_order(std::uint64_t q) {
  auto [p, k] = prime_power(q);
  return field(p, k);
}

AlgebraPtr FpAlgebra::truncated(std::uint32_t p, std::uint32_t k) {
  require(k >= 1, ErrorKind::InvalidArgument, "truncation length must be positive");
  std::vector<std::uint32_t> m(k + 1, 0);
  m[k] = 1;
  return std::make_shared<const FpAlgebra>(p, m, k == 1 ? Kind::Field : Kind::Truncated);
}

std::vector<std::uint32_t> FpAlgebra::digits(Elem a) const {
  std::vector<std::uint32_t> d(deg_);
  for (std::uint32_t i = 0; i < deg_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

Elem FpAlgebra::from_digits(const std::vector<std::uint32_t>& d) const {
  Elem a = 0;
  for (std::uint32_t i = 0; i < deg_ && i < d.size(); ++i) a += (d[i] % p_) * pow_p_[i];
  return a;
}

Elem FpAlgebra::from_int(std::int64_t v) const {
  const std::int64_t r = ((v % static_cast<std::int64_t>(p_)) + p_) % p_;
  return static_cast<Elem>(r);
}

Elem FpAlgebra::add(Elem a, Elem b) const {
  if (!add_table_.empty()) return add_table_[a * size_ + b];
  Elem r = 0;
  for (std::uint32_t i = 0; i < deg_; ++i) {
    r += ((a % p_ + b % p_) % p_) * pow_p_[i];
    a /= p_;
    b /= p_;
  }
  return r;
}

Elem FpAlgebra::neg(Elem a) const {
  Elem r = 0;
  for (std::uint32_t i = 0; i < deg_; ++i) {
    r += ((p_ - a % p_) % p_) * pow_p_[i];
    a /= p_;
  }
  return r;
}

Elem FpAlgebra::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem FpAlgebra::mul_slow(Elem a, Elem b) const {
  auto da = digits(a);
  auto db = digits(b);
  Poly prod(2 * deg_, 0);
  for (std::uint32_t i = 0; i < deg_; ++i)
    for (std::uint32_t j = 0; j < deg_; ++j)
      prod[i + j] = (prod[i + j] + static_cast<std::int64_t>(da[i]) * db[j]) % p_;
  Poly m(modulus_.begin(), modulus_.end());
  Poly r = poly_rem(prod, m, p_);
  std::vector<std::uint32_t> dr(deg_, 0);
  for (std::size_t i = 0; i < r.size(); ++i) dr[i] = static_cast<std::uint32_t>(r[i]);
  return from_digits(dr);
}

Elem FpAlgebra::mul(Elem a, Elem b) const {
  if (!mul_table_.empty()) return mul_table_[a * size_ + b];
  return mul_slow(a, b);
}

Elem FpAlgebra::pow(Elem a, std::uint64_t e) const {
  Elem result = one();
  Elem base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

bool FpAlgebra::is_unit(Elem a) const {
  if (kind_ == Kind::Field) return a != 0;
  return a % p_ != 0;
}

Elem FpAlgebra::inv(Elem a) const {
  require(is_unit(a), ErrorKind::NonUnit, format(a) + " is not a unit in " + name());
  if (!inv_table_.empty()) return inv_table_[a];
  if (kind_ == Kind::Field) return pow(a, static_cast<std::uint64_t>(size_) - 2);
  // unit group of F_p[x]/(x^k) has order (p-1) p^(k-1)
  std::uint64_t order = p_ - 1;
  for (std::uint32_t i = 1; i < deg_; ++i) order *= p_;
  return pow(a, order - 1);
}

Elem FpAlgebra::frobenius_inverse(Elem a) const {
  require(is_perfect(), ErrorKind::UnsupportedBase, "Frobenius is not invertible on " + name());
  if (!frob_inv_table_.empty()) return frob_inv_table_[a];
  return pow(a, size_ / p_);
}

std::string FpAlgebra::format(Elem a) const {
  if (deg_ == 1) return std::to_string(a);
  auto d = digits(a);
  std::ostringstream os;
  bool first = true;
  for (std::int64_t i = deg_ - 1; i >= 0; --i) {
    if (d[i] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << d[i];
    } else {
      if (d[i] != 1) os << d[i] << '*';
      os << 'x';
      if (i > 1) os << '^' << i;
    }
  }
  if (first) os << '0';
  return os.str();
}

Elem FpAlgebra::parse(std::string_view text) const {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  require(!s.empty(), ErrorKind::Parse, "empty field element");
  const bool plain_int =
      std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  if (plain_int) {
    const unsigned long long v = std::stoull(s);
    require(v < size_, ErrorKind::Parse, "element index " + s + " out of range for " + name());
    return static_cast<Elem>(v);
  }
  std::vector<std::int64_t> coeff(deg_ + 64, 0);
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::int64_t sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = -1;
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string term = s.substr(pos, end - pos);
    require(!term.empty(), ErrorKind::Parse, "malformed element '" + std::string(text) + "'");
    std::int64_t c = 1;
    std::size_t e = 0;
    auto xpos = term.find('x');
    if (xpos == std::string::npos) {
      require(std::all_of(term.begin(), term.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }),
              ErrorKind::Parse, "malformed term '" + term + "'");
      c = std::stoll(term);
    } else {
      std::string head = term.substr(0, xpos);
      if (!head.empty()) {
        require(head.back() == '*', ErrorKind::Parse, "malformed term '" + term + "'");
        head.pop_back();
        c = std::stoll(head);
      }
      std::string tail = term.substr(xpos + 1);
      e = 1;
      if (!tail.empty()) {
        require(tail[0] == '^' && tail.size() > 1, ErrorKind::Parse, "malformed exponent in '" + term + "'");
        e = std::stoul(tail.substr(1));
      }
    }
    require(e < coeff.size(), ErrorKind::Parse, "exponent too large in '" + term + "'");
    coeff[e] += sign * c;
    pos = end;
  }
  // reduce x^e for e >= deg using the modulus
  Poly f(coeff.size());
  for (std::size_t i = 0; i < coeff.size(); ++i)
    f[i] = ((coeff[i] % static_cast<std::int64_t>(p_)) + p_) % p_;
  Poly m(modulus_.begin(), modulus_.end());
  Poly r = poly_rem(f, m, p_);
  std::vector<std::uint32_t> d(deg_, 0);
  for (std::size_t i = 0; i < r.size(); ++i) d[i] = static_cast<std::uint32_t>(r[i]);
  return from_digits(d);
}

std::string FpAlgebra::name() const {
  if (kind_ == Kind::Field) return "F_" + std::to_string(size_);
  return "F_" + std::to_string(p_) + "[x]/(x^" + std::to_string(deg_) + ")";
}

CoeffField CoeffField::make(std::uint64_t q, std::uint32_t tower_degree) {
  auto [p, k] = prime_power(q);
  require(tower_degree >= 1, ErrorKind::InvalidArgument, "tower degree must be positive");
  return CoeffField{FpAlgebra::field(p, k * tower_degree), q};
}

Elem CoeffField::frob_inverse(Elem a) const {
  return field->pow(a, field->size() / q);
}

}  // namespace shtuka
