#include "shtuka/trunc_series.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "shtuka/error.hpp"

namespace shtuka {

TruncSeries::TruncSeries(CoeffField field, std::size_t length)
    : field_(std::move(field)), coeffs_(length, 0) {
  require(length >= 1 && length <= kMaxSeriesLength, ErrorKind::InvalidArgument,
          "truncation level must lie in [1, 64]");
}

TruncSeries::TruncSeries(CoeffField field, std::vector<Elem> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  require(!coeffs_.empty() && coeffs_.size() <= kMaxSeriesLength, ErrorKind::InvalidArgument,
          "truncation level must lie in [1, 64]");
  for (Elem c : coeffs_)
    require(c < field_.field->size(), ErrorKind::InvalidArgument, "coefficient out of range");
}

TruncSeries TruncSeries::one(const CoeffField& f, std::size_t length) { return constant(f, length, 1); }

TruncSeries TruncSeries::constant(const CoeffField& f, std::size_t length, Elem c) {
  TruncSeries s(f, length);
  s.coeffs_[0] = c;
  return s;
}

TruncSeries TruncSeries::monomial(const CoeffField& f, std::size_t length, Elem c, std::size_t k) {
  TruncSeries s(f, length);
  if (k < length) s.coeffs_[k] = c;
  return s;
}

void TruncSeries::check_compatible(const TruncSeries& o) const {
  require(field_ == o.field_ && length() == o.length(), ErrorKind::MixedRings,
          "series over different rings or truncation levels");
}

bool TruncSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Elem c) { return c == 0; });
}

std::size_t TruncSeries::valuation() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return i;
  return coeffs_.size();
}

TruncSeries TruncSeries::operator+(const TruncSeries& o) const {
  check_compatible(o);
  TruncSeries r(field_, length());
  for (std::size_t i = 0; i < length(); ++i) r.coeffs_[i] = field_.field->add(coeffs_[i], o.coeffs_[i]);
  return r;
}

TruncSeries TruncSeries::operator-(const TruncSeries& o) const {
  check_compatible(o);
  TruncSeries r(field_, length());
  for (std::size_t i = 0; i < length(); ++i) r.coeffs_[i] = field_.field->sub(coeffs_[i], o.coeffs_[i]);
  return r;
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries r(field_, length());
  for (std::size_t i = 0; i < length(); ++i) r.coeffs_[i] = field_.field->neg(coeffs_[i]);
  return r;
}

TruncSeries TruncSeries::operator*(const TruncSeries& o) const {
  check_compatible(o);
  const auto& F = *field_.field;
  TruncSeries r(field_, length());
  for (std::size_t i = 0; i < length(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; i + j < length(); ++j)
      r.coeffs_[i + j] = F.add(r.coeffs_[i + j], F.mul(coeffs_[i], o.coeffs_[j]));
  }
  return r;
}

bool TruncSeries::operator==(const TruncSeries& o) const {
  return field_ == o.field_ && coeffs_ == o.coeffs_;
}

TruncSeries TruncSeries::truncated(std::size_t length) const {
  std::vector<Elem> c(length, 0);
  std::copy_n(coeffs_.begin(), std::min(length, coeffs_.size()), c.begin());
  return TruncSeries(field_, std::move(c));
}

TruncSeries TruncSeries::shifted_up(std::size_t k) const {
  TruncSeries r(field_, length());
  for (std::size_t i = 0; i + k < length(); ++i) r.coeffs_[i + k] = coeffs_[i];
  return r;
}

std::string TruncSeries::format() const {
  const auto& F = *field_.field;
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    std::string c = F.format(coeffs_[i]);
    if (c.find('+') != std::string::npos) c = "(" + c + ")";
    if (i == 0) {
      os << c;
    } else {
      if (c != "1") os << c << '*';
      os << 'z';
      if (i > 1) os << '^' << i;
    }
  }
  if (first) os << '0';
  return os.str();
}

TruncSeries TruncSeries::parse(const CoeffField& f, std::size_t length, std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  require(!s.empty(), ErrorKind::Parse, "empty series");
  TruncSeries out(f, length);
  const auto& F = *f.field;
  // split on '+' at parenthesis depth 0
  std::vector<std::string> terms;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '+' && depth == 0) {
      terms.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  terms.push_back(cur);
  for (std::string term : terms) {
    require(!term.empty(), ErrorKind::Parse, "malformed series '" + std::string(text) + "'");
    bool negate = false;
    if (term[0] == '-') {
      negate = true;
      term.erase(0, 1);
    }
    Elem c = 1;
    std::size_t e = 0;
    auto zpos = term.rfind('z');
    std::string coeff_part = term;
    if (zpos != std::string::npos) {
      coeff_part = term.substr(0, zpos);
      std::string tail = term.substr(zpos + 1);
      e = 1;
      if (!tail.empty()) {
        require(tail[0] == '^' && tail.size() > 1, ErrorKind::Parse, "malformed exponent in '" + term + "'");
        e = std::stoul(tail.substr(1));
      }
      if (!coeff_part.empty()) {
        require(coeff_part.back() == '*', ErrorKind::Parse, "malformed term '" + term + "'");
        coeff_part.pop_back();
      }
    }
    if (!coeff_part.empty()) {
      if (coeff_part.front() == '(' && coeff_part.back() == ')')
        coeff_part = coeff_part.substr(1, coeff_part.size() - 2);
      c = F.parse(coeff_part);
    }
    if (negate) c = F.neg(c);
    if (e < length) out.coeffs_[e] = F.add(out.coeffs_[e], c);
  }
  return out;
}

TruncSeries ts_frobenius(const TruncSeries& f) {
  std::vector<Elem> c(f.coeffs());
  for (auto& x : c) x = f.field().frob(x);
  return TruncSeries(f.field(), std::move(c));
}

TruncSeries ts_inv(const TruncSeries& f) {
  const auto& F = *f.field().field;
  require(f.is_unit(), ErrorKind::NonUnit, "series " + f.format() + " has zero constant term");
  const std::size_t n = f.length();
  std::vector<Elem> g(n, 0);
  const Elem inv0 = F.inv(f[0]);
  g[0] = inv0;
  // back-substitution: sum_{i<=k} f_i g_{k-i} = 0 for k >= 1
  for (std::size_t k = 1; k < n; ++k) {
    Elem acc = 0;
    for (std::size_t i = 1; i <= k; ++i) acc = F.add(acc, F.mul(f[i], g[k - i]));
    g[k] = F.neg(F.mul(acc, inv0));
  }
  return TruncSeries(f.field(), std::move(g));
}

}  // namespace shtuka
