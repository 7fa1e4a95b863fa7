#include "shtuka/root_data.hpp"

#include <algorithm>
#include <limits>

#include "shtuka/error.hpp"

namespace shtuka {

RootDatumGL::RootDatumGL(std::size_t h) : h_(h) {
  require(h >= 1, ErrorKind::InvalidArgument, "rank must be positive");
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      if (i == j) continue;
      std::vector<int> a(h, 0);
      a[i] = 1;
      a[j] = -1;
      roots_.push_back(std::move(a));
    }
}

unsigned long long RootDatumGL::weyl_order() const {
  unsigned long long r = 1;
  for (std::size_t i = 2; i <= h_; ++i) r *= i;
  return r;
}

int RootDatumGL::pairing(const std::vector<int>& alpha, const std::vector<int>& xi) const {
  require(alpha.size() == h_ && xi.size() == h_, ErrorKind::InvalidArgument, "vector of the wrong length");
  int s = 0;
  for (std::size_t i = 0; i < h_; ++i) s += alpha[i] * xi[i];
  return s;
}

bool dominance_check(const std::vector<int>& xi) { return is_dominant(xi); }

CutoffReport cutoff_bounds(std::size_t h, const std::vector<std::vector<int>>& S) {
  require(!S.empty(), ErrorKind::InvalidArgument, "S must be nonempty");
  RootDatumGL rd(h);
  CutoffReport rep;
  rep.h = h;
  int C = std::numeric_limits<int>::min();
  for (const auto& xi : S) {
    require(xi.size() == h, ErrorKind::InvalidArgument, "cocharacter of the wrong length");
    rep.S.emplace_back(xi);  // throws NotDominant
    for (const auto& a : rd.roots()) C = std::max(C, rd.pairing(a, xi));
  }
  if (rd.roots().empty()) C = 0;
  rep.C = C;
  rep.isogeny_bound = C + 1;
  rep.isomorphism_bound = 2 * C + 1;
  return rep;
}

std::vector<std::vector<int>> parse_cocharacter_set(const std::string& text) {
  std::vector<std::vector<int>> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string::npos) end = text.size();
    std::string part = text.substr(start, end - start);
    if (part.find_first_not_of(" \t") != std::string::npos) out.push_back(TypeVector::parse(part).values());
    start = end + 1;
  }
  require(!out.empty(), ErrorKind::Parse, "empty cocharacter set");
  return out;
}

}  // namespace shtuka
