#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "shtuka/type_vector.hpp"

namespace shtuka {

/// Root datum of GL_h: roots e_i - e_j (i != j) in Z^h with the dot-product pairing.
class RootDatumGL {
 public:
  explicit RootDatumGL(std::size_t h);

  std::size_t rank() const noexcept { return h_; }
  const std::vector<std::vector<int>>& roots() const noexcept { return roots_; }
  /// |W| = h!
  unsigned long long weyl_order() const;
  int pairing(const std::vector<int>& alpha, const std::vector<int>& xi) const;

 private:
  std::size_t h_;
  std::vector<std::vector<int>> roots_;
};

/// Explicit cutoff bounds relative to a user-supplied set S of dominant cocharacters.
struct CutoffReport {
  std::size_t h = 0;
  std::vector<TypeVector> S;
  int C = 0;                 // max over roots alpha and xi in S of <alpha, xi>
  int isogeny_bound = 0;     // C + 1
  int isomorphism_bound = 0; // 2C + 1
};

/// NotDominant if an entry of S is not weakly decreasing; InvalidArgument if S is
/// empty or an entry has the wrong length.
CutoffReport cutoff_bounds(std::size_t h, const std::vector<std::vector<int>>& S);
bool dominance_check(const std::vector<int>& xi);

/// "(1,0);(2,0)" -> {{1,0},{2,0}}
std::vector<std::vector<int>> parse_cocharacter_set(const std::string& text);

}  // namespace shtuka
