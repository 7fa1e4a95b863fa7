#pragma once

// Brute-force reference computations. Nothing here depends on the core
// library; the code is deliberately plain (integer vectors, exhaustive loops).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace oracle {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

/// GF(p^k) with elements encoded as sum c_i p^i; modulus = smallest monic
/// irreducible by that encoding.
struct GF {
  u32 p = 0, k = 1, q = 0;
  std::vector<u32> addt, mult;
  static GF make(u32 p, u32 k);
  u32 add(u32 a, u32 b) const { return addt[a * q + b]; }
  u32 mul(u32 a, u32 b) const { return mult[a * q + b]; }
  u32 neg(u32 a) const;
  u32 sub(u32 a, u32 b) const { return add(a, neg(b)); }
  u32 inv(u32 a) const;
  u32 pow(u32 a, u64 e) const;
};

// --- Witt vectors via ghost components over Z/p^n[x]/(x^k) -------------------

/// Witt vectors over F_p[x]/(x^k) (k = 1 is F_p). Coordinates encoded as
/// sum c_i p^i of their coefficient digits.
struct GhostWitt {
  u32 p, k;
  std::vector<u32> add(const std::vector<u32>& a, const std::vector<u32>& b) const;
  std::vector<u32> mul(const std::vector<u32>& a, const std::vector<u32>& b) const;
  /// Length N -> N-1.
  std::vector<u32> frob(const std::vector<u32>& a) const;
  /// Length N -> N+1.
  std::vector<u32> ver(const std::vector<u32>& a) const;
};

/// Value of a Witt vector over F_p in Z/p^N under W_N(F_p) = Z/p^N.
u64 witt_to_int(u32 p, const std::vector<u32>& a);

// --- display groups -----------------------------------------------------------

/// Exhaustive count of E_N(GL_h, mu)(F_Q): coefficient tuples s_ij mod z^N with
/// g = (z^{m_ij} s_ij) satisfying det(g mod z) != 0 and det(mu g mu^{-1} mod z) != 0.
u64 e_count(const GF& F, const std::vector<int>& mu, std::size_t N);
/// Exhaustive count of the kernel of E_{N+1} -> E_N.
u64 e_kernel_count(const GF& F, const std::vector<int>& mu, std::size_t N);

// --- shtukas --------------------------------------------------------------------

struct OrbitData {
  std::vector<u64> reps;         // keys of minimal points, increasing
  std::vector<u64> orbit_sizes;  // aligned with reps
  std::vector<std::int32_t> class_of;
};

/// Orbits of E_N on GL_h(F_Q[z]/z^N) under g -> tau(e) g sigma(e)^{-1}, sigma
/// using the a -> a^qfrob Frobenius. Points are keyed like the core library:
/// coefficient (k, i, j) is digit ((k h + i) h + j), most significant first.
OrbitData shtuka_orbits(const GF& F, u64 qfrob, const std::vector<int>& mu, std::size_t N);

struct LevelData {
  std::vector<std::size_t> class_counts;
  std::vector<std::vector<std::size_t>> images;  // level n+1 class -> level n class
};

/// Class counts at levels 1..levels and truncation images between them.
LevelData shtuka_levels(const GF& F, u64 qfrob, const std::vector<int>& mu, std::size_t levels);

// --- zips and displays ------------------------------------------------------------

/// Number of GL_h(F_p)-orbits of zip data (C^1, D_0, alpha0, alpha1) over F_p.
struct CountData {
  std::size_t classes = 0;
  std::vector<u64> orbit_sizes;  // sorted
};
CountData zip_orbits(u32 p, std::size_t h, std::size_t d);

/// Displays over Z/p^N of type (h, d): Psi in GL_h(Z/p^N) modulo
/// Psi -> f Psi tilde(f)^{-1}, f = [a b; p y e], tilde(f) = [a, p b; y, e].
CountData display_orbits(u32 p, std::size_t h, std::size_t d, std::size_t N);
/// Whether some pair automorphism f has f Psi1 tilde(f)^{-1} = Psi2 (entries in Z/p^N).
bool display_isomorphic(u32 p, std::size_t h, std::size_t d, std::size_t N,
                        const std::vector<std::vector<std::int64_t>>& psi1,
                        const std::vector<std::vector<std::int64_t>>& psi2);

// --- Hecke types --------------------------------------------------------------------

/// Invariant factors of a matrix over F_p[[z]] known mod z^K, from the
/// determinantal divisors; entries are coefficient lists (low degree first).
/// Returns the sorted type (decreasing) minus `denominator`, or an empty
/// vector if some divisor is not determined at precision K.
std::vector<int> hecke_type(u32 p, const std::vector<std::vector<std::vector<u32>>>& m, std::size_t K,
                            int denominator);

}  // namespace oracle
