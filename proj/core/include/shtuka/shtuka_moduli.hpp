#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shtuka/loop_group.hpp"
#include "shtuka/root_data.hpp"

namespace shtuka {

inline constexpr std::uint64_t kDefaultStateBudget = 10'000'000;

/// A point g of GL_h(R_N) of type mu.
struct TruncShtuka {
  LoopMat g;
  TypeVector mu;
};

/// Which formula computes the right factor of the twisted action; both give the
/// left action e.g = tau(e) g sigma(e)^{-1} because sigma is a homomorphism.
enum class ActionConvention {
  InverseOfSigma,  // tau(e) g sigma(e)^{-1}
  SigmaOfInverse,  // tau(e) g sigma(e^{-1})
};
std::string to_string(ActionConvention c);
ActionConvention parse_convention(const std::string& s);

enum class Strategy { Full, Bfs, Lift };
std::string to_string(Strategy s);
Strategy parse_strategy(const std::string& s);

/// ParameterMismatch unless e and s share (F, h, mu, N).
TruncShtuka shtuka_act(const DisplayGroupElem& e, const TruncShtuka& s,
                       ActionConvention conv = ActionConvention::InverseOfSigma);

struct OrbitClass {
  LoopMat rep;                 // lexicographically minimal point of the orbit
  std::uint64_t orbit_size = 0;
  std::optional<std::size_t> parent;  // class of the truncation (lift strategy)
};

struct OrbitTable {
  GroupParams params;
  Strategy strategy = Strategy::Full;
  ActionConvention convention = ActionConvention::InverseOfSigma;
  std::vector<OrbitClass> classes;    // sorted by representative
  std::size_t generator_count = 0;    // group elements or generators applied per point
  std::uint64_t group_order = 0;      // |E_N(F_Q)|
  std::uint64_t space_order = 0;      // |GL_h(R_N)(F_Q)|

  std::size_t class_count() const { return classes.size(); }
  /// Class index of each point key for full/bfs tables (empty for lift).
  std::vector<std::int32_t> class_of;
  /// Index of the class with the given representative key, if present.
  std::optional<std::size_t> find(const LoopMat& rep) const;
};

struct ClassifyOptions {
  Strategy strategy = Strategy::Bfs;
  ActionConvention convention = ActionConvention::InverseOfSigma;
  std::uint64_t max_states = kDefaultStateBudget;  // points of GL_h(R_N) held in memory
  std::uint64_t max_group = kDefaultStateBudget;   // group elements enumerated
  unsigned jobs = 1;
  bool keep_lookup = false;  // retain OrbitTable::class_of
};

OrbitTable shtuka_classify(const GroupParams& params, const ClassifyOptions& opts = {});

/// Tables for every level 1..N; the lift strategy produces them in one pass.
std::vector<OrbitTable> shtuka_classify_levels(const GroupParams& params, const ClassifyOptions& opts = {});

/// Lexicographically minimal point in the orbit of g (orbit expansion by generators).
LoopMat shtuka_canonicalize(const GroupParams& params, const LoopMat& g,
                            ActionConvention conv = ActionConvention::InverseOfSigma,
                            std::uint64_t max_states = kDefaultStateBudget);

struct TruncationReport {
  GroupParams params;                     // level N
  std::size_t classes_lower = 0;          // at level N
  std::size_t classes_upper = 0;          // at level N + 1
  std::vector<std::size_t> image;         // level-N class of each level-(N+1) class
  std::vector<std::size_t> fiber_sizes;   // per level-N class
  bool surjective = false;
  bool injective = false;
};

TruncationReport truncation_report(const OrbitTable& lower, const OrbitTable& upper);
TruncationReport shtuka_truncation_analysis(const GroupParams& params, const ClassifyOptions& opts = {});

struct CutoffRow {
  std::uint32_t tower_degree = 1;
  std::uint64_t field_size = 0;
  std::vector<std::size_t> class_counts;          // levels 1 .. N_max + 1
  std::vector<TruncationReport> truncations;      // N = 1 .. N_max
  std::optional<std::size_t> cutoff;              // least N with bijective truncation
  std::optional<std::size_t> stable_from;         // least N bijective at every level up to N_max
};

struct CutoffTable {
  std::uint64_t q = 0;
  TypeVector mu;
  std::size_t N_max = 0;
  std::vector<CutoffRow> rows;
  CutoffReport bounds;
};

CutoffTable cutoff_experiment(std::uint64_t q, const TypeVector& mu, std::size_t N_max,
                              const std::vector<std::uint32_t>& tower_degrees, const ClassifyOptions& opts = {});

}  // namespace shtuka
