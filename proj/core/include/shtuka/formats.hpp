#pragma once

// Line-oriented text encodings for bundle data. Blank lines and lines starting
// with '#' are ignored. Matrix rows are one line each with entries separated by
// ';' (series entries may contain spaces).
//
//   filtered-chain                  rees-module
//   ring witt 2 2                   ring power-series 2 4
//   window 0 1                      v z
//   flags 1 1                       window -1 0
//   degree 0                        flags 1 1
//   rank 1                          degree -1
//   t 1 1                           rank 1
//   (0,1)                           t 1 1
//   degree 1                        1
//   rank 1                          u 1 1
//                                   z
//                                   degree 0
//                                   rank 1
//
// The t-matrix of degree j is t: M_{j+1} -> M_j (and u: M_j -> M_{j+1}); the
// last degree of the window carries none. Flags are (t_iso_below, zero_above)
// for chains and (t_iso_below, u_iso_above) for Rees modules.
//
//   hecke-pair
//   field 2
//   precision 10
//   h 2
//   z^-1 + 1 ; 0
//   0 ; z^2
//
// Hecke entries are Laurent series; the common denominator is extracted.

#include <string>
#include <variant>

#include "shtuka/chain_ring.hpp"
#include "shtuka/graded_rees.hpp"

namespace shtuka {

/// "field Q", "series Q K", "power-series Q K" or "witt Q N".
std::string ring_spec(const ChainRing& r);
ChainRing parse_ring_spec(const std::string& spec);

std::string filtered_chain_format(const FilteredChain& c);
FilteredChain filtered_chain_parse(const std::string& text);

std::string rees_module_format(const GradedReesModule& m);
GradedReesModule rees_module_parse(const std::string& text);

std::string hecke_pair_format(const HeckePair& p);
HeckePair hecke_pair_parse(const std::string& text);

using BundleData = std::variant<FilteredChain, GradedReesModule, HeckePair>;
/// Dispatches on the first meaningful line.
BundleData bundle_parse(const std::string& text);

}  // namespace shtuka
