#pragma once

#include <optional>
#include <vector>

#include "forestbd/acyclic.hpp"
#include "forestbd/backdoor.hpp"
#include "forestbd/formula.hpp"

namespace forestbd::oracle {

// Brute-force ground truth. Everything here follows the textbook definitions
// directly (explicit restriction, explicit incidence graph, exhaustive
// satisfiability) and shares no search code with the detectors.

inline constexpr std::size_t kMaxCountVars = 24;
inline constexpr std::size_t kMaxBackdoorVars = 16;
inline constexpr int kMaxBackdoorSize = 6;

enum class Kind { Weak, Strong, Deletion, Count };

struct Report {
  Kind kind = Kind::Count;
  std::optional<int> optimum;       // smallest backdoor size <= k_max, if any
  std::vector<VarSet> witness_sets;  // every backdoor of optimal size
  std::optional<BigInt> count;
};

/// Exhaustive model count over `universe` (at most 24 variables).
BigInt brute_count(const Formula& f, const VarSet& universe);
inline BigInt brute_count(const Formula& f) { return brute_count(f, f.universe()); }

bool brute_satisfiable(const Formula& f);

/// Incidence-graph acyclicity via |E| = |V| - #components.
bool forest_by_counting(const Formula& f);

/// Definitional backdoor test by explicit enumeration of 2^B.
bool is_backdoor(const Formula& f, BackdoorKind kind, const VarSet& b);

/// Smallest backdoor of `kind` with size <= k_max drawn from `pool`
/// (default: the universe), with all optimal witnesses. Subsets are scanned by
/// size, then lexicographically. Each witness is re-checked with the
/// backdoor-core predicate; a disagreement throws std::logic_error.
Report brute_min_backdoor(const Formula& f, BackdoorKind kind, int k_max,
                          const std::optional<VarSet>& pool = std::nullopt);

/// Smallest hitting set size of a set family by subset enumeration.
int min_hitting_set(const std::vector<std::vector<int>>& family);

}  // namespace forestbd::oracle
