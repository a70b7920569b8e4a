#pragma once

#include <string>
#include <vector>

#include "forestbd/backdoor.hpp"
#include "forestbd/graph.hpp"

namespace forestbd {

/// Budget-dependent thresholds of the weak candidate rules.
struct WeakParams {
  int k = 0;
  int r = 0;
  long long cycles = 0;      // 2k + 1
  long long ext_cycles = 0;  // cycles - k
  long long multi = 0;       // 4k
  long long supp = 0;        // (r-3)(k^3+9) + 4k^2 + k
  long long overlap = 0;     // (r-2)(k * multi)^2 + k
};

/// Throws ContractError for k <= 0. r below 3 is clamped to 3.
WeakParams weak_params(int k, int r);

/// A split of a cycle packing into cycles that may be killed internally and
/// the cycles C' that must be killed externally, with var'(F).
struct InternalChoice {
  std::vector<Cycle> internal;
  std::vector<Cycle> external;
  VarSet pool;  // universe minus the variables of every external cycle
};

InternalChoice make_internal_choice(const SignedIncidenceGraph& g,
                                    const std::vector<Cycle>& packing,
                                    const std::vector<std::size_t>& internal_indices);

struct RuleOutcome {
  std::string rule;
  VarSet selected;
};

/// Applies the first applicable weak selection rule. An empty selection
/// certifies that no weak backdoor of size <= k inside var'(F) exists.
RuleOutcome weak_rule_select(const SignedIncidenceGraph& g, const InternalChoice& choice,
                             const WeakParams& params);

/// Union of the rule selections over every choice of k internally killed
/// cycles among the first 2k+1 cycles of `packing`.
VarSet weak_candidate_set(const Formula& f, int k, int r, const std::vector<Cycle>& packing,
                          const RuleObserver& observer = {});

/// Exact weak Forest-backdoor detection for r-CNF formulas.
/// Throws ContractError if a clause is wider than r or k < 0.
BackdoorVerdict detect_weak(const Formula& f, int k, int r, const DetectOptions& options = {});

/// Exact cycle-driven branching, independent of feedback vertex set size.
BackdoorVerdict exact_weak_fallback(const Formula& f, int k, const DetectOptions& options = {});

}  // namespace forestbd
