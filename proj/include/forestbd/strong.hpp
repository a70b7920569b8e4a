#pragma once

#include <optional>
#include <vector>

#include "forestbd/acyclic.hpp"
#include "forestbd/backdoor.hpp"
#include "forestbd/graph.hpp"
#include "forestbd/weak.hpp"

namespace forestbd {

/// Largest budget accepted by the strong cycles-case pipeline.
inline constexpr int kMaxStrongBudget = 6;

struct StrongParams {
  int k = 0;
  long long cycles = 0;      // k^2 2^(k-1) + k + 1
  long long ext_cycles = 0;  // cycles - k
  long long fvs = 0;         // 12 cycles^2 - 27 cycles + 15
};

StrongParams strong_params(int k);

/// Cycle formed by an external killer `apex` of a packed cycle and the arc
/// `path` of that cycle between two clauses where the apex occurs with
/// opposite signs.
struct CxCycle {
  std::size_t base = 0;  // index of the packed cycle
  Var apex = 0;
  int u = 0;  // clause index, u < v
  int v = 0;
  Cycle path;  // incidence-graph nodes from clause u to clause v along the base cycle
};

/// Minimum-length killing arc over every pool killer of `cycle`; ties broken
/// by (u, v, apex) and then by the arc's node sequence. nullopt if no pool
/// variable strong-kills the cycle externally.
std::optional<CxCycle> build_cx_cycle(const SignedIncidenceGraph& g, const Cycle& cycle,
                                      const VarSet& pool, std::size_t base = 0);

/// Pool variables other than the apex that occur in u and v with opposite
/// signs, i.e. the external killers of the Cx-cycle.
VarSet interesting_killers(const SignedIncidenceGraph& g, const CxCycle& cx, const VarSet& pool);

/// First applicable strong selection rule for one internal choice; the
/// selection has at most two variables.
RuleOutcome strong_rule_select(const SignedIncidenceGraph& g, const InternalChoice& choice,
                               const StrongParams& params);

/// Union of the rule selections over every choice of k internally killed
/// cycles among the first cycles(k) cycles of `packing`.
VarSet strong_candidate_set(const Formula& f, int k, const std::vector<Cycle>& packing,
                            const RuleObserver& observer = {});

/// Either Found(B) with B a strong backdoor of size <= 2^k - 1, or No(k)
/// proving that no strong backdoor of size <= k exists.
BackdoorVerdict detect_strong_approx(const Formula& f, int k, const DetectOptions& options = {});

/// Exact strong detection by cycle-driven branching over backdoor prefixes.
BackdoorVerdict exact_strong_fallback(const Formula& f, int k, const DetectOptions& options = {});

/// Exact deletion backdoor detection by branching on shortest-cycle variables.
BackdoorVerdict detect_deletion(const Formula& f, int k, const DetectOptions& options = {});

/// Model count of F over `universe` as the sum of acyclic counts of F[tau]
/// over tau in 2^B. Throws ContractError if B is not a strong backdoor.
ModelCount count_via_backdoor(const Formula& f, const VarSet& backdoor, const VarSet& universe);

}  // namespace forestbd
