#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "forestbd/formula.hpp"
#include "forestbd/graph.hpp"

namespace forestbd {

/// Largest backdoor accepted by the 2^|B| verification loops.
inline constexpr std::size_t kMaxVerifiedBackdoor = 30;

struct Found {
  VarSet set;
  std::optional<Assignment> witness;  // weak verdicts only
  friend bool operator==(const Found&, const Found&) = default;
};

struct No {
  int k = 0;
  friend bool operator==(const No&, const No&) = default;
};

/// Found(B, witness) or No(k): no backdoor of size <= k exists.
using BackdoorVerdict = std::variant<Found, No>;

inline bool is_found(const BackdoorVerdict& v) { return std::holds_alternative<Found>(v); }

enum class BackdoorKind { Weak, Strong, Deletion };

std::string to_string(BackdoorKind kind);
BackdoorKind parse_backdoor_kind(const std::string& name);

enum class KillMode { WeakExternal, StrongExternal, Internal };

bool is_deletion_bds(const Formula& f, const VarSet& b);
bool is_strong_bds(const Formula& f, const VarSet& b);

/// Witness tau in 2^B (lexicographic search, false before true on the
/// smallest variable) with F[tau] acyclic and satisfiable.
std::optional<Assignment> is_weak_bds(const Formula& f, const VarSet& b);

bool verify_backdoor(const Formula& f, BackdoorKind kind, const VarSet& b);

/// Pool variables adjacent to at least one clause of `cycle`.
VarSet weak_external_killers(const SignedIncidenceGraph& g, const Cycle& cycle,
                             const VarSet& pool);

/// Lexicographically least pair (u, v) of clause indices on `cycle` with
/// x in u and not-x in v, or the reverse; u < v.
std::optional<std::pair<int, int>> strong_kills_externally(const SignedIncidenceGraph& g, Var x,
                                                           const Cycle& cycle);

/// One application of a selection rule inside the weak or strong candidate
/// computation. `pool` is var'(F) for the internal choice that was active.
struct RuleFiring {
  BackdoorKind kind;
  std::string rule;
  Formula formula;
  int k = 0;
  VarSet pool;
  VarSet selected;
};

/// Observer for rule firings. May be invoked from worker threads.
using RuleObserver = std::function<void(const RuleFiring&)>;

struct DetectOptions {
  int threads = 1;
  RuleObserver observer;
};

// Enumerates assignments of `vars` in lexicographic order (false < true, the
// first variable most significant). Stops when `visit` returns true.
template <typename Visit>
bool for_each_assignment(const VarSet& vars, Visit&& visit) {
  const std::size_t n = vars.size();
  const unsigned long long total = 1ULL << n;
  Assignment tau;
  for (unsigned long long mask = 0; mask < total; ++mask) {
    for (std::size_t i = 0; i < n; ++i) tau[vars[i]] = ((mask >> (n - 1 - i)) & 1ULL) != 0;
    if (visit(static_cast<const Assignment&>(tau))) return true;
  }
  return false;
}

}  // namespace forestbd
