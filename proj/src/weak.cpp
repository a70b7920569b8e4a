#include "forestbd/weak.hpp"

#include <algorithm>
#include <map>

#include "forestbd/acyclic.hpp"
#include "forestbd/detail/search.hpp"
#include "forestbd/errors.hpp"

namespace forestbd {

WeakParams weak_params(int k, int r) {
  if (k <= 0) throw ContractError("weak parameters need k >= 1");
  WeakParams p;
  p.k = k;
  p.r = std::max(r, 3);
  const long long kk = k;
  p.cycles = 2 * kk + 1;
  p.ext_cycles = p.cycles - kk;
  p.multi = 4 * kk;
  p.supp = (p.r - 3) * (kk * kk * kk + 9) + 4 * kk * kk + kk;
  p.overlap = (p.r - 2) * (kk * p.multi) * (kk * p.multi) + kk;
  return p;
}

InternalChoice make_internal_choice(const SignedIncidenceGraph& g,
                                    const std::vector<Cycle>& packing,
                                    const std::vector<std::size_t>& internal_indices) {
  InternalChoice choice;
  VarSet external_vars;
  for (std::size_t i = 0; i < packing.size(); ++i) {
    bool internal = std::find(internal_indices.begin(), internal_indices.end(), i) !=
                    internal_indices.end();
    if (internal) {
      choice.internal.push_back(packing[i]);
    } else {
      choice.external.push_back(packing[i]);
      external_vars = set_union(external_vars, g.cycle_vars(packing[i]));
    }
  }
  choice.pool = set_difference(g.formula().universe(), external_vars);
  return choice;
}

RuleOutcome weak_rule_select(const SignedIncidenceGraph& g, const InternalChoice& choice,
                             const WeakParams& params) {
  const auto& cycles = choice.external;
  const std::size_t count = cycles.size();
  std::vector<VarSet> killers(count);
  // Number of clause nodes of each cycle adjacent to a killer.
  std::vector<std::map<Var, long long>> degree(count);
  for (std::size_t i = 0; i < count; ++i) {
    for (int c : g.cycle_clauses(cycles[i])) {
      for (const Literal& l : g.formula().clauses()[c].literals()) {
        if (contains(choice.pool, l.var)) ++degree[i][l.var];
      }
    }
    for (const auto& [v, d] : degree[i]) killers[i].push_back(v);
  }

  for (std::size_t i = 0; i < count; ++i) {
    if (killers[i].empty()) return {"weak.1-no-external-killer", {}};
  }

  // Max-degree killer per cycle; std::map order makes the smallest id win ties.
  std::vector<Var> best(count);
  std::vector<long long> ell(count, 0);
  for (std::size_t i = 0; i < count; ++i) {
    for (const auto& [v, d] : degree[i]) {
      if (d > ell[i]) {
        ell[i] = d;
        best[i] = v;
      }
    }
  }
  // Killers with at least ell/(2k) neighbours on the cycle.
  auto heavy = [&](std::size_t i) {
    VarSet out;
    for (const auto& [v, d] : degree[i]) {
      if (d * 2 * params.k >= ell[i]) out.push_back(v);
    }
    return out;
  };

  for (std::size_t i = 0; i < count; ++i) {
    if (ell[i] < params.multi) continue;
    VarSet w = heavy(i);
    if (static_cast<long long>(w.size()) <= params.supp) {
      return {"weak.2-multi-killer-unsupported", std::move(w)};
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (ell[i] >= params.multi && static_cast<long long>(heavy(i).size()) > params.supp) {
      return {"weak.3-multi-killer-supported", {best[i]}};
    }
  }

  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      VarSet common;
      std::set_intersection(killers[i].begin(), killers[i].end(), killers[j].begin(),
                            killers[j].end(), std::back_inserter(common));
      if (static_cast<long long>(common.size()) >= params.overlap) {
        return {"weak.4-large-overlap", {}};
      }
    }
  }

  std::map<Var, int> hits;
  for (const VarSet& ks : killers) {
    for (Var v : ks) ++hits[v];
  }
  VarSet shared;
  for (const auto& [v, h] : hits) {
    if (h >= 2) shared.push_back(v);
  }
  return {"weak.5-small-overlap", std::move(shared)};
}

namespace {

// Calls visit(indices) for every k-subset of {0..n-1} in lexicographic order.
template <typename Visit>
void for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

VarSet weak_candidate_set(const Formula& f, int k, int r, const std::vector<Cycle>& packing,
                          const RuleObserver& observer) {
  WeakParams params = weak_params(k, r);
  if (static_cast<long long>(packing.size()) < params.cycles) {
    throw ContractError("weak candidate set needs 2k+1 disjoint cycles");
  }
  SignedIncidenceGraph g = build_incidence(f);
  std::vector<Cycle> used(packing.begin(), packing.begin() + params.cycles);
  VarSet all;
  for_each_combination(used.size(), static_cast<std::size_t>(k),
                       [&](const std::vector<std::size_t>& internal) {
                         InternalChoice choice = make_internal_choice(g, used, internal);
                         RuleOutcome outcome = weak_rule_select(g, choice, params);
                         if (observer) {
                           observer(RuleFiring{BackdoorKind::Weak, outcome.rule, f, k,
                                               choice.pool, outcome.selected});
                         }
                         all = set_union(all, outcome.selected);
                       });
  return all;
}

namespace {

class WeakSearch {
 public:
  WeakSearch(int r, const DetectOptions& options) : r_(r), options_(options) {}

  std::optional<Found> detect(const Formula& f, int k, int threads) {
    SignedIncidenceGraph inc = build_incidence(f);
    if (is_acyclic(inc.graph())) return satisfiable_now(f);
    if (k == 0) return std::nullopt;
    std::string key = detail::formula_key(f);
    if (detect_failed_.get(key, k)) return std::nullopt;

    std::optional<Found> result;
    PackingOrFvs split = disjoint_cycles_or_fvs(inc.graph(), 2 * k + 1);
    if (std::holds_alternative<FeedbackVertexSet>(split)) {
      result = fallback(f, k, threads);
    } else {
      const auto& packing = std::get<CyclePacking>(split).cycles;
      VarSet candidates = weak_candidate_set(f, k, r_, packing, options_.observer);
      result = branch(f, candidates, threads,
                      [&](const Formula& sub) { return detect(sub, k - 1, 1); });
    }
    if (!result) detect_failed_.put(key, k, true);
    return result;
  }

  std::optional<Found> fallback(const Formula& f, int k, int threads) {
    SignedIncidenceGraph inc = build_incidence(f);
    if (is_acyclic(inc.graph())) return satisfiable_now(f);
    if (k == 0) return std::nullopt;
    std::string key = detail::formula_key(f);
    if (fallback_failed_.get(key, k)) return std::nullopt;

    // Some backdoor variable lies on the cycle or satisfies one of its clauses.
    Cycle cycle = *find_cycle(inc.graph());
    VarSet candidates = set_union(inc.cycle_vars(cycle),
                                  weak_external_killers(inc, cycle, f.universe()));
    auto result = branch(f, candidates, threads,
                         [&](const Formula& sub) { return fallback(sub, k - 1, 1); });
    if (!result) fallback_failed_.put(key, k, true);
    return result;
  }

 private:
  static std::optional<Found> satisfiable_now(const Formula& f) {
    if (!solve_acyclic_sat(f)) return std::nullopt;
    return Found{{}, Assignment{}};
  }

  // Tries every candidate with false, then true; ascending variable order.
  template <typename Recurse>
  std::optional<Found> branch(const Formula& f, const VarSet& candidates, int threads,
                              Recurse&& recurse) {
    return detail::first_success(
        2 * candidates.size(), threads, [&](std::size_t i) -> std::optional<Found> {
          Var s = candidates[i / 2];
          bool value = (i % 2) == 1;
          auto sub = recurse(apply_assignment(f, Assignment{{s, value}}));
          if (!sub) return std::nullopt;
          sub->set = set_union(sub->set, VarSet{s});
          (*sub->witness)[s] = value;
          return sub;
        });
  }

  int r_;
  const DetectOptions& options_;
  detail::SharedMemo<bool> detect_failed_;
  detail::SharedMemo<bool> fallback_failed_;
};

}  // namespace

BackdoorVerdict detect_weak(const Formula& f, int k, int r, const DetectOptions& options) {
  if (k < 0) throw ContractError("k must be >= 0");
  int width = static_cast<int>(max_clause_width(f));
  if (width > r) {
    throw ContractError("formula has a clause of width " + std::to_string(width) +
                        " but r = " + std::to_string(r));
  }
  WeakSearch search(std::max(r, 3), options);
  auto found = search.detect(f, k, options.threads);
  if (found) return *found;
  return No{k};
}

BackdoorVerdict exact_weak_fallback(const Formula& f, int k, const DetectOptions& options) {
  if (k < 0) throw ContractError("k must be >= 0");
  WeakSearch search(3, options);
  auto found = search.fallback(f, k, options.threads);
  if (found) return *found;
  return No{k};
}

}  // namespace forestbd
