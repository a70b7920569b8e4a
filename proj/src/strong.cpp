#include "forestbd/strong.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "forestbd/detail/search.hpp"
#include "forestbd/errors.hpp"

namespace forestbd {

StrongParams strong_params(int k) {
  if (k <= 0) throw ContractError("strong parameters need k >= 1");
  if (k > 20) throw ResourceGuardError("strong parameters overflow beyond k = 20");
  StrongParams p;
  p.k = k;
  const long long kk = k;
  p.cycles = kk * kk * (1LL << (k - 1)) + kk + 1;
  p.ext_cycles = p.cycles - kk;
  p.fvs = 12 * p.cycles * p.cycles - 27 * p.cycles + 15;
  return p;
}

std::optional<CxCycle> build_cx_cycle(const SignedIncidenceGraph& g, const Cycle& cycle,
                                      const VarSet& pool, std::size_t base) {
  const std::size_t len = cycle.size();
  VarSet on_cycle = g.cycle_vars(cycle);

  // Occurrences of pool variables on the cycle's clauses: var -> (position, sign).
  std::map<Var, std::vector<std::pair<std::size_t, int>>> occurrences;
  for (std::size_t pos = 0; pos < len; ++pos) {
    int node = cycle[pos];
    if (g.is_var_node(node)) continue;
    int c = g.clause_of(node);
    for (const Literal& l : g.formula().clauses()[c].literals()) {
      if (contains(pool, l.var) && !contains(on_cycle, l.var)) {
        occurrences[l.var].emplace_back(pos, l.positive ? 1 : -1);
      }
    }
  }

  // Arc from position a forward to position b, inclusive.
  auto arc = [&](std::size_t a, std::size_t b) {
    Cycle out;
    for (std::size_t p = a;; p = (p + 1) % len) {
      out.push_back(cycle[p]);
      if (p == b) break;
    }
    return out;
  };

  std::optional<CxCycle> best;
  auto better = [](const CxCycle& a, const CxCycle& b) {
    return std::forward_as_tuple(a.path.size(), a.u, a.v, a.apex, a.path) <
           std::forward_as_tuple(b.path.size(), b.u, b.v, b.apex, b.path);
  };
  for (const auto& [x, occ] : occurrences) {
    for (std::size_t i = 0; i < occ.size(); ++i) {
      for (std::size_t j = i + 1; j < occ.size(); ++j) {
        if (occ[i].second == occ[j].second) continue;
        std::size_t pa = occ[i].first, pb = occ[j].first;
        int ca = g.clause_of(cycle[pa]), cb = g.clause_of(cycle[pb]);
        if (ca > cb) {
          std::swap(pa, pb);
          std::swap(ca, cb);
        }
        // Both arcs, oriented from clause u to clause v.
        Cycle forward = arc(pa, pb);
        Cycle backward = arc(pb, pa);
        std::reverse(backward.begin(), backward.end());
        for (Cycle* path : {&forward, &backward}) {
          CxCycle cand{base, x, ca, cb, std::move(*path)};
          if (!best || better(cand, *best)) best = std::move(cand);
        }
      }
    }
  }
  return best;
}

VarSet interesting_killers(const SignedIncidenceGraph& g, const CxCycle& cx, const VarSet& pool) {
  VarSet out;
  for (const Literal& l : g.formula().clauses()[cx.u].literals()) {
    if (l.var == cx.apex || !contains(pool, l.var)) continue;
    int sv = g.sign(l.var, cx.v);
    if (sv != 0 && sv != (l.positive ? 1 : -1)) out.push_back(l.var);
  }
  return out;  // literals are sorted by variable
}

RuleOutcome strong_rule_select(const SignedIncidenceGraph& g, const InternalChoice& choice,
                               const StrongParams& params) {
  const std::size_t count = choice.external.size();
  std::vector<CxCycle> cx;
  cx.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto built = build_cx_cycle(g, choice.external[i], choice.pool, i);
    // Nothing in var'(F) can kill this cycle, internally or externally.
    if (!built) return {"strong.0-no-killer", {}};
    cx.push_back(std::move(*built));
  }

  // Interesting killers of each C'-cycle; the apex kills its Cx-cycle
  // internally and so counts as well.
  std::vector<VarSet> interesting(count);
  for (std::size_t i = 0; i < count; ++i) {
    VarSet external = interesting_killers(g, cx[i], choice.pool);
    if (external.empty()) return {"strong.1-no-external-killer", {cx[i].apex}};
    interesting[i] = set_union(external, VarSet{cx[i].apex});
  }

  const long long half = 1LL << (params.k - 1);
  std::map<Var, long long> single;
  std::map<std::pair<Var, Var>, long long> joint;
  for (const VarSet& vars : interesting) {
    for (std::size_t a = 0; a < vars.size(); ++a) {
      ++single[vars[a]];
      for (std::size_t b = a + 1; b < vars.size(); ++b) ++joint[{vars[a], vars[b]}];
    }
  }
  for (const auto& [pair, n] : joint) {
    if (n >= half + 1) return {"strong.2-killing-same-cycles", {pair.first, pair.second}};
  }
  for (const auto& [y, n] : single) {
    if (n >= params.k * half + 1) return {"strong.3-killing-many-cycles", {y}};
  }
  return {"strong.4-too-many-cycles", {}};
}

namespace {

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

void check_budget(int k) {
  if (k < 0) throw ContractError("k must be >= 0");
  if (k > kMaxStrongBudget) {
    throw ResourceGuardError("strong detection is limited to k <= " +
                             std::to_string(kMaxStrongBudget));
  }
}

}  // namespace

VarSet strong_candidate_set(const Formula& f, int k, const std::vector<Cycle>& packing,
                            const RuleObserver& observer) {
  check_budget(k);
  StrongParams params = strong_params(k);
  if (static_cast<long long>(packing.size()) < params.cycles) {
    throw ContractError("strong candidate set needs cycles(k) disjoint cycles");
  }
  SignedIncidenceGraph g = build_incidence(f);
  std::vector<Cycle> used(packing.begin(), packing.begin() + params.cycles);
  VarSet all;
  for_each_combination(used.size(), static_cast<std::size_t>(k),
                       [&](const std::vector<std::size_t>& internal) {
                         InternalChoice choice = make_internal_choice(g, used, internal);
                         RuleOutcome outcome = strong_rule_select(g, choice, params);
                         if (observer) {
                           observer(RuleFiring{BackdoorKind::Strong, outcome.rule, f, k,
                                               choice.pool, outcome.selected});
                         }
                         all = set_union(all, outcome.selected);
                       });
  return all;
}

namespace {

std::string set_key(const VarSet& set) {
  std::string key;
  for (Var v : set) key += std::to_string(v) + ',';
  return key;
}

// Exact search over backdoor prefixes B: a residual F[tau] that still has a
// cycle must lose it through a new variable on that cycle or one occurring
// with opposite signs in two of its clauses.
class StrongExactSearch {
 public:
  StrongExactSearch(const Formula& f, int k) : f_(f), slit_(build_slit(f)), k_(k) {}

  std::optional<VarSet> run(const VarSet& chosen, int threads) {
    std::optional<Assignment> bad;
    for_each_assignment(chosen, [&](const Assignment& tau) {
      if (slit_residual_acyclic(slit_, f_, tau)) return false;
      bad = tau;
      return true;
    });
    if (!bad) return chosen;
    if (static_cast<int>(chosen.size()) == k_) return std::nullopt;
    std::string key = set_key(chosen);
    if (failed_.get(key, 0)) return std::nullopt;

    Formula residual = apply_assignment(f_, *bad);
    SignedIncidenceGraph inc = build_incidence(residual);
    Cycle cycle = *find_cycle(inc.graph());
    VarSet candidates = inc.cycle_vars(cycle);
    for (Var y : residual.universe()) {
      if (strong_kills_externally(inc, y, cycle)) candidates.push_back(y);
    }
    candidates = make_varset(std::move(candidates));
    auto result = detail::first_success(candidates.size(), threads, [&](std::size_t i) {
      return run(set_union(chosen, VarSet{candidates[i]}), 1);
    });
    if (!result) failed_.put(key, 0, true);
    return result;
  }

 private:
  const Formula& f_;
  SlitGraph slit_;
  int k_;
  detail::SharedMemo<bool> failed_;
};

class StrongApproxSearch {
 public:
  explicit StrongApproxSearch(const DetectOptions& options) : options_(options) {}

  std::optional<VarSet> run(const Formula& f, int k, int threads) {
    SignedIncidenceGraph inc = build_incidence(f);
    if (is_acyclic(inc.graph())) return VarSet{};
    if (k == 0) return std::nullopt;
    std::string key = detail::formula_key(f);
    if (auto cached = memo_.get(key, k)) return *cached;

    std::optional<VarSet> result;
    PackingOrFvs split =
        disjoint_cycles_or_fvs(inc.graph(), static_cast<int>(strong_params(k).cycles));
    if (std::holds_alternative<FeedbackVertexSet>(split)) {
      result = StrongExactSearch(f, k).run({}, threads);
    } else {
      const auto& packing = std::get<CyclePacking>(split).cycles;
      VarSet candidates = strong_candidate_set(f, k, packing, options_.observer);
      result = detail::first_success(
          candidates.size(), threads, [&](std::size_t i) -> std::optional<VarSet> {
            Var x = candidates[i];
            auto when_true = run(apply_assignment(f, {{x, true}}), k - 1, 1);
            if (!when_true) return std::nullopt;
            auto when_false = run(apply_assignment(f, {{x, false}}), k - 1, 1);
            if (!when_false) return std::nullopt;
            return set_union(set_union(*when_false, *when_true), VarSet{x});
          });
    }
    memo_.put(key, k, result);
    return result;
  }

 private:
  const DetectOptions& options_;
  detail::SharedMemo<std::optional<VarSet>> memo_;
};

class DeletionSearch {
 public:
  std::optional<VarSet> run(const Formula& f, int k, int threads) {
    SignedIncidenceGraph inc = build_incidence(f);
    auto cycle = find_cycle(inc.graph());
    if (!cycle) return VarSet{};
    if (k == 0) return std::nullopt;
    std::string key = detail::formula_key(f);
    if (failed_.get(key, k)) return std::nullopt;

    VarSet candidates = inc.cycle_vars(*cycle);
    auto result = detail::first_success(
        candidates.size(), threads, [&](std::size_t i) -> std::optional<VarSet> {
          Var v = candidates[i];
          auto sub = run(delete_vars(f, {v}), k - 1, 1);
          if (!sub) return std::nullopt;
          return set_union(*sub, VarSet{v});
        });
    if (!result) failed_.put(key, k, true);
    return result;
  }

 private:
  detail::SharedMemo<bool> failed_;
};

BackdoorVerdict to_verdict(const std::optional<VarSet>& set, int k) {
  if (set) return Found{*set, std::nullopt};
  return No{k};
}

}  // namespace

BackdoorVerdict detect_strong_approx(const Formula& f, int k, const DetectOptions& options) {
  check_budget(k);
  StrongApproxSearch search(options);
  return to_verdict(search.run(f, k, options.threads), k);
}

BackdoorVerdict exact_strong_fallback(const Formula& f, int k, const DetectOptions& options) {
  if (k < 0) throw ContractError("k must be >= 0");
  if (k > static_cast<int>(kMaxVerifiedBackdoor)) {
    throw ResourceGuardError("exact strong search is limited to k <= 30");
  }
  return to_verdict(StrongExactSearch(f, k).run({}, options.threads), k);
}

BackdoorVerdict detect_deletion(const Formula& f, int k, const DetectOptions& options) {
  if (k < 0) throw ContractError("k must be >= 0");
  DeletionSearch search;
  return to_verdict(search.run(f, k, options.threads), k);
}

ModelCount count_via_backdoor(const Formula& f, const VarSet& backdoor, const VarSet& universe) {
  VarSet b = make_varset(backdoor);
  VarSet u = make_varset(universe);
  if (!is_subset(b, u)) throw ContractError("backdoor must be a subset of the counting universe");
  if (!is_subset(f.occurring_vars(), u)) {
    throw ContractError("counting universe misses a variable occurring in the formula");
  }
  if (b.size() > kMaxVerifiedBackdoor) {
    throw ResourceGuardError("backdoor larger than 30 variables");
  }
  VarSet in_formula;
  for (Var v : b) {
    if (f.in_universe(v)) in_formula.push_back(v);
  }
  if (!is_strong_bds(f, in_formula)) throw ContractError("set is not a strong backdoor");

  VarSet rest = set_difference(u, b);
  BigInt total = 0;
  for_each_assignment(b, [&](const Assignment& tau) {
    Assignment local;
    for (const auto& [v, value] : tau) {
      if (f.in_universe(v)) local.emplace(v, value);
    }
    total += count_acyclic_models(apply_assignment(f, local), rest).count;
    return false;
  });
  return {total, u.size()};
}

}  // namespace forestbd
