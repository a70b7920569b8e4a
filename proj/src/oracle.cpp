#include "forestbd/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "forestbd/errors.hpp"

namespace forestbd::oracle {

namespace {

struct MaskClause {
  std::uint32_t pos = 0;
  std::uint32_t neg = 0;
};

std::vector<MaskClause> to_masks(const Formula& f, const VarSet& universe) {
  std::vector<MaskClause> out;
  out.reserve(f.num_clauses());
  for (const Clause& c : f.clauses()) {
    MaskClause m;
    for (const Literal& l : c.literals()) {
      auto it = std::lower_bound(universe.begin(), universe.end(), l.var);
      if (it == universe.end() || *it != l.var) {
        throw ContractError("counting universe misses a variable occurring in the formula");
      }
      std::uint32_t bit = 1u << (it - universe.begin());
      (l.positive ? m.pos : m.neg) |= bit;
    }
    out.push_back(m);
  }
  return out;
}

bool all_satisfied(const std::vector<MaskClause>& clauses, std::uint32_t a) {
  for (const MaskClause& c : clauses) {
    if (((a & c.pos) | (~a & c.neg)) == 0) return false;
  }
  return true;
}

template <typename Visit>
bool for_each_subset(const VarSet& pool, std::size_t size, Visit&& visit) {
  if (size > pool.size()) return false;
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  VarSet subset(size);
  while (true) {
    for (std::size_t i = 0; i < size; ++i) subset[i] = pool[idx[i]];
    if (visit(static_cast<const VarSet&>(subset))) return true;
    std::size_t i = size;
    while (i > 0 && idx[i - 1] == pool.size() - size + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

BigInt brute_count(const Formula& f, const VarSet& universe) {
  VarSet u = make_varset(universe);
  if (u.size() > kMaxCountVars) {
    throw ResourceGuardError("brute-force counting is limited to 24 variables");
  }
  auto clauses = to_masks(f, u);
  std::uint64_t count = 0;
  const std::uint64_t total = 1ULL << u.size();
  for (std::uint64_t a = 0; a < total; ++a) {
    if (all_satisfied(clauses, static_cast<std::uint32_t>(a))) ++count;
  }
  return BigInt(count);
}

bool brute_satisfiable(const Formula& f) {
  VarSet u = f.occurring_vars();
  if (u.size() > kMaxCountVars) {
    throw ResourceGuardError("brute-force satisfiability is limited to 24 variables");
  }
  auto clauses = to_masks(f, u);
  const std::uint64_t total = 1ULL << u.size();
  for (std::uint64_t a = 0; a < total; ++a) {
    if (all_satisfied(clauses, static_cast<std::uint32_t>(a))) return true;
  }
  return false;
}

bool forest_by_counting(const Formula& f) {
  const VarSet& vars = f.universe();
  const std::size_t nv = vars.size();
  const std::size_t n = nv + f.num_clauses();
  std::vector<std::vector<std::size_t>> adj(n);
  std::size_t edges = 0;
  for (std::size_t ci = 0; ci < f.num_clauses(); ++ci) {
    for (const Literal& l : f.clauses()[ci].literals()) {
      std::size_t v = static_cast<std::size_t>(
          std::lower_bound(vars.begin(), vars.end(), l.var) - vars.begin());
      adj[v].push_back(nv + ci);
      adj[nv + ci].push_back(v);
      ++edges;
    }
  }
  std::vector<bool> seen(n, false);
  std::size_t components = 0;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++components;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t w : adj[u]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  return edges + components == n;
}

bool is_backdoor(const Formula& f, BackdoorKind kind, const VarSet& b) {
  if (kind == BackdoorKind::Deletion) return forest_by_counting(delete_vars(f, b));
  const std::size_t n = b.size();
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    Assignment tau;
    for (std::size_t i = 0; i < n; ++i) tau[b[i]] = ((mask >> i) & 1ULL) != 0;
    Formula residual = apply_assignment(f, tau);
    bool acyclic = forest_by_counting(residual);
    if (kind == BackdoorKind::Strong && !acyclic) return false;
    if (kind == BackdoorKind::Weak && acyclic && brute_satisfiable(residual)) return true;
  }
  return kind == BackdoorKind::Strong;
}

Report brute_min_backdoor(const Formula& f, BackdoorKind kind, int k_max,
                          const std::optional<VarSet>& pool) {
  VarSet candidates = pool ? make_varset(*pool) : f.universe();
  if (!is_subset(candidates, f.universe())) {
    throw ContractError("oracle pool must be a subset of the universe");
  }
  if (f.num_vars() > kMaxBackdoorVars) {
    throw ResourceGuardError("oracle backdoor search is limited to 16 variables");
  }
  if (k_max < 0 || k_max > kMaxBackdoorSize) {
    throw ResourceGuardError("oracle backdoor search needs 0 <= k_max <= 6");
  }
  Report report;
  report.kind = kind == BackdoorKind::Weak     ? Kind::Weak
                : kind == BackdoorKind::Strong ? Kind::Strong
                                               : Kind::Deletion;
  for (int size = 0; size <= k_max; ++size) {
    for_each_subset(candidates, static_cast<std::size_t>(size), [&](const VarSet& b) {
      if (is_backdoor(f, kind, b)) report.witness_sets.push_back(b);
      return false;
    });
    if (!report.witness_sets.empty()) {
      report.optimum = size;
      break;
    }
  }
  for (const VarSet& b : report.witness_sets) {
    if (!verify_backdoor(f, kind, b)) {
      throw std::logic_error("oracle and backdoor-core predicates disagree");
    }
  }
  return report;
}

int min_hitting_set(const std::vector<std::vector<int>>& family) {
  VarSet elements;
  for (const auto& set : family) elements.insert(elements.end(), set.begin(), set.end());
  elements = make_varset(std::move(elements));
  for (std::size_t size = 0; size <= elements.size(); ++size) {
    bool hit = for_each_subset(elements, size, [&](const VarSet& chosen) {
      return std::all_of(family.begin(), family.end(), [&](const std::vector<int>& set) {
        return std::any_of(set.begin(), set.end(), [&](int e) { return contains(chosen, e); });
      });
    });
    if (hit) return static_cast<int>(size);
  }
  return -1;  // only when some set is empty
}

}  // namespace forestbd::oracle
