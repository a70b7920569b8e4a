#include "forestbd/backdoor.hpp"

#include <algorithm>

#include "forestbd/acyclic.hpp"
#include "forestbd/errors.hpp"

namespace forestbd {

namespace {

void check_backdoor_input(const Formula& f, const VarSet& b, bool exponential) {
  if (!is_subset(b, f.universe())) {
    throw ContractError("backdoor variables must belong to the universe");
  }
  if (exponential && b.size() > kMaxVerifiedBackdoor) {
    throw ResourceGuardError("refusing to enumerate 2^" + std::to_string(b.size()) +
                             " assignments (limit 2^" +
                             std::to_string(kMaxVerifiedBackdoor) + ")");
  }
}

}  // namespace

std::string to_string(BackdoorKind kind) {
  switch (kind) {
    case BackdoorKind::Weak:
      return "weak";
    case BackdoorKind::Strong:
      return "strong";
    case BackdoorKind::Deletion:
      return "deletion";
  }
  return "?";
}

BackdoorKind parse_backdoor_kind(const std::string& name) {
  if (name == "weak") return BackdoorKind::Weak;
  if (name == "strong") return BackdoorKind::Strong;
  if (name == "deletion") return BackdoorKind::Deletion;
  throw ParseError("unknown backdoor kind '" + name + "'");
}

bool is_deletion_bds(const Formula& f, const VarSet& b) {
  VarSet set = make_varset(b);
  check_backdoor_input(f, set, false);
  return is_acyclic(build_incidence(delete_vars(f, set)).graph());
}

bool is_strong_bds(const Formula& f, const VarSet& b) {
  VarSet set = make_varset(b);
  check_backdoor_input(f, set, true);
  SlitGraph slit = build_slit(f);
  bool cyclic_residual = for_each_assignment(
      set, [&](const Assignment& tau) { return !slit_residual_acyclic(slit, f, tau); });
  return !cyclic_residual;
}

std::optional<Assignment> is_weak_bds(const Formula& f, const VarSet& b) {
  VarSet set = make_varset(b);
  check_backdoor_input(f, set, true);
  SlitGraph slit = build_slit(f);
  std::optional<Assignment> witness;
  for_each_assignment(set, [&](const Assignment& tau) {
    if (!slit_residual_acyclic(slit, f, tau)) return false;
    if (!solve_acyclic_sat(apply_assignment(f, tau))) return false;
    witness = tau;
    return true;
  });
  return witness;
}

bool verify_backdoor(const Formula& f, BackdoorKind kind, const VarSet& b) {
  switch (kind) {
    case BackdoorKind::Weak:
      return is_weak_bds(f, b).has_value();
    case BackdoorKind::Strong:
      return is_strong_bds(f, b);
    case BackdoorKind::Deletion:
      return is_deletion_bds(f, b);
  }
  return false;
}

VarSet weak_external_killers(const SignedIncidenceGraph& g, const Cycle& cycle,
                             const VarSet& pool) {
  VarSet on_cycle = g.cycle_vars(cycle);
  VarSet out;
  for (int c : g.cycle_clauses(cycle)) {
    for (const Literal& l : g.formula().clauses()[c].literals()) {
      if (contains(pool, l.var) && !contains(on_cycle, l.var)) out.push_back(l.var);
    }
  }
  return make_varset(std::move(out));
}

std::optional<std::pair<int, int>> strong_kills_externally(const SignedIncidenceGraph& g, Var x,
                                                           const Cycle& cycle) {
  if (contains(g.cycle_vars(cycle), x)) return std::nullopt;
  std::vector<int> clauses = g.cycle_clauses(cycle);
  std::sort(clauses.begin(), clauses.end());
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    int si = g.sign(x, clauses[i]);
    if (si == 0) continue;
    for (std::size_t j = i + 1; j < clauses.size(); ++j) {
      if (g.sign(x, clauses[j]) == -si) return std::make_pair(clauses[i], clauses[j]);
    }
  }
  return std::nullopt;
}

}  // namespace forestbd
