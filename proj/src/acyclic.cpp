#include "forestbd/acyclic.hpp"

#include <array>

#include "forestbd/graph.hpp"

namespace forestbd {

namespace {

// Two-state dynamic program over a rooted incidence forest.
//
// For a variable node v, ways[v][b] counts assignments of v's subtree with
// v = b that satisfy every clause in the subtree. For a clause node c below
// parent variable p, the subtree count given p = b is the product over the
// children when p's literal satisfies c, and that product minus the
// all-children-falsify product otherwise.
class ForestDp {
 public:
  explicit ForestDp(const Formula& f) : inc_(f) {
    if (!is_acyclic(inc_.graph())) {
      throw CyclicInputError("formula incidence graph contains a cycle");
    }
    const Graph& g = inc_.graph();
    int n = g.num_nodes();
    parent_.assign(static_cast<std::size_t>(n), -2);
    ways_.assign(static_cast<std::size_t>(n), {BigInt(1), BigInt(1)});

    // Root every tree at its smallest variable node; BFS order.
    for (int root = 0; root < inc_.num_var_nodes(); ++root) {
      if (parent_[root] != -2 || g.neighbors(root).empty()) continue;
      roots_.push_back(root);
      parent_[root] = -1;
      std::size_t head = order_.size();
      order_.push_back(root);
      while (head < order_.size()) {
        int u = order_[head++];
        for (int w : g.neighbors(u)) {
          if (parent_[w] != -2) continue;
          parent_[w] = u;
          order_.push_back(w);
        }
      }
    }

    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      int u = *it;
      if (!inc_.is_var_node(u)) continue;
      for (int c : g.neighbors(u)) {
        if (c == parent_[u]) continue;
        for (int b = 0; b < 2; ++b) ways_[u][b] *= clause_ways(c, b == 1);
      }
    }
  }

  const SignedIncidenceGraph& incidence() const { return inc_; }
  const std::vector<int>& roots() const { return roots_; }

  BigInt tree_total(int root) const { return ways_[root][0] + ways_[root][1]; }

  // Count for clause subtree c when its parent variable takes `parent_value`.
  BigInt clause_ways(int c, bool parent_value) const {
    const Graph& g = inc_.graph();
    int p = parent_[c];
    BigInt all = 1, falsify = 1;
    for (int w : g.neighbors(c)) {
      if (w == p) continue;
      auto [sat, unsat] = child_split(c, w);
      all *= sat + unsat;
      falsify *= unsat;
    }
    bool parent_satisfies = parent_value == (inc_.sign(inc_.var_of(p), inc_.clause_of(c)) > 0);
    return parent_satisfies ? all : BigInt(all - falsify);
  }

  // (ways with w satisfying clause c, ways with w falsifying it).
  std::pair<BigInt, BigInt> child_split(int c, int w) const {
    bool positive = inc_.sign(inc_.var_of(w), inc_.clause_of(c)) > 0;
    return {ways_[w][positive ? 1 : 0], ways_[w][positive ? 0 : 1]};
  }

  bool can_take(int v, bool value) const { return ways_[v][value ? 1 : 0] > 0; }

  // Top-down reconstruction of one model of the tree rooted at `v`.
  void extract(int v, bool value, Assignment& out) const {
    out[inc_.var_of(v)] = value;
    const Graph& g = inc_.graph();
    for (int c : g.neighbors(v)) {
      if (c == parent_[v]) continue;
      bool satisfied = value == (inc_.sign(inc_.var_of(v), inc_.clause_of(c)) > 0);
      for (int w : g.neighbors(c)) {
        if (w == v) continue;
        bool positive = inc_.sign(inc_.var_of(w), inc_.clause_of(c)) > 0;
        bool pick;
        if (!satisfied && can_take(w, positive)) {
          pick = positive;
          satisfied = true;
        } else {
          pick = !can_take(w, false);
        }
        extract(w, pick, out);
      }
    }
  }

 private:
  SignedIncidenceGraph inc_;
  std::vector<int> parent_;  // -2 unvisited, -1 root
  std::vector<int> order_;
  std::vector<int> roots_;
  std::vector<std::array<BigInt, 2>> ways_;
};

}  // namespace

std::optional<Assignment> solve_acyclic_sat(const Formula& f) {
  ForestDp dp(f);
  if (f.has_empty_clause()) return std::nullopt;
  Assignment model;
  for (int root : dp.roots()) {
    if (dp.tree_total(root) == 0) return std::nullopt;
    dp.extract(root, !dp.can_take(root, false), model);
  }
  for (Var v : f.universe()) model.try_emplace(v, false);
  return model;
}

ModelCount count_acyclic_models(const Formula& f, const VarSet& universe) {
  VarSet occurring = f.occurring_vars();
  if (!is_subset(occurring, universe)) {
    throw ContractError("counting universe misses a variable occurring in the formula");
  }
  ForestDp dp(f);
  ModelCount result{BigInt(0), universe.size()};
  if (f.has_empty_clause()) return result;
  BigInt total = 1;
  for (int root : dp.roots()) total *= dp.tree_total(root);
  total <<= static_cast<unsigned>(universe.size() - occurring.size());
  result.count = std::move(total);
  return result;
}

}  // namespace forestbd
