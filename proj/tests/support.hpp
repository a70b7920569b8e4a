#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "forestbd/formula.hpp"
#include "forestbd/generators.hpp"

namespace forestbd::testing {

/// Formula over {1..n} from DIMACS literal lists.
inline Formula cnf(int n, std::initializer_list<std::initializer_list<int>> clauses) {
  std::vector<Clause> out;
  for (const auto& c : clauses) {
    std::vector<int> lits(c);
    out.push_back(Clause::from_dimacs(lits));
  }
  return Formula::over_range(n, std::move(out));
}

/// Random 3-CNF with 3 <= n <= max_n and 1 <= m <= max_m clauses.
inline Formula random_formula(std::mt19937_64& rng, int max_n, int max_m, int r = 3) {
  std::uniform_int_distribution<int> nd(r, max_n);
  const int n = nd(rng);
  std::uniform_int_distribution<int> md(1, max_m);
  const int m = md(rng);
  return gen_random_rcnf(n, m, r, rng());
}

/// Random partial assignment: each universe variable assigned with probability 1/2.
inline Assignment random_assignment(std::mt19937_64& rng, const Formula& f) {
  Assignment tau;
  for (Var v : f.universe()) {
    const auto bits = rng();
    if (bits & 1ULL) tau[v] = (bits & 2ULL) != 0;
  }
  return tau;
}

/// Two variable-disjoint copies of the triangle formula (x|y)(-x|y)(x|-y).
inline Formula two_triangles() {
  return cnf(4, {{1, 2}, {-1, 2}, {1, -2}, {3, 4}, {-3, 4}, {3, -4}});
}

}  // namespace forestbd::testing

#include "forestbd/graph.hpp"

namespace forestbd::testing {

/// Shortest cycle of inc(F) that uses only the listed variables.
inline Cycle cycle_within(const SignedIncidenceGraph& g, const VarSet& vars) {
  NodeMask forbidden(static_cast<std::size_t>(g.graph().num_nodes()), false);
  for (Var v : g.formula().universe()) {
    if (!contains(vars, v)) forbidden[g.var_node(v)] = true;
  }
  return find_cycle(g.graph(), forbidden).value();
}

/// Ring a_1 .. a_n (variables first..first+n-1) with clause j on a_j, a_{j+1}
/// plus the DIMACS literals extra[j].
inline std::vector<Clause> ring(int first, int n, const std::vector<std::vector<int>>& extra) {
  std::vector<Clause> out;
  for (int j = 0; j < n; ++j) {
    std::vector<int> lits{first + j, first + (j + 1) % n};
    if (j < static_cast<int>(extra.size())) lits.insert(lits.end(), extra[j].begin(), extra[j].end());
    out.push_back(Clause::from_dimacs(lits));
  }
  return out;
}

inline VarSet range_set(int first, int n) {
  VarSet out;
  for (int i = 0; i < n; ++i) out.push_back(first + i);
  return out;
}

}  // namespace forestbd::testing
