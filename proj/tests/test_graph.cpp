#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "forestbd/errors.hpp"
#include "forestbd/generators.hpp"
#include "forestbd/graph.hpp"
#include "support.hpp"

using namespace forestbd;
using forestbd::testing::cnf;

namespace {

Graph random_graph(std::mt19937_64& rng, int n, double p) {
  Graph g(n);
  std::bernoulli_distribution edge(p);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (edge(rng)) g.add_edge(u, v);
    }
  }
  return g;
}

// Exhaustive: every simple cycle, read from its minimum node in both
// directions; returns the (length, sequence)-minimal one.
std::optional<Cycle> brute_shortest_cycle(const Graph& g, const NodeMask& forbidden) {
  std::optional<Cycle> best;
  auto better = [&](const Cycle& c) {
    return !best || c.size() < best->size() || (c.size() == best->size() && c < *best);
  };
  Cycle path;
  std::vector<bool> on_path(static_cast<std::size_t>(g.num_nodes()), false);
  std::function<void(int, int)> dfs = [&](int s, int u) {
    for (int w : g.neighbors(u)) {
      if (w == s && path.size() >= 3 && better(path)) best = path;
      if (w <= s || on_path[w] || (!forbidden.empty() && forbidden[w])) continue;
      if (best && path.size() + 1 > best->size()) continue;
      on_path[w] = true;
      path.push_back(w);
      dfs(s, w);
      path.pop_back();
      on_path[w] = false;
    }
  };
  for (int s = 0; s < g.num_nodes(); ++s) {
    if (!forbidden.empty() && forbidden[s]) continue;
    path = {s};
    on_path[s] = true;
    dfs(s, s);
    on_path[s] = false;
  }
  return best;
}

NodeMask mask_of(const Graph& g, const std::vector<int>& nodes) {
  NodeMask m(static_cast<std::size_t>(g.num_nodes()), false);
  for (int v : nodes) m[v] = true;
  return m;
}

}  // namespace

TEST(Graph, AddEdgeIgnoresLoopsAndDuplicates) {
  Graph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 0);
  g.add_edge(2, 2);
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_FALSE(g.has_edge(0, 2));
}

TEST(BuildIncidence, SignedEdges) {
  // (x | -y)
  SignedIncidenceGraph g = build_incidence(cnf(2, {{1, -2}}));
  EXPECT_EQ(g.graph().num_nodes(), 3);
  EXPECT_EQ(g.graph().num_edges(), 2u);
  EXPECT_EQ(g.sign(1, 0), 1);
  EXPECT_EQ(g.sign(2, 0), -1);
  EXPECT_EQ(g.var_node(2), 1);
  EXPECT_EQ(g.clause_node(0), 2);
  EXPECT_EQ(g.ref(2), (NodeRef{NodeKind::Clause, 0}));
}

TEST(BuildIncidence, EmptyFormula) {
  SignedIncidenceGraph g = build_incidence(Formula{});
  EXPECT_EQ(g.graph().num_nodes(), 0);
  EXPECT_TRUE(is_acyclic(g.graph()));
}

TEST(BuildIncidence, Grid2Counts) {
  SignedIncidenceGraph g = build_incidence(gen_grid(2));
  EXPECT_EQ(g.num_var_nodes(), 5);
  EXPECT_EQ(g.num_clause_nodes(), 4);
  EXPECT_EQ(g.graph().num_edges(), 12u);
  EXPECT_EQ(g.graph().neighbors(g.var_node(5)).size(), 4u);
}

TEST(BuildIncidence, Bipartite) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Formula f = forestbd::testing::random_formula(rng, 10, 15);
    SignedIncidenceGraph g = build_incidence(f);
    for (int u = 0; u < g.graph().num_nodes(); ++u) {
      for (int w : g.graph().neighbors(u)) EXPECT_NE(g.is_var_node(u), g.is_var_node(w));
    }
  }
}

TEST(BuildSlit, SingleUnit) {
  SlitGraph s = build_slit(cnf(1, {{1}}));
  EXPECT_EQ(s.graph().num_nodes(), 3);
  EXPECT_EQ(s.graph().num_edges(), 2u);
  EXPECT_TRUE(s.graph().has_edge(s.literal_node({1, true}), s.clause_node(0)));
  EXPECT_TRUE(s.graph().has_edge(s.literal_node({1, true}), s.literal_node({1, false})));
}

TEST(BuildSlit, EmptyFormulaKeepsBothPolarities) {
  SlitGraph s = build_slit(Formula({}, VarSet{1}));
  EXPECT_EQ(s.graph().num_nodes(), 2);
  EXPECT_EQ(s.graph().num_edges(), 1u);
}

TEST(BuildSlit, TwoClauses) {
  // (x|y)(-x|y)
  SlitGraph s = build_slit(cnf(2, {{1, 2}, {-1, 2}}));
  const Graph& g = s.graph();
  EXPECT_EQ(g.num_edges(), 6u);
  EXPECT_TRUE(g.has_edge(s.literal_node({1, true}), s.clause_node(0)));
  EXPECT_TRUE(g.has_edge(s.literal_node({2, true}), s.clause_node(0)));
  EXPECT_TRUE(g.has_edge(s.literal_node({1, false}), s.clause_node(1)));
  EXPECT_TRUE(g.has_edge(s.literal_node({2, true}), s.clause_node(1)));
  EXPECT_TRUE(g.has_edge(s.literal_node({2, true}), s.literal_node({2, false})));
}

TEST(IsAcyclic, Examples) {
  EXPECT_TRUE(is_acyclic(build_incidence(cnf(3, {{1, 2, 3}})).graph()));
  EXPECT_FALSE(is_acyclic(build_incidence(cnf(2, {{1, 2}, {-1, 2}})).graph()));
  EXPECT_TRUE(is_acyclic(Graph{}));
}

TEST(FindCycle, TwoClausesSharingTwoVariables) {
  SignedIncidenceGraph g = build_incidence(cnf(2, {{1, 2}, {-1, 2}}));
  auto c = find_cycle(g.graph(), NodeMask{});
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, (Cycle{0, 2, 1, 3}));
  EXPECT_FALSE(find_cycle(g.graph(), mask_of(g.graph(), {g.var_node(1)})));
  std::vector<int> forbidden{g.var_node(1)};
  EXPECT_FALSE(find_cycle(g.graph(), std::span<const int>(forbidden)));
}

TEST(FindCycle, Grid2MatchesExhaustiveSearch) {
  SignedIncidenceGraph g = build_incidence(gen_grid(2));
  auto c = find_cycle(g.graph(), NodeMask{});
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, *brute_shortest_cycle(g.graph(), {}));
  EXPECT_TRUE(is_cycle_of(g.graph(), *c));
}

TEST(FindCycle, AgreesWithExhaustiveEnumeration) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 14);
    Graph g = random_graph(rng, n, 0.15 + 0.1 * static_cast<double>(rng() % 3));
    NodeMask forbidden;
    if (trial % 2) {
      forbidden.assign(static_cast<std::size_t>(n), false);
      for (int v = 0; v < n; ++v) forbidden[v] = (rng() % 5) == 0;
    }
    auto fast = find_cycle(g, forbidden);
    auto slow = brute_shortest_cycle(g, forbidden);
    ASSERT_EQ(fast.has_value(), slow.has_value());
    if (fast) {
      EXPECT_EQ(*fast, *slow);
      EXPECT_TRUE(is_cycle_of(g, *fast));
    }
    EXPECT_EQ(fast.has_value(), !is_acyclic(g, forbidden.empty() ? NodeMask(n, false) : forbidden));
  }
}

TEST(FindCycle, IncidenceCyclesAlternate) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Formula f = gen_random_rcnf(6, 1 + static_cast<int>(rng() % 8), 2, rng());
    SignedIncidenceGraph g = build_incidence(f);
    if (g.graph().num_nodes() > 20) continue;
    auto c = find_cycle(g.graph(), NodeMask{});
    auto slow = brute_shortest_cycle(g.graph(), {});
    ASSERT_EQ(c.has_value(), slow.has_value());
    if (!c) continue;
    EXPECT_EQ(*c, *slow);
    EXPECT_GE(c->size(), 4u);
    EXPECT_EQ(c->size() % 2, 0u);
    for (std::size_t i = 0; i < c->size(); ++i) {
      EXPECT_NE(g.is_var_node((*c)[i]), g.is_var_node((*c)[(i + 1) % c->size()]));
    }
  }
}

TEST(Dichotomy, ThreeDisjointFourCycles) {
  Graph g(12);
  for (int b = 0; b < 12; b += 4) {
    for (int i = 0; i < 4; ++i) g.add_edge(b + i, b + (i + 1) % 4);
  }
  auto result = disjoint_cycles_or_fvs(g, 3);
  ASSERT_TRUE(std::holds_alternative<CyclePacking>(result));
  EXPECT_EQ(std::get<CyclePacking>(result).cycles.size(), 3u);
}

TEST(Dichotomy, ForestGivesEmptyFvs) {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  auto result = disjoint_cycles_or_fvs(g, 2);
  ASSERT_TRUE(std::holds_alternative<FeedbackVertexSet>(result));
  EXPECT_TRUE(std::get<FeedbackVertexSet>(result).nodes.empty());
}

TEST(Dichotomy, SingleCycle) {
  Graph g(4);
  for (int i = 0; i < 4; ++i) g.add_edge(i, (i + 1) % 4);
  auto result = disjoint_cycles_or_fvs(g, 2);
  ASSERT_TRUE(std::holds_alternative<FeedbackVertexSet>(result));
  EXPECT_TRUE(is_acyclic(g, mask_of(g, std::get<FeedbackVertexSet>(result).nodes)));
  EXPECT_THROW(disjoint_cycles_or_fvs(g, 0), ContractError);
}

TEST(Dichotomy, RandomValidity) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    Graph g = random_graph(rng, 5 + static_cast<int>(rng() % 25), 0.12);
    const int k_prime = 1 + static_cast<int>(rng() % 5);
    auto result = disjoint_cycles_or_fvs(g, k_prime);
    if (auto* packing = std::get_if<CyclePacking>(&result)) {
      EXPECT_GE(packing->cycles.size(), static_cast<std::size_t>(k_prime));
      std::set<int> seen;
      for (const Cycle& c : packing->cycles) {
        EXPECT_TRUE(is_cycle_of(g, c));
        for (int v : c) EXPECT_TRUE(seen.insert(v).second);
      }
    } else {
      EXPECT_TRUE(is_acyclic(g, mask_of(g, std::get<FeedbackVertexSet>(result).nodes)));
    }
  }
}

TEST(SlitResidual, Examples) {
  Formula tri = cnf(2, {{1, 2}, {-1, 2}, {1, -2}});
  EXPECT_TRUE(slit_residual_acyclic(tri, {{1, true}}));
  EXPECT_FALSE(slit_residual_acyclic(tri, {}));
  EXPECT_TRUE(slit_residual_acyclic(tri, {{1, false}, {2, true}}));
  EXPECT_THROW(slit_residual_acyclic(tri, {{3, true}}), ContractError);
}

TEST(SlitResidual, MatchesDirectRestriction) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 1000; ++trial) {
    Formula f = forestbd::testing::random_formula(rng, 10, 15);
    Assignment tau = forestbd::testing::random_assignment(rng, f);
    EXPECT_EQ(slit_residual_acyclic(f, tau),
              is_acyclic(build_incidence(apply_assignment(f, tau)).graph()));
  }
}
