#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "forestbd/formula.hpp"

namespace forestbd {

/// Simple undirected graph on nodes 0..n-1 with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int num_nodes) : adj_(static_cast<std::size_t>(num_nodes)) {}

  int num_nodes() const { return static_cast<int>(adj_.size()); }
  std::size_t num_edges() const { return num_edges_; }

  /// Ignores self loops and duplicate edges.
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  const std::vector<int>& neighbors(int u) const { return adj_[u]; }

 private:
  std::vector<std::vector<int>> adj_;
  std::size_t num_edges_ = 0;
};

/// Simple cycle as a node sequence without repeating the first node.
using Cycle = std::vector<int>;

/// Node mask: true marks a node excluded from a query.
using NodeMask = std::vector<bool>;

bool is_acyclic(const Graph& g);
bool is_acyclic(const Graph& g, const NodeMask& removed);

/// Shortest cycle of g minus `forbidden`. Among shortest cycles the one whose
/// node sequence, read from its minimum node, is lexicographically smallest.
std::optional<Cycle> find_cycle(const Graph& g, const NodeMask& forbidden = {});
std::optional<Cycle> find_cycle(const Graph& g, std::span<const int> forbidden);

/// Whether `cycle` is a simple cycle of g (length >= 3, consecutive nodes
/// adjacent, no repeats).
bool is_cycle_of(const Graph& g, const Cycle& cycle);

struct CyclePacking {
  std::vector<Cycle> cycles;
};
struct FeedbackVertexSet {
  std::vector<int> nodes;
};
/// Either at least k' vertex-disjoint cycles or a feedback vertex set.
using PackingOrFvs = std::variant<CyclePacking, FeedbackVertexSet>;

/// Greedy shortest-cycle packing. Stops once `k_prime` disjoint cycles are
/// collected; otherwise the union of the packed cycles is returned as an FVS,
/// since every cycle of g meets some packed cycle.
PackingOrFvs disjoint_cycles_or_fvs(const Graph& g, int k_prime);

/// Node kinds of the incidence graph, used for reporting.
enum class NodeKind { Variable, Clause };

struct NodeRef {
  NodeKind kind;
  int id;  // variable id or clause index
  friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

/// Bipartite variable/clause graph with edge signs. Variable nodes come first
/// in ascending id order, followed by clause nodes in clause order.
class SignedIncidenceGraph {
 public:
  explicit SignedIncidenceGraph(const Formula& f);

  const Graph& graph() const { return graph_; }
  const Formula& formula() const { return formula_; }

  int num_var_nodes() const { return static_cast<int>(vars_.size()); }
  int num_clause_nodes() const { return graph_.num_nodes() - num_var_nodes(); }

  bool is_var_node(int node) const { return node < num_var_nodes(); }
  Var var_of(int node) const { return vars_[node]; }
  int clause_of(int node) const { return node - num_var_nodes(); }
  int var_node(Var v) const;  // -1 if v is not in the universe
  int clause_node(int clause_index) const { return num_var_nodes() + clause_index; }
  NodeRef ref(int node) const;

  /// +1 / -1 for an edge (v, clause), 0 when they are not adjacent.
  int sign(Var v, int clause_index) const;

  /// Variables on a cycle, ascending.
  VarSet cycle_vars(const Cycle& cycle) const;
  /// Clause indices on a cycle, in cycle order.
  std::vector<int> cycle_clauses(const Cycle& cycle) const;

 private:
  Formula formula_;
  VarSet vars_;
  Graph graph_;
};

/// Strong clause-literal graph: literal nodes (2i positive, 2i+1 negative for
/// the i-th universe variable) followed by clause nodes.
class SlitGraph {
 public:
  explicit SlitGraph(const Formula& f);

  const Graph& graph() const { return graph_; }
  int literal_node(Literal lit) const;  // -1 if the variable is unknown
  int clause_node(int clause_index) const { return 2 * static_cast<int>(vars_.size()) + clause_index; }
  bool is_literal_node(int node) const { return node < 2 * static_cast<int>(vars_.size()); }
  Literal literal_of(int node) const { return {vars_[node / 2], node % 2 == 0}; }

 private:
  VarSet vars_;
  Graph graph_;
};

SignedIncidenceGraph build_incidence(const Formula& f);
SlitGraph build_slit(const Formula& f);

/// Acyclicity of slit(F) - N[true(tau)], which equals acyclicity of
/// inc(F[tau]).
bool slit_residual_acyclic(const Formula& f, const Assignment& tau);
bool slit_residual_acyclic(const SlitGraph& slit, const Formula& f, const Assignment& tau);

}  // namespace forestbd
