#include "forestbd/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>

#include "forestbd/errors.hpp"

namespace forestbd {

void Graph::add_edge(int u, int v) {
  if (u == v) return;
  auto& au = adj_[u];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it != au.end() && *it == v) return;
  au.insert(it, v);
  auto& av = adj_[v];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++num_edges_;
}

bool Graph::has_edge(int u, int v) const {
  const auto& au = adj_[u];
  return std::binary_search(au.begin(), au.end(), v);
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

bool masked(const NodeMask& mask, int node) {
  return !mask.empty() && mask[node];
}

constexpr int kUnreached = std::numeric_limits<int>::max();

// Length of the shortest cycle through `s` using allowed nodes >= s, or
// kUnreached. Fills `dist` with BFS distances in that subgraph.
int shortest_cycle_through(const Graph& g, const NodeMask& forbidden, int s,
                           std::vector<int>& dist, std::vector<int>& branch) {
  int n = g.num_nodes();
  dist.assign(static_cast<std::size_t>(n), kUnreached);
  branch.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::queue<int> queue;
  dist[s] = 0;
  queue.push(s);
  int best = kUnreached;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop();
    for (int w : g.neighbors(u)) {
      if (w < s || masked(forbidden, w)) continue;
      if (dist[w] == kUnreached) {
        dist[w] = dist[u] + 1;
        parent[w] = u;
        branch[w] = (u == s) ? w : branch[u];
        queue.push(w);
      } else if (w != parent[u] && u != parent[w] && w != s && u != s &&
                 branch[u] != branch[w]) {
        best = std::min(best, dist[u] + dist[w] + 1);
      }
    }
  }
  return best;
}

// Lexicographically smallest simple cycle of exactly `length` nodes through
// `s` whose other nodes are > s.
bool smallest_cycle_dfs(const Graph& g, const NodeMask& forbidden, int s, int length,
                        const std::vector<int>& dist, std::vector<bool>& on_path,
                        Cycle& path) {
  int v = path.back();
  int depth = static_cast<int>(path.size());
  if (depth == length) return g.has_edge(v, s);
  for (int w : g.neighbors(v)) {
    if (w <= s || masked(forbidden, w) || on_path[w]) continue;
    // Remaining edges after stepping to w: length - depth; w must still be
    // able to return to s.
    if (dist[w] == kUnreached || dist[w] > length - depth) continue;
    on_path[w] = true;
    path.push_back(w);
    if (smallest_cycle_dfs(g, forbidden, s, length, dist, on_path, path)) return true;
    path.pop_back();
    on_path[w] = false;
  }
  return false;
}

}  // namespace

bool is_acyclic(const Graph& g) { return is_acyclic(g, NodeMask{}); }

bool is_acyclic(const Graph& g, const NodeMask& removed) {
  DisjointSets sets(g.num_nodes());
  for (int u = 0; u < g.num_nodes(); ++u) {
    if (masked(removed, u)) continue;
    for (int v : g.neighbors(u)) {
      if (v <= u || masked(removed, v)) continue;
      if (!sets.unite(u, v)) return false;
    }
  }
  return true;
}

std::optional<Cycle> find_cycle(const Graph& g, const NodeMask& forbidden) {
  int n = g.num_nodes();
  std::vector<int> girth_through(static_cast<std::size_t>(n), kUnreached);
  std::vector<int> dist, branch;
  int girth = kUnreached;
  for (int s = 0; s < n; ++s) {
    if (masked(forbidden, s)) continue;
    girth_through[s] = shortest_cycle_through(g, forbidden, s, dist, branch);
    girth = std::min(girth, girth_through[s]);
  }
  if (girth == kUnreached) return std::nullopt;

  for (int s = 0; s < n; ++s) {
    if (girth_through[s] != girth) continue;
    shortest_cycle_through(g, forbidden, s, dist, branch);
    std::vector<bool> on_path(static_cast<std::size_t>(n), false);
    Cycle path{s};
    on_path[s] = true;
    if (smallest_cycle_dfs(g, forbidden, s, girth, dist, on_path, path)) return path;
  }
  return std::nullopt;  // unreachable: girth_through is exact
}

std::optional<Cycle> find_cycle(const Graph& g, std::span<const int> forbidden) {
  NodeMask mask(static_cast<std::size_t>(g.num_nodes()), false);
  for (int v : forbidden) mask[v] = true;
  return find_cycle(g, mask);
}

bool is_cycle_of(const Graph& g, const Cycle& cycle) {
  if (cycle.size() < 3) return false;
  std::vector<int> sorted = cycle;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  if (sorted.front() < 0 || sorted.back() >= g.num_nodes()) return false;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (!g.has_edge(cycle[i], cycle[(i + 1) % cycle.size()])) return false;
  }
  return true;
}

PackingOrFvs disjoint_cycles_or_fvs(const Graph& g, int k_prime) {
  if (k_prime < 1) throw ContractError("k' must be >= 1");
  NodeMask used(static_cast<std::size_t>(g.num_nodes()), false);
  CyclePacking packing;
  while (static_cast<int>(packing.cycles.size()) < k_prime) {
    auto cycle = find_cycle(g, used);
    if (!cycle) {
      FeedbackVertexSet fvs;
      for (const Cycle& c : packing.cycles) fvs.nodes.insert(fvs.nodes.end(), c.begin(), c.end());
      std::sort(fvs.nodes.begin(), fvs.nodes.end());
      return fvs;
    }
    for (int v : *cycle) used[v] = true;
    packing.cycles.push_back(std::move(*cycle));
  }
  return packing;
}

SignedIncidenceGraph::SignedIncidenceGraph(const Formula& f)
    : formula_(f),
      vars_(f.universe()),
      graph_(static_cast<int>(f.num_vars() + f.num_clauses())) {
  for (std::size_t ci = 0; ci < f.num_clauses(); ++ci) {
    int cnode = clause_node(static_cast<int>(ci));
    for (const Literal& l : f.clauses()[ci].literals()) graph_.add_edge(var_node(l.var), cnode);
  }
}

int SignedIncidenceGraph::var_node(Var v) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  if (it == vars_.end() || *it != v) return -1;
  return static_cast<int>(it - vars_.begin());
}

NodeRef SignedIncidenceGraph::ref(int node) const {
  if (is_var_node(node)) return {NodeKind::Variable, var_of(node)};
  return {NodeKind::Clause, clause_of(node)};
}

int SignedIncidenceGraph::sign(Var v, int clause_index) const {
  const Literal* l = formula_.clauses()[clause_index].find(v);
  if (l == nullptr) return 0;
  return l->positive ? 1 : -1;
}

VarSet SignedIncidenceGraph::cycle_vars(const Cycle& cycle) const {
  VarSet out;
  for (int node : cycle) {
    if (is_var_node(node)) out.push_back(var_of(node));
  }
  return make_varset(std::move(out));
}

std::vector<int> SignedIncidenceGraph::cycle_clauses(const Cycle& cycle) const {
  std::vector<int> out;
  for (int node : cycle) {
    if (!is_var_node(node)) out.push_back(clause_of(node));
  }
  return out;
}

SlitGraph::SlitGraph(const Formula& f)
    : vars_(f.universe()), graph_(static_cast<int>(2 * f.num_vars() + f.num_clauses())) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    graph_.add_edge(static_cast<int>(2 * i), static_cast<int>(2 * i + 1));
  }
  for (std::size_t ci = 0; ci < f.num_clauses(); ++ci) {
    for (const Literal& l : f.clauses()[ci].literals()) {
      graph_.add_edge(literal_node(l), clause_node(static_cast<int>(ci)));
    }
  }
}

int SlitGraph::literal_node(Literal lit) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), lit.var);
  if (it == vars_.end() || *it != lit.var) return -1;
  return 2 * static_cast<int>(it - vars_.begin()) + (lit.positive ? 0 : 1);
}

SignedIncidenceGraph build_incidence(const Formula& f) { return SignedIncidenceGraph(f); }

SlitGraph build_slit(const Formula& f) { return SlitGraph(f); }

bool slit_residual_acyclic(const Formula& f, const Assignment& tau) {
  return slit_residual_acyclic(build_slit(f), f, tau);
}

bool slit_residual_acyclic(const SlitGraph& slit, const Formula& f, const Assignment& tau) {
  const Graph& g = slit.graph();
  NodeMask removed(static_cast<std::size_t>(g.num_nodes()), false);
  for (const auto& [v, value] : tau) {
    if (!f.in_universe(v)) {
      throw ContractError("assignment mentions variable " + std::to_string(v) +
                          " outside the universe");
    }
    int node = slit.literal_node({v, value});
    removed[node] = true;
    for (int w : g.neighbors(node)) removed[w] = true;
  }
  return is_acyclic(g, removed);
}

}  // namespace forestbd
