#pragma once

// Factor graph construction: canonical small examples, seeded random graphs,
// and the two strategies for producing factors whose edges sit in at most one
// triangle (the hypothesis of the product truss theorem).

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "krontri/graph.hpp"
#include "krontri/rng.hpp"

namespace krontri {

// K_n (hollow clique) or J_n (clique plus a loop at every vertex).
inline Graph make_clique(Index n, bool with_loops) {
  if (n < 1) throw precondition_error("make_clique: n must be >= 1");
  std::vector<Entry> e;
  for (Index i = 1; i <= n; ++i)
    for (Index j = 1; j <= n; ++j)
      if (i != j || with_loops) e.push_back({i, j, 1});
  return Graph::undirected(SparseMatrix::from_entries(n, std::move(e)));
}

// The 4-cycle 2-3-4-5-2 with hub vertex 1 attached to every cycle vertex:
// 5 vertices, 8 edges, 4 triangles. Hub edges sit in 2 triangles each, cycle
// edges in 1.
inline Graph make_hub_cycle() {
  const std::pair<Index, Index> undirected_edges[] = {
      {1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {3, 4}, {4, 5}, {2, 5}};
  std::vector<Entry> e;
  for (auto [u, v] : undirected_edges) {
    e.push_back({u, v, 1});
    e.push_back({v, u, 1});
  }
  return Graph::undirected(SparseMatrix::from_entries(5, std::move(e)));
}

// Seeded Erdos-Renyi graph. Pair iteration order is fixed (row-major), so a
// seed pins the edge set exactly.
inline Graph gen_er(Index n, double edge_prob, RngSeed seed, bool directed, bool loops) {
  if (n < 1) throw precondition_error("gen_er: n must be >= 1");
  if (edge_prob < 0.0 || edge_prob > 1.0)
    throw precondition_error("gen_er: edge probability must be in [0,1]");
  SplitMix64 rng(seed);
  std::vector<Entry> e;
  if (directed) {
    for (Index i = 1; i <= n; ++i)
      for (Index j = 1; j <= n; ++j) {
        if (i == j && !loops) continue;
        if (rng.next_bernoulli(edge_prob)) e.push_back({i, j, 1});
      }
    return Graph::directed(SparseMatrix::from_entries(n, std::move(e)));
  }
  for (Index i = 1; i <= n; ++i) {
    if (loops && rng.next_bernoulli(edge_prob)) e.push_back({i, i, 1});
    for (Index j = i + 1; j <= n; ++j)
      if (rng.next_bernoulli(edge_prob)) {
        e.push_back({i, j, 1});
        e.push_back({j, i, 1});
      }
  }
  return Graph::undirected(SparseMatrix::from_entries(n, std::move(e)));
}

// Seeded uniform labels in 1..num_labels.
inline std::vector<Index> gen_labels(Index n, Index num_labels, RngSeed seed) {
  if (num_labels < 1) throw precondition_error("gen_labels: need at least one label");
  SplitMix64 rng(seed);
  std::vector<Index> labels(n);
  for (Index i = 0; i < n; ++i) labels[i] = 1 + rng.next_below(num_labels);
  return labels;
}

namespace detail {

inline std::pair<Index, Index> edge_key(Index u, Index v) {
  return u < v ? std::pair<Index, Index>(u, v) : std::pair<Index, Index>(v, u);
}

inline Graph graph_from_edge_set(Index n, const std::set<std::pair<Index, Index>>& edges) {
  std::vector<Entry> e;
  e.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    e.push_back({u, v, 1});
    e.push_back({v, u, 1});
  }
  return Graph::undirected(SparseMatrix::from_entries(n, std::move(e)));
}

inline bool connected(Index n, const std::vector<std::set<Index>>& adj) {
  if (n == 0) return true;
  std::vector<char> seen(n + 1, 0);
  std::queue<Index> q;
  q.push(1);
  seen[1] = 1;
  Index count = 1;
  while (!q.empty()) {
    Index u = q.front();
    q.pop();
    for (Index v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        q.push(v);
      }
  }
  return count == n;
}

}  // namespace detail

// Preferential-attachment style generator in which every edge participates in
// at most one triangle. Start from a single edge; each new node u picks an
// existing edge (i,j) uniformly, attaches to a uniform endpoint v, and closes
// the triangle on (i,j) only when (i,j) is not already in one.
inline Graph gen_trianglecap_pa(Index n_target, RngSeed seed) {
  if (n_target < 2) throw precondition_error("gen_trianglecap_pa: need at least 2 vertices");
  SplitMix64 rng(seed);
  std::vector<std::pair<Index, Index>> edges = {{1, 2}};
  std::map<std::pair<Index, Index>, Index> tri_count = {{{1, 2}, 0}};
  for (Index u = 3; u <= n_target; ++u) {
    auto [i, j] = edges[rng.next_below(edges.size())];
    const Index v = rng.next_below(2) == 0 ? i : j;
    edges.push_back(detail::edge_key(u, v));
    tri_count[detail::edge_key(u, v)] = 0;
    if (tri_count[detail::edge_key(i, j)] == 0) {
      const Index w = v == i ? j : i;
      edges.push_back(detail::edge_key(u, w));
      tri_count[detail::edge_key(u, w)] = 1;
      tri_count[detail::edge_key(i, j)] = 1;
      tri_count[detail::edge_key(u, v)] = 1;
    }
  }
  std::set<std::pair<Index, Index>> edge_set(edges.begin(), edges.end());
  return detail::graph_from_edge_set(n_target, edge_set);
}

// Edge deletion until every edge participates in at most one triangle, never
// touching a breadth-first spanning tree so the graph stays connected.
// Preferred victims are non-tree edges that themselves carry >= 2 triangles;
// when only tree edges are over the cap, a non-tree edge of one of their
// triangles is removed instead (every triangle has at most two tree edges, so
// such an edge exists and each deletion destroys at least one triangle).
inline Graph reduce_to_trianglecap(const Graph& g, RngSeed seed) {
  if (g.is_directed()) throw precondition_error("reduce_to_trianglecap: undirected input required");
  if (g.has_loops()) throw precondition_error("reduce_to_trianglecap: loop-free input required");
  const Index n = g.size();
  std::vector<std::set<Index>> adj(n + 1);
  g.adjacency().for_each([&](Index i, Index j, Value) { adj[i].insert(j); });
  if (!detail::connected(n, adj)) throw precondition_error("reduce_to_trianglecap: input must be connected");

  std::set<std::pair<Index, Index>> tree;
  {
    std::vector<char> seen(n + 1, 0);
    std::queue<Index> q;
    q.push(1);
    seen[1] = 1;
    while (!q.empty()) {
      Index u = q.front();
      q.pop();
      for (Index v : adj[u])
        if (!seen[v]) {
          seen[v] = 1;
          tree.insert(detail::edge_key(u, v));
          q.push(v);
        }
    }
  }

  std::map<std::pair<Index, Index>, Index> tri;
  std::set<std::pair<Index, Index>> edges;
  for (Index u = 1; u <= n; ++u)
    for (Index v : adj[u])
      if (u < v) edges.insert({u, v});
  auto common_count = [&](Index u, Index v) {
    Index c = 0;
    const auto& small = adj[u].size() <= adj[v].size() ? adj[u] : adj[v];
    const auto& large = adj[u].size() <= adj[v].size() ? adj[v] : adj[u];
    for (Index w : small)
      if (large.count(w)) ++c;
    return c;
  };
  for (auto [u, v] : edges) tri[{u, v}] = common_count(u, v);

  SplitMix64 rng(seed);
  for (;;) {
    std::vector<std::pair<Index, Index>> over;
    for (auto& [e, c] : tri)
      if (c >= 2) over.push_back(e);
    if (over.empty()) break;

    std::vector<std::pair<Index, Index>> candidates;
    for (auto& e : over)
      if (!tree.count(e)) candidates.push_back(e);
    if (candidates.empty()) {
      // Only tree edges are over the cap; peel a non-tree edge off one of
      // their triangles.
      std::set<std::pair<Index, Index>> cset;
      for (auto [u, v] : over)
        for (Index w : adj[u])
          if (adj[v].count(w)) {
            for (auto e : {detail::edge_key(u, w), detail::edge_key(v, w)})
              if (!tree.count(e)) cset.insert(e);
          }
      candidates.assign(cset.begin(), cset.end());
      if (candidates.empty())
        throw internal_error("reduce_to_trianglecap: no deletable edge");
    }
    auto [u, v] = candidates[rng.next_below(candidates.size())];
    for (Index w : adj[u])
      if (adj[v].count(w)) {
        --tri[detail::edge_key(u, w)];
        --tri[detail::edge_key(v, w)];
      }
    adj[u].erase(v);
    adj[v].erase(u);
    tri.erase({u, v});
    edges.erase({u, v});
  }
  return detail::graph_from_edge_set(n, edges);
}

}  // namespace krontri
