#pragma once

// Brute-force ground truth for every statistic in the library, used by tests
// and the `validate` command. Everything here works on dense boolean
// adjacency copies with plain triple/pair loops and shares no computation
// with the formula paths.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "krontri/graph.hpp"
#include "krontri/tri_directed.hpp"
#include "krontri/tri_labeled.hpp"
#include "krontri/truss.hpp"

namespace krontri {

inline constexpr Index oracle_default_cap = 2000;

namespace oracle_detail {

inline void check_cap(const Graph& g, Index cap, const char* who) {
  if (g.size() > cap)
    throw precondition_error(std::string(who) + ": graph exceeds the oracle size cap");
}

// Dense hollow symmetric reachability; entry [i][j] for 1-based i, j.
inline std::vector<std::vector<char>> dense_undirected(const Graph& g) {
  std::vector<std::vector<char>> m(g.size() + 1, std::vector<char>(g.size() + 1, 0));
  g.adjacency().for_each([&](Index i, Index j, Value) {
    if (i != j) {
      m[i][j] = 1;
      m[j][i] = 1;
    }
  });
  return m;
}

inline std::vector<std::vector<char>> dense_directed(const Graph& g) {
  std::vector<std::vector<char>> m(g.size() + 1, std::vector<char>(g.size() + 1, 0));
  g.adjacency().for_each([&](Index i, Index j, Value) {
    if (i != j) m[i][j] = 1;
  });
  return m;
}

}  // namespace oracle_detail

struct BruteTriangleStats {
  std::vector<Value> per_vertex;
  std::map<std::pair<Index, Index>, Value> per_edge;  // (u,v) with u < v
  Wide total = 0;
};

inline BruteTriangleStats brute_triangles(const Graph& g, Index cap = oracle_default_cap) {
  oracle_detail::check_cap(g, cap, "brute_triangles");
  const Index n = g.size();
  const auto adj = oracle_detail::dense_undirected(g);
  BruteTriangleStats stats;
  stats.per_vertex.assign(n, 0);
  for (Index u = 1; u <= n; ++u)
    for (Index v = u + 1; v <= n; ++v) {
      if (!adj[u][v]) continue;
      for (Index w = v + 1; w <= n; ++w) {
        if (!adj[u][w] || !adj[v][w]) continue;
        ++stats.total;
        stats.per_vertex[u - 1] += 1;
        stats.per_vertex[v - 1] += 1;
        stats.per_vertex[w - 1] += 1;
        stats.per_edge[{u, v}] += 1;
        stats.per_edge[{u, w}] += 1;
        stats.per_edge[{v, w}] += 1;
      }
    }
  return stats;
}

struct BruteDirectedCensus {
  std::map<std::string, std::vector<Value>> vertex;                       // 15 canonical keys
  std::map<std::string, std::map<std::pair<Index, Index>, Value>> edge;   // 15 canonical keys
};

namespace oracle_detail {

// Role of the edge {center, other} as read by the type tables: 's' when the
// lone arc enters the center, 't' when it leaves, 'u' when reciprocated.
inline char center_role(const std::vector<std::vector<char>>& out, Index center, Index other) {
  const bool fwd = out[center][other], rev = out[other][center];
  if (fwd && rev) return 'u';
  return rev ? 's' : 't';
}

inline char pair_orientation(const std::vector<std::vector<char>>& out, Index from, Index to) {
  const bool fwd = out[from][to], rev = out[to][from];
  if (fwd && rev) return 'o';
  return fwd ? '+' : '-';
}

inline char flip_orientation(char c) { return c == '+' ? '-' : (c == '-' ? '+' : 'o'); }

// Swapping the listed order of the two opposite vertices swaps the role
// letters and reverses the remaining edge; the canonical form sorts the role
// letters (s < u < t) and prefers '+' on ties.
inline std::string canonical_vertex_walk(char c1, char c2, char c3) {
  auto rank = [](char c) { return c == 's' ? 0 : (c == 'u' ? 1 : 2); };
  if (rank(c1) > rank(c2)) {
    std::swap(c1, c2);
    c3 = flip_orientation(c3);
  }
  if (c1 == c2 && c3 == '-') c3 = '+';
  return std::string{c1, c2, c3};
}

}  // namespace oracle_detail

inline BruteDirectedCensus brute_directed_census(const Graph& g, Index cap = oracle_default_cap) {
  oracle_detail::check_cap(g, cap, "brute_directed_census");
  if (g.has_loops())
    throw precondition_error("brute_directed_census: loop-free input required");
  const Index n = g.size();
  const auto out = oracle_detail::dense_directed(g);
  const auto und = oracle_detail::dense_undirected(g);

  BruteDirectedCensus census;
  for (const auto& t : dir_vertex_types()) census.vertex[t].assign(n, 0);
  for (const auto& t : dir_edge_types()) census.edge[t];

  auto classify_vertex = [&](Index center, Index a, Index b) {
    // Listed order (a,b): first char is the role at the edge to b, second the
    // role at the edge to a, last the orientation a -> b.
    const char c1 = oracle_detail::center_role(out, center, b);
    const char c2 = oracle_detail::center_role(out, center, a);
    const char c3 = oracle_detail::pair_orientation(out, a, b);
    census.vertex[oracle_detail::canonical_vertex_walk(c1, c2, c3)][center - 1] += 1;
  };

  auto classify_edge_entry = [&](Index i, Index j, Index y) {
    if (!out[i][j]) return;
    const char central = out[j][i] ? 'o' : '+';
    const char c2 = oracle_detail::pair_orientation(out, y, j);
    const char c3 = oracle_detail::pair_orientation(out, i, y);
    const std::string code{central, c2, c3};
    auto it = census.edge.find(code);
    // Raw reciprocal codes outside the canonical set are the mirror image of
    // a canonical code at the transposed entry; that entry records them.
    if (it != census.edge.end()) it->second[{i, j}] += 1;
  };

  for (Index u = 1; u <= n; ++u)
    for (Index v = u + 1; v <= n; ++v) {
      if (!und[u][v]) continue;
      for (Index w = v + 1; w <= n; ++w) {
        if (!und[u][w] || !und[v][w]) continue;
        classify_vertex(u, v, w);
        classify_vertex(v, u, w);
        classify_vertex(w, u, v);
        classify_edge_entry(u, v, w);
        classify_edge_entry(v, u, w);
        classify_edge_entry(u, w, v);
        classify_edge_entry(w, u, v);
        classify_edge_entry(v, w, u);
        classify_edge_entry(w, v, u);
      }
    }
  return census;
}

struct BruteLabeledCensus {
  std::map<LabeledVertexType, std::vector<Value>> vertex;
  std::map<LabeledEdgeType, std::map<std::pair<Index, Index>, Value>> edge;
};

inline BruteLabeledCensus brute_labeled_census(const Graph& g, Index cap = oracle_default_cap) {
  oracle_detail::check_cap(g, cap, "brute_labeled_census");
  if (g.is_directed() || g.has_loops() || !g.is_labeled())
    throw precondition_error("brute_labeled_census: labeled, undirected, loop-free input required");
  const Index n = g.size();
  const auto adj = oracle_detail::dense_undirected(g);
  const auto& f = g.labels();

  BruteLabeledCensus census;
  for (const auto& t : all_labeled_vertex_types(g.label_count())) census.vertex[t].assign(n, 0);
  for (const auto& t : all_labeled_edge_types(g.label_count())) census.edge[t];

  auto record = [&](Index center, Index a, Index b) {
    census.vertex[make_labeled_vertex_type(f[center - 1], f[a - 1], f[b - 1])][center - 1] += 1;
    census.edge[LabeledEdgeType{f[a - 1], f[center - 1], f[b - 1]}][{center, a}] += 1;
    census.edge[LabeledEdgeType{f[center - 1], f[a - 1], f[b - 1]}][{a, center}] += 1;
  };

  for (Index u = 1; u <= n; ++u)
    for (Index v = u + 1; v <= n; ++v) {
      if (!adj[u][v]) continue;
      for (Index w = v + 1; w <= n; ++w) {
        if (!adj[u][w] || !adj[v][w]) continue;
        record(u, v, w);
        record(v, w, u);
        record(w, u, v);
      }
    }
  return census;
}

// Peeling with every per-edge count recomputed from scratch each phase and
// all under-threshold edges removed at once. Reference fixpoint for the
// incremental implementation in truss_decompose.
inline TrussDecomposition brute_truss(const Graph& g, Index cap = oracle_default_cap) {
  oracle_detail::check_cap(g, cap, "brute_truss");
  if (g.is_directed() || g.has_loops())
    throw precondition_error("brute_truss: undirected, loop-free input required");
  const Index n = g.size();
  auto adj = oracle_detail::dense_undirected(g);

  TrussDecomposition result;
  std::size_t alive = 0;
  for (Index u = 1; u <= n; ++u)
    for (Index v = u + 1; v <= n; ++v)
      if (adj[u][v]) {
        result.trussness[{u, v}] = 2;
        ++alive;
      }

  Index kappa = 3;
  while (alive > 0) {
    for (;;) {
      std::vector<std::pair<Index, Index>> remove;
      for (Index u = 1; u <= n; ++u)
        for (Index v = u + 1; v <= n; ++v) {
          if (!adj[u][v]) continue;
          Value count = 0;
          for (Index w = 1; w <= n; ++w)
            if (adj[u][w] && adj[v][w]) ++count;
          if (count < kappa - 2) remove.emplace_back(u, v);
        }
      if (remove.empty()) break;
      for (auto [u, v] : remove) {
        adj[u][v] = 0;
        adj[v][u] = 0;
        --alive;
      }
    }
    for (Index u = 1; u <= n; ++u)
      for (Index v = u + 1; v <= n; ++v)
        if (adj[u][v]) result.trussness[{u, v}] = kappa;
    ++kappa;
  }
  return result;
}

}  // namespace krontri
