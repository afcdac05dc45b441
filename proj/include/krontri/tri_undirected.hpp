#pragma once

// Exact triangle participation at vertices and edges of one undirected graph.
// The production path is degree-ordered wedge enumeration (each triangle
// found once, then attributed to its 3 vertices and 3 edges). A second,
// matrix-formula path computes t = 1/2 diag(H^3) and Delta = H o H^2 on the
// hollow adjacency H; the two must agree and are cross-checked in tests.

#include <algorithm>
#include <numeric>
#include <vector>

#include "krontri/graph.hpp"
#include "krontri/sparse.hpp"

namespace krontri {

struct TriangleStats {
  std::vector<Value> per_vertex;  // t
  SparseMatrix per_edge;          // Delta, stored only on edges in >= 1 triangle
  Wide total = 0;                 // tau
};

struct Rational {
  Value num = 0;
  Value den = 1;
};

inline bool operator==(const Rational& a, const Rational& b) {
  return a.num == b.num && a.den == b.den;
}

namespace detail {

inline void require_undirected(const Graph& g, const char* who) {
  if (g.is_directed())
    throw precondition_error(std::string(who) + ": directed input (use the directed census)");
}

}  // namespace detail

// Single wedge-enumeration pass producing vertex counts, edge counts, and the
// total. Self loops are stripped first; they never participate in triangles.
inline TriangleStats triangle_stats(const Graph& g) {
  detail::require_undirected(g, "triangle_stats");
  auto [hollow, loops] = strip_loops(g.adjacency());
  const Index n = hollow.size();

  // rank = position under (degree, id); forward neighbors are higher-rank.
  std::vector<Index> deg(n + 1, 0);
  for (Index i = 1; i <= n; ++i) deg[i] = hollow.row_cols(i).size();
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), 1);
  std::sort(order.begin(), order.end(),
            [&](Index a, Index b) { return deg[a] != deg[b] ? deg[a] < deg[b] : a < b; });
  std::vector<Index> rank(n + 1, 0);
  for (Index r = 0; r < n; ++r) rank[order[r]] = r;

  std::vector<std::vector<Index>> fwd(n + 1);
  for (Index i = 1; i <= n; ++i)
    for (Index j : hollow.row_cols(i))
      if (rank[j] > rank[i]) fwd[i].push_back(j);

  std::vector<Value> t(n, 0);
  // Per-edge counts parallel to the hollow CSR entry order.
  std::vector<Value> edge_count(hollow.nnz(), 0);
  std::vector<std::size_t> row_offset(n + 1, 0);
  {
    std::size_t running = 0;
    for (Index i = 1; i <= n; ++i) {
      row_offset[i] = running;
      running += hollow.row_cols(i).size();
    }
  }
  auto bump_edge = [&](Index u, Index v) {
    auto cols = hollow.row_cols(u);
    auto it = std::lower_bound(cols.begin(), cols.end(), v);
    edge_count[row_offset[u] + static_cast<std::size_t>(it - cols.begin())] += 1;
  };

  std::vector<char> mark(n + 1, 0);
  Wide total = 0;
  for (Index u = 1; u <= n; ++u) {
    for (Index v : fwd[u]) mark[v] = 1;
    for (Index v : fwd[u]) {
      for (Index w : fwd[v]) {
        if (!mark[w]) continue;
        ++total;
        t[u - 1] += 1;
        t[v - 1] += 1;
        t[w - 1] += 1;
        bump_edge(u, v);
        bump_edge(v, u);
        bump_edge(v, w);
        bump_edge(w, v);
        bump_edge(u, w);
        bump_edge(w, u);
      }
    }
    for (Index v : fwd[u]) mark[v] = 0;
  }

  std::vector<Entry> delta_entries;
  {
    std::size_t k = 0;
    for (Index i = 1; i <= n; ++i)
      for (Index j : hollow.row_cols(i)) {
        if (edge_count[k] > 0) delta_entries.push_back({i, j, edge_count[k]});
        ++k;
      }
  }

  TriangleStats stats;
  stats.per_vertex = std::move(t);
  stats.per_edge = SparseMatrix::from_entries(n, std::move(delta_entries));
  stats.total = total;
  return stats;
}

inline std::vector<Value> triangle_vertex_counts(const Graph& g) {
  return triangle_stats(g).per_vertex;
}

inline SparseMatrix triangle_edge_counts(const Graph& g) { return triangle_stats(g).per_edge; }

inline Wide triangle_total(const Graph& g) {
  detail::require_undirected(g, "triangle_total");
  const auto t = triangle_stats(g).per_vertex;
  Wide sum = 0;
  for (Value v : t) sum += v;
  if (sum % 3 != 0) throw internal_error("triangle_total: vertex counts not divisible by 3");
  return sum / 3;
}

// Matrix-formula route, kept independent of the wedge pass above.
inline std::vector<Value> triangle_vertex_counts_matrix(const Graph& g) {
  detail::require_undirected(g, "triangle_vertex_counts_matrix");
  auto [h, loops] = strip_loops(g.adjacency());
  const auto cube_diag = diag_vec(mat_mul(mat_mul(h, h), h));
  std::vector<Value> t(h.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (cube_diag[i] % 2 != 0) throw internal_error("diag(H^3) must be even");
    t[i] = cube_diag[i] / 2;
  }
  return t;
}

inline SparseMatrix triangle_edge_counts_matrix(const Graph& g) {
  detail::require_undirected(g, "triangle_edge_counts_matrix");
  auto [h, loops] = strip_loops(g.adjacency());
  return hadamard(h, mat_mul(h, h));
}

// Local clustering coefficient c_i = t_i / C(d_i, 2) as an exact reduced
// rational; 0/1 when the degree is below 2.
inline std::vector<Rational> clustering_coefficients(const Graph& g) {
  detail::require_undirected(g, "clustering_coefficients");
  if (g.has_loops()) throw precondition_error("clustering_coefficients: loop-free input required");
  const auto t = triangle_stats(g).per_vertex;
  std::vector<Rational> c(g.size());
  for (Index i = 1; i <= g.size(); ++i) {
    const Value d = g.adjacency().row_cols(i).size();
    if (d < 2 || t[i - 1] == 0) {
      c[i - 1] = {0, 1};
      continue;
    }
    const Value pairs = d * (d - 1) / 2;
    const Value gcd = std::gcd(t[i - 1], pairs);
    c[i - 1] = {t[i - 1] / gcd, pairs / gcd};
  }
  return c;
}

}  // namespace krontri
