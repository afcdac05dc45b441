#pragma once

// Truss decomposition by iterative edge peeling, and the product-side
// decomposition for C = A (x) B under the hypothesis that every edge of B
// participates in at most one triangle. Edges in no triangle carry trussness
// 2; T^(k) = { e : trussness(e) >= k } for k >= 3.

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "krontri/factor_gen.hpp"
#include "krontri/graph.hpp"
#include "krontri/tri_undirected.hpp"

namespace krontri {

struct TrussDecomposition {
  // Keyed by (u,v) with u < v; value is the maximum k with the edge in a
  // k-truss (2 when the edge is in no triangle).
  std::map<std::pair<Index, Index>, Index> trussness;

  Index max_trussness() const {
    Index m = 2;
    for (const auto& [e, k] : trussness) m = std::max(m, k);
    return m;
  }

  std::vector<std::pair<Index, Index>> truss_set(Index kappa) const {
    std::vector<std::pair<Index, Index>> out;
    for (const auto& [e, k] : trussness)
      if (k >= kappa) out.push_back(e);
    return out;
  }

  std::size_t truss_size(Index kappa) const { return truss_set(kappa).size(); }
};

// Peeling with incremental count maintenance: removing an edge decrements the
// counts of the companion edges of every triangle through it. Produces the
// same fixpoint as recomputing all counts from scratch each phase.
inline TrussDecomposition truss_decompose(const Graph& g) {
  if (g.is_directed()) throw precondition_error("truss_decompose: undirected input required");
  if (g.has_loops()) throw precondition_error("truss_decompose: loop-free input required");

  const Index n = g.size();
  std::vector<std::set<Index>> adj(n + 1);
  g.adjacency().for_each([&](Index i, Index j, Value) { adj[i].insert(j); });

  std::map<std::pair<Index, Index>, Value> count;
  {
    const SparseMatrix delta = triangle_edge_counts(g);
    for (Index u = 1; u <= n; ++u)
      for (Index v : adj[u])
        if (u < v) count[{u, v}] = delta.at(u, v);
  }

  TrussDecomposition result;
  for (const auto& [e, c] : count) result.trussness[e] = 2;

  auto key = [](Index u, Index v) {
    return u < v ? std::pair<Index, Index>(u, v) : std::pair<Index, Index>(v, u);
  };

  Index kappa = 3;
  std::size_t alive = count.size();
  while (alive > 0) {
    const Value need = kappa - 2;
    std::vector<std::pair<Index, Index>> queue;
    for (const auto& [e, c] : count)
      if (c < need) queue.push_back(e);
    while (!queue.empty()) {
      auto [u, v] = queue.back();
      queue.pop_back();
      auto it = count.find({u, v});
      if (it == count.end()) continue;
      count.erase(it);
      --alive;
      adj[u].erase(v);
      adj[v].erase(u);
      const auto& small = adj[u].size() <= adj[v].size() ? adj[u] : adj[v];
      const auto& large = adj[u].size() <= adj[v].size() ? adj[v] : adj[u];
      for (Index w : small) {
        if (!large.count(w)) continue;
        for (auto e : {key(u, w), key(v, w)}) {
          auto ce = count.find(e);
          if (ce == count.end()) continue;
          if (--ce->second < need) queue.push_back(e);
        }
      }
    }
    for (const auto& [e, c] : count) result.trussness[e] = kappa;
    ++kappa;
  }
  return result;
}

// Connected components of the subgraph formed by T^(kappa), as edge groups.
// Peeling itself never separates components; this is the post-processing
// view for callers that want each k-truss as a one-component subgraph.
inline std::vector<std::vector<std::pair<Index, Index>>> truss_components(
    const TrussDecomposition& t, Index kappa) {
  const auto edges = t.truss_set(kappa);
  std::map<Index, std::vector<Index>> adj;
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::map<Index, Index> component;
  Index next_component = 0;
  for (const auto& [start, nbrs] : adj) {
    if (component.count(start)) continue;
    const Index id = next_component++;
    std::vector<Index> stack = {start};
    component[start] = id;
    while (!stack.empty()) {
      const Index u = stack.back();
      stack.pop_back();
      for (Index v : adj[u])
        if (!component.count(v)) {
          component[v] = id;
          stack.push_back(v);
        }
    }
  }
  std::vector<std::vector<std::pair<Index, Index>>> groups(next_component);
  for (auto e : edges) groups[component[e.first]].push_back(e);
  return groups;
}

// Pointwise truss decomposition of C = A (x) B. Requires hollow undirected
// factors and Delta_B <= 1; then (p,q) is in T_C^(k) iff (i,j) is in T_A^(k)
// and (k,l) is in T_B^(3).
class ProductTruss {
 public:
  ProductTruss(const Graph& a, const Graph& b) : nb_(b.size()) {
    if (a.is_directed() || b.is_directed())
      throw precondition_error("product_truss: undirected factors required");
    if (a.has_loops() || b.has_loops())
      throw precondition_error("product_truss: loop-free factors required");
    const SparseMatrix delta_b = triangle_edge_counts(b);
    delta_b.for_each([](Index k, Index l, Value c) {
      if (c > 1)
        throw precondition_error("product_truss: edge (" + std::to_string(k) + "," +
                                 std::to_string(l) + ") of B participates in " + std::to_string(c) +
                                 " triangles (at most 1 allowed)");
    });
    truss_a_ = truss_decompose(a);
    truss_b_ = truss_decompose(b);
    adj_a_ = a.adjacency();
    adj_b_ = b.adjacency();
  }

  Index trussness(Index p, Index q) const {
    const auto [i, k] = idx_split(p, nb_);
    const auto [j, l] = idx_split(q, nb_);
    if (adj_a_.at(i, j) == 0 || adj_b_.at(k, l) == 0)
      throw precondition_error("product_truss: (" + std::to_string(p) + "," + std::to_string(q) +
                               ") is not an edge of the product");
    if (edge_trussness(truss_b_, k, l) < 3) return 2;
    return edge_trussness(truss_a_, i, j);
  }

  const TrussDecomposition& factor_a() const { return truss_a_; }
  const TrussDecomposition& factor_b() const { return truss_b_; }

 private:
  static Index edge_trussness(const TrussDecomposition& t, Index u, Index v) {
    auto it = t.trussness.find(u < v ? std::pair<Index, Index>(u, v)
                                     : std::pair<Index, Index>(v, u));
    if (it == t.trussness.end()) throw internal_error("product_truss: missing factor edge");
    return it->second;
  }

  Index nb_;
  TrussDecomposition truss_a_, truss_b_;
  SparseMatrix adj_a_, adj_b_;
};

inline ProductTruss product_truss(const Graph& a, const Graph& b) { return ProductTruss(a, b); }

struct CounterexampleReport {
  std::map<Value, std::size_t> delta_histogram;  // triangle count -> undirected edges
  std::size_t truss3_size = 0;
  std::size_t truss4_size = 0;
  std::size_t truss5_size = 0;
  Wide triangle_total = 0;
};

// The hub-cycle squared: its per-edge triangle counts follow the Kronecker
// product formula, yet its truss decomposition does not factor, which is why
// the product truss theorem needs the Delta_B <= 1 hypothesis.
inline CounterexampleReport verify_counterexample() {
  const Graph a = make_hub_cycle();
  const Graph c = Graph::undirected(kron_materialize(a.adjacency(), a.adjacency()));
  const SparseMatrix delta = triangle_edge_counts(c);
  CounterexampleReport report;
  c.adjacency().for_each([&](Index u, Index v, Value) {
    if (u < v) report.delta_histogram[delta.at(u, v)] += 1;
  });
  const TrussDecomposition t = truss_decompose(c);
  report.truss3_size = t.truss_size(3);
  report.truss4_size = t.truss_size(4);
  report.truss5_size = t.truss_size(5);
  report.triangle_total = triangle_total(c);
  return report;
}

}  // namespace krontri
