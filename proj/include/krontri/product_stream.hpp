#pragma once

// Communication-free access to C = A (x) B: edge streaming over row blocks of
// A, neighborhood and egonet extraction at single product vertices, and
// O(factor-lookup) ground-truth queries. C itself is never materialized; a
// handle carries the factors plus precomputed factor statistics.

#include <algorithm>
#include <climits>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "krontri/graph.hpp"
#include "krontri/kron_stats.hpp"
#include "krontri/tri_directed.hpp"
#include "krontri/tri_labeled.hpp"

namespace krontri {

struct BlockRange {
  Index lo = 1;  // inclusive, rows of A
  Index hi = 1;
};

class ProductHandle {
 public:
  ProductHandle(Graph a, Graph b) : a_(std::move(a)), b_(std::move(b)) {
    if (b_.is_directed())
      throw precondition_error("product handle: right factor must be undirected");
    if (b_.is_labeled())
      throw precondition_error("product handle: right factor must be unlabeled");
    if (static_cast<Wide>(a_.size()) * b_.size() > static_cast<Wide>(INT64_MAX))
      throw precondition_error("product handle: product exceeds 2^63-1 vertices");

    if (a_.is_directed()) {
      if (a_.has_loops())
        throw precondition_error("product handle: directed left factor must be loop-free");
      auto parts = split_reciprocal_directed(a_);
      und_a_ = Graph::undirected(parts.undirected);
      dir_vertex_.emplace(a_, b_);
      dir_edge_.emplace(a_, b_);
      dir_deg_a_.emplace(directed_degrees(a_));
      out_a_ = row_sums(a_.adjacency());
      in_a_ = col_sums(a_.adjacency());
      deg_b_total_ = row_sums(b_.adjacency());
    } else {
      und_a_ = a_;
      if (a_.is_labeled()) {
        if (a_.has_loops())
          throw precondition_error("product handle: labeled left factor must be loop-free");
        lab_vertex_.emplace(a_, b_);
        lab_edge_.emplace(a_, b_);
      }
    }
    regime_ = derive_loop_regime(und_a_, b_);
    degrees_.emplace(und_a_, b_);
    tri_vertex_.emplace(und_a_, b_);
    tri_edge_.emplace(und_a_, b_);
  }

  const Graph& a() const { return a_; }
  const Graph& b() const { return b_; }
  // Undirected view of the left factor (A itself when already undirected).
  const Graph& a_undirected() const { return und_a_; }

  Index n_c() const { return a_.size() * b_.size(); }
  bool directed() const { return a_.is_directed(); }
  bool labeled() const { return a_.is_labeled(); }
  LoopRegime regime() const { return regime_; }

  const ProductDegrees& degrees() const { return *degrees_; }
  const ProductTriVertex& tri_vertex() const { return *tri_vertex_; }
  const ProductTriEdge& tri_edge() const { return *tri_edge_; }
  const DirectedProductVertex& directed_vertex() const { return require(dir_vertex_); }
  const DirectedProductEdge& directed_edge() const { return require(dir_edge_); }
  const LabeledProductVertex& labeled_vertex() const { return require(lab_vertex_); }
  const LabeledProductEdge& labeled_edge() const { return require(lab_edge_); }
  const DirectedDegrees& factor_directed_degrees() const { return require(dir_deg_a_); }

  void check_vertex(Index p) const {
    if (p < 1 || p > n_c()) throw precondition_error("product vertex out of range");
  }

  // Row sums used by the directed degree formulas.
  Value out_degree(Index i, Index k) const { return checked_mul(out_a_[i - 1], deg_b_total_[k - 1]); }
  Value in_degree(Index i, Index k) const { return checked_mul(in_a_[i - 1], deg_b_total_[k - 1]); }
  Value b_total_degree(Index k) const { return deg_b_total_[k - 1]; }

 private:
  template <class T>
  static const T& require(const std::optional<T>& opt) {
    if (!opt) throw precondition_error("statistic not applicable to this product");
    return *opt;
  }

  Graph a_, b_, und_a_;
  LoopRegime regime_ = LoopRegime::none;
  std::optional<ProductDegrees> degrees_;
  std::optional<ProductTriVertex> tri_vertex_;
  std::optional<ProductTriEdge> tri_edge_;
  std::optional<DirectedProductVertex> dir_vertex_;
  std::optional<DirectedProductEdge> dir_edge_;
  std::optional<LabeledProductVertex> lab_vertex_;
  std::optional<LabeledProductEdge> lab_edge_;
  std::optional<DirectedDegrees> dir_deg_a_;
  std::vector<Value> out_a_, in_a_, deg_b_total_;
};

// Emit every stored entry (p,q) of C whose A-block row lies in the range,
// exactly once, in a fixed order: A entries row-major, then B entries
// row-major within each. Canonical mode keeps only p <= q. Returns the
// number of emitted entries. Disjoint ranges can stream concurrently and
// their outputs concatenate to the full entry set.
template <class Sink>
Wide stream_edges(const ProductHandle& h, BlockRange range, Sink&& sink, bool canonical = false) {
  if (range.lo < 1 || range.hi > h.a().size() || range.lo > range.hi)
    throw precondition_error("stream_edges: invalid block range");
  const SparseMatrix& a = h.a().adjacency();
  const SparseMatrix& b = h.b().adjacency();
  const Index nb = b.size();
  Wide emitted = 0;
  for (Index i = range.lo; i <= range.hi; ++i) {
    for (Index j : a.row_cols(i)) {
      for (Index k = 1; k <= nb; ++k) {
        const Index p = idx_join(i, k, nb);
        for (Index l : b.row_cols(k)) {
          const Index q = idx_join(j, l, nb);
          if (canonical && p > q) continue;
          sink(p, q);
          ++emitted;
        }
      }
    }
  }
  return emitted;
}

// Sorted distinct neighbors of p in the (undirected view of the) product,
// excluding p itself. Size equals the pointwise degree formula.
inline std::vector<Index> neighbors(const ProductHandle& h, Index p) {
  h.check_vertex(p);
  const Index nb = h.b().size();
  const auto [i, k] = idx_split(p, nb);
  std::vector<Index> out;
  for (Index j : h.a_undirected().adjacency().row_cols(i))
    for (Index l : h.b().adjacency().row_cols(k)) {
      const Index q = idx_join(j, l, nb);
      if (q != p) out.push_back(q);
    }
  return out;  // ascending by construction: j outer, l inner
}

struct Egonet {
  Index center = 0;
  std::vector<Index> vertices;  // product ids, ascending
  Graph graph;                  // induced subgraph on `vertices`, local 1-based ids
  std::size_t edge_count = 0;   // undirected edges; equals the triangle count at center
};

inline constexpr std::size_t egonet_default_guard = 100000;

inline Egonet egonet(const ProductHandle& h, Index p, std::size_t guard = egonet_default_guard) {
  Egonet ego;
  ego.center = p;
  ego.vertices = neighbors(h, p);
  if (ego.vertices.size() > guard)
    throw precondition_error("egonet: neighborhood exceeds the size guard");
  const Index nb = h.b().size();
  std::unordered_set<Index> in_set(ego.vertices.begin(), ego.vertices.end());
  auto local = [&](Index q) {
    return static_cast<Index>(std::lower_bound(ego.vertices.begin(), ego.vertices.end(), q) -
                              ego.vertices.begin()) +
           1;
  };
  std::vector<Entry> entries;
  for (Index x : ego.vertices) {
    const auto [i, k] = idx_split(x, nb);
    for (Index j : h.a_undirected().adjacency().row_cols(i))
      for (Index l : h.b().adjacency().row_cols(k)) {
        const Index q = idx_join(j, l, nb);
        if (q <= x || q == p || !in_set.count(q)) continue;
        entries.push_back({local(x), local(q), 1});
        entries.push_back({local(q), local(x), 1});
        ++ego.edge_count;
      }
  }
  ego.graph =
      Graph::undirected(SparseMatrix::from_entries(ego.vertices.size(), std::move(entries)));
  return ego;
}

struct DirectedDegreeRecord {
  Value reciprocal = 0;
  Value directed_out = 0;
  Value directed_in = 0;
  Value out_total = 0;
  Value in_total = 0;
};

struct VertexGroundTruth {
  Index vertex = 0;
  Index a_vertex = 0;  // i(p)
  Index b_vertex = 0;  // k(p)
  std::optional<Index> label;
  Value degree = 0;  // non-loop degree in the undirected view
  Wide triangles = 0;
  std::optional<DirectedDegreeRecord> directed_degrees;
  std::vector<std::pair<std::string, Wide>> directed_types;
  std::vector<std::pair<LabeledVertexType, Wide>> labeled_types;
};

inline VertexGroundTruth vertex_ground_truth(const ProductHandle& h, Index p) {
  h.check_vertex(p);
  const auto [i, k] = idx_split(p, h.b().size());
  VertexGroundTruth r;
  r.vertex = p;
  r.a_vertex = i;
  r.b_vertex = k;
  r.degree = h.degrees().at(p);
  r.triangles = h.tri_vertex().at(p);
  if (h.directed()) {
    const auto& fd = h.factor_directed_degrees();
    DirectedDegreeRecord d;
    d.reciprocal = checked_mul(fd.reciprocal[i - 1], h.b_total_degree(k));
    d.directed_out = checked_mul(fd.directed_out[i - 1], h.b_total_degree(k));
    d.directed_in = checked_mul(fd.directed_in[i - 1], h.b_total_degree(k));
    d.out_total = h.out_degree(i, k);
    d.in_total = h.in_degree(i, k);
    r.directed_degrees = d;
    for (const auto& type : dir_vertex_types())
      r.directed_types.emplace_back(type, h.directed_vertex().at(type, p));
  }
  if (h.labeled()) {
    r.label = h.a().label_of(i);
    for (const auto& type : all_labeled_vertex_types(h.a().label_count()))
      r.labeled_types.emplace_back(type, h.labeled_vertex().at(type, p));
  }
  return r;
}

struct EdgeGroundTruth {
  Index p = 0;
  Index q = 0;
  bool present = false;  // stored entry of C (arc when directed)
  Wide triangles = 0;    // undirected-view triangle participation
  std::vector<std::pair<std::string, Wide>> directed_types;
  std::vector<std::pair<LabeledEdgeType, Wide>> labeled_types;
};

inline EdgeGroundTruth edge_ground_truth(const ProductHandle& h, Index p, Index q) {
  h.check_vertex(p);
  h.check_vertex(q);
  const Index nb = h.b().size();
  const auto [i, k] = idx_split(p, nb);
  const auto [j, l] = idx_split(q, nb);
  EdgeGroundTruth r;
  r.p = p;
  r.q = q;
  r.present = h.a().adjacency().at(i, j) != 0 && h.b().adjacency().at(k, l) != 0;
  r.triangles = h.tri_edge().at(p, q);
  if (h.directed()) {
    for (const auto& type : dir_edge_types())
      r.directed_types.emplace_back(type, h.directed_edge().at(type, p, q));
  }
  if (h.labeled()) {
    for (const auto& type : all_labeled_edge_types(h.a().label_count()))
      r.labeled_types.emplace_back(type, h.labeled_edge().at(type, p, q));
  }
  return r;
}

}  // namespace krontri
