#pragma once

// Vertex-label filters and label-typed triangle participation. A vertex type
// is (center label q1, unordered pair {q2,q3} on the opposite edge); an edge
// type is (endpoint labels q1 -> q2, opposite vertex label q3). Counting goes
// through filtered adjacency products: Pi_q A Pi_p keeps only edges from a
// p-labeled vertex to a q-labeled one.

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "krontri/graph.hpp"
#include "krontri/sparse.hpp"

namespace krontri {

struct LabeledVertexType {
  Index center;    // q1
  Index other_lo;  // min(q2,q3)
  Index other_hi;  // max(q2,q3)
};

inline LabeledVertexType make_labeled_vertex_type(Index q1, Index q2, Index q3) {
  return q2 <= q3 ? LabeledVertexType{q1, q2, q3} : LabeledVertexType{q1, q3, q2};
}

inline bool operator<(const LabeledVertexType& a, const LabeledVertexType& b) {
  return std::tie(a.center, a.other_lo, a.other_hi) < std::tie(b.center, b.other_lo, b.other_hi);
}

// Nonzero entries of Delta sit at (i,j) with f(i)=q2, f(j)=q1; the third
// triangle vertex carries q3.
struct LabeledEdgeType {
  Index q1;
  Index q2;
  Index q3;
};

inline bool operator<(const LabeledEdgeType& a, const LabeledEdgeType& b) {
  return std::tie(a.q1, a.q2, a.q3) < std::tie(b.q1, b.q2, b.q3);
}

// Pi_{G,q}: diagonal projection onto the vertices labeled q.
inline SparseMatrix label_filter(const Graph& g, Index q) {
  if (!g.is_labeled()) throw precondition_error("label_filter: graph has no labels");
  std::vector<Entry> e;
  const auto& labels = g.labels();
  for (Index i = 1; i <= g.size(); ++i)
    if (labels[i - 1] == q) e.push_back({i, i, 1});
  return SparseMatrix::from_entries(g.size(), std::move(e));
}

namespace detail {

inline void check_labeled_input(const Graph& g, const char* who) {
  if (g.is_directed()) throw precondition_error(std::string(who) + ": undirected input required");
  if (g.has_loops()) throw precondition_error(std::string(who) + ": loop-free input required");
  if (!g.is_labeled()) throw precondition_error(std::string(who) + ": labeled input required");
}

inline void check_label_range(const Graph& g, std::initializer_list<Index> qs, const char* who) {
  for (Index q : qs)
    if (q < 1 || q > g.label_count())
      throw precondition_error(std::string(who) + ": label out of range");
}

}  // namespace detail

// t[(q1,{q2,q3})](i) = triangles at i whose center is labeled q1 and whose
// opposite vertices carry {q2,q3}. The walk count double-counts exactly when
// q2 = q3, hence the halving in that case.
inline std::vector<Value> labeled_vertex_counts(const Graph& g, const LabeledVertexType& type) {
  detail::check_labeled_input(g, "labeled_vertex_counts");
  detail::check_label_range(g, {type.center, type.other_lo, type.other_hi},
                            "labeled_vertex_counts");
  const SparseMatrix& a = g.adjacency();
  const SparseMatrix p1 = label_filter(g, type.center);
  const SparseMatrix p2 = label_filter(g, type.other_lo);
  const SparseMatrix p3 = label_filter(g, type.other_hi);
  const SparseMatrix chain =
      mat_mul(mat_mul(mat_mul(mat_mul(mat_mul(mat_mul(p1, a), p3), a), p2), a), p1);
  std::vector<Value> t = diag_vec(chain);
  if (type.other_lo == type.other_hi) {
    for (Value& v : t) {
      if (v % 2 != 0) throw internal_error("labeled vertex walk count must be even");
      v /= 2;
    }
  }
  return t;
}

// Delta[(q1,q2,q3)] = (Pi_{q2} A Pi_{q1}) o (A Pi_{q3} A).
inline SparseMatrix labeled_edge_counts(const Graph& g, const LabeledEdgeType& type) {
  detail::check_labeled_input(g, "labeled_edge_counts");
  detail::check_label_range(g, {type.q1, type.q2, type.q3}, "labeled_edge_counts");
  const SparseMatrix& a = g.adjacency();
  const SparseMatrix filtered = mat_mul(mat_mul(label_filter(g, type.q2), a), label_filter(g, type.q1));
  const SparseMatrix two_paths = mat_mul(mat_mul(a, label_filter(g, type.q3)), a);
  return hadamard(filtered, two_paths);
}

inline std::vector<LabeledVertexType> all_labeled_vertex_types(Index label_count) {
  std::vector<LabeledVertexType> types;
  for (Index q1 = 1; q1 <= label_count; ++q1)
    for (Index q2 = 1; q2 <= label_count; ++q2)
      for (Index q3 = q2; q3 <= label_count; ++q3) types.push_back({q1, q2, q3});
  return types;
}

inline std::vector<LabeledEdgeType> all_labeled_edge_types(Index label_count) {
  std::vector<LabeledEdgeType> types;
  for (Index q1 = 1; q1 <= label_count; ++q1)
    for (Index q2 = 1; q2 <= label_count; ++q2)
      for (Index q3 = 1; q3 <= label_count; ++q3) types.push_back({q1, q2, q3});
  return types;
}

namespace detail {

inline void check_labeled_product_factors(const Graph& a, const Graph& b, const char* who) {
  check_labeled_input(a, who);
  if (b.is_labeled())
    throw precondition_error(std::string(who) + ": right factor must be unlabeled");
  if (b.is_directed() || !b.adjacency().is_symmetric())
    throw precondition_error(std::string(who) + ": right factor must be undirected");
}

}  // namespace detail

// Product vertex labels are inherited from the left factor:
// f_C(p) = f_A(i(p)), so t_C[type] = t_A[type] (x) diag(B^3).
class LabeledProductVertex {
 public:
  LabeledProductVertex(const Graph& a, const Graph& b)
      : g3b_(diag_of_cube(b.adjacency())), nb_(b.size()), label_count_(a.label_count()) {
    for (const auto& type : all_labeled_vertex_types(a.label_count()))
      t_a_[type] = labeled_vertex_counts(a, type);
  }

  Wide at(const LabeledVertexType& type, Index p) const {
    const auto it = t_a_.find(make_labeled_vertex_type(type.center, type.other_lo, type.other_hi));
    if (it == t_a_.end()) throw precondition_error("labeled type out of range");
    const auto [i, k] = idx_split(p, nb_);
    return static_cast<Wide>(it->second[i - 1]) * g3b_[k - 1];
  }

  Index label_count() const { return label_count_; }
  const std::vector<Value>& diag_b_cubed() const { return g3b_; }

 private:
  std::map<LabeledVertexType, std::vector<Value>> t_a_;
  std::vector<Value> g3b_;
  Index nb_;
  Index label_count_;
};

inline LabeledProductVertex product_labeled_vertex(const Graph& a, const Graph& b) {
  detail::check_labeled_product_factors(a, b, "product_labeled_vertex");
  return LabeledProductVertex(a, b);
}

class LabeledProductEdge {
 public:
  LabeledProductEdge(const Graph& a, const Graph& b)
      : t1b_(hadamard_with_square(b.adjacency())), nb_(b.size()), label_count_(a.label_count()) {
    for (const auto& type : all_labeled_edge_types(a.label_count()))
      delta_a_[type] = labeled_edge_counts(a, type);
  }

  Wide at(const LabeledEdgeType& type, Index p, Index q) const {
    const auto it = delta_a_.find(type);
    if (it == delta_a_.end()) throw precondition_error("labeled type out of range");
    const auto [i, k] = idx_split(p, nb_);
    const auto [j, l] = idx_split(q, nb_);
    return static_cast<Wide>(it->second.at(i, j)) * t1b_.at(k, l);
  }

  Index label_count() const { return label_count_; }

 private:
  std::map<LabeledEdgeType, SparseMatrix> delta_a_;
  SparseMatrix t1b_;
  Index nb_;
  Index label_count_;
};

inline LabeledProductEdge product_labeled_edge(const Graph& a, const Graph& b) {
  detail::check_labeled_product_factors(a, b, "product_labeled_edge");
  return LabeledProductEdge(a, b);
}

}  // namespace krontri
