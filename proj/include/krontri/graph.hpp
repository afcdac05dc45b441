#pragma once

// Graph = boolean adjacency + directedness flag + optional vertex labels.
// Immutable after construction; invariants are checked up front so every
// downstream formula can assume a well-formed adjacency.

#include <optional>
#include <utility>
#include <vector>

#include "krontri/sparse.hpp"

namespace krontri {

class Graph {
 public:
  Graph() = default;

  static Graph undirected(SparseMatrix adj) { return Graph(std::move(adj), false); }
  static Graph directed(SparseMatrix adj) { return Graph(std::move(adj), true); }

  // Labels are 1-based ids in 1..L; the mapping must be total. L defaults to
  // the maximum observed label but may be given explicitly (labels may then
  // be absent from the vertex set without shrinking the type space).
  Graph with_labels(std::vector<Index> labels, std::optional<Index> label_count = {}) const {
    if (labels.size() != adj_.size())
      throw precondition_error("labels must cover every vertex");
    Index max_label = 0;
    for (Index l : labels) {
      if (l < 1) throw precondition_error("labels must be >= 1");
      max_label = std::max(max_label, l);
    }
    const Index count = label_count.value_or(max_label);
    if (count < max_label) throw precondition_error("label id exceeds the label count");
    Graph g = *this;
    g.labels_ = std::move(labels);
    g.label_count_ = count;
    return g;
  }

  const SparseMatrix& adjacency() const { return adj_; }
  Index size() const { return adj_.size(); }
  bool is_directed() const { return directed_; }

  bool is_labeled() const { return labels_.has_value(); }
  const std::vector<Index>& labels() const {
    if (!labels_) throw precondition_error("graph has no labels");
    return *labels_;
  }
  Index label_count() const { return label_count_; }
  Index label_of(Index v) const { return labels().at(v - 1); }

  Index loop_count() const { return loops_; }
  bool has_loops() const { return loops_ > 0; }

  // Count of stored entries (each undirected non-loop edge appears twice).
  std::size_t stored_entries() const { return adj_.nnz(); }

  // Undirected edge count with loops counted once; arc count when directed.
  Wide edge_count() const {
    if (directed_) return adj_.nnz();
    return (static_cast<Wide>(adj_.nnz()) - loops_) / 2 + loops_;
  }

  bool has_edge(Index i, Index j) const { return adj_.at(i, j) != 0; }

 private:
  Graph(SparseMatrix adj, bool directed) : adj_(std::move(adj)), directed_(directed) {
    adj_.for_each([&](Index i, Index j, Value v) {
      if (v != 1) throw precondition_error("adjacency entries must be 0 or 1");
      if (i == j) ++loops_;
    });
    if (!directed_ && !adj_.is_symmetric())
      throw precondition_error("undirected graph requires a symmetric adjacency");
  }

  SparseMatrix adj_;
  bool directed_ = false;
  Index loops_ = 0;
  std::optional<std::vector<Index>> labels_;
  Index label_count_ = 0;
};

}  // namespace krontri
