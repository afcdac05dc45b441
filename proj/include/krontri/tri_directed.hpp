#pragma once

// Reciprocal/directed edge decomposition and the typed triangle censuses of a
// directed graph: 15 canonical triangle types seen from a vertex and 15 seen
// from an edge, each defined by a fixed product of the reciprocal part A_r,
// the one-way part A_d, and its transpose. The 27 raw vertex codes and the 18
// raw edge codes collapse onto the canonical sets through an alias map.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "krontri/graph.hpp"
#include "krontri/sparse.hpp"

namespace krontri {

struct DirectedParts {
  SparseMatrix reciprocal;  // A_r = A^t o A, symmetric
  SparseMatrix one_way;     // A_d = A - A_r
  SparseMatrix undirected;  // A_u = A + A_d^t
};

inline DirectedParts split_reciprocal_directed(const Graph& g) {
  if (g.has_loops())
    throw precondition_error("split_reciprocal_directed: loop-free input required");
  const SparseMatrix& a = g.adjacency();
  DirectedParts parts;
  parts.reciprocal = hadamard(transpose(a), a);
  parts.one_way = subtract(a, parts.reciprocal);
  parts.undirected = add(a, transpose(parts.one_way));
  return parts;
}

struct DirectedDegrees {
  std::vector<Value> reciprocal;    // row sums of A_r
  std::vector<Value> directed_out;  // row sums of A_d
  std::vector<Value> directed_in;   // column sums of A_d
};

inline DirectedDegrees directed_degrees(const Graph& g) {
  if (g.has_loops()) throw precondition_error("directed_degrees: loop-free input required");
  const auto parts = split_reciprocal_directed(g);
  return {row_sums(parts.reciprocal), row_sums(parts.one_way), col_sums(parts.one_way)};
}

// Canonical type codes. Vertex codes list the center's relation to its two
// incident edges ('s'/'u'/'t') plus the opposite edge orientation
// ('+'/'o'/'-'); edge codes list the central edge kind ('+'/'o') plus the two
// remaining edge orientations.
inline const std::array<std::string, 15>& dir_vertex_types() {
  static const std::array<std::string, 15> k = {"ss+", "sso", "su+", "suo", "su-", "st+", "sto",
                                                "st-", "uu+", "uuo", "ut+", "uto", "ut-", "tt+",
                                                "tto"};
  return k;
}

inline const std::array<std::string, 15>& dir_edge_types() {
  static const std::array<std::string, 15> k = {"+++", "++-", "++o", "+-+", "+--", "+-o", "+o+",
                                                "+o-", "+oo", "o++", "o+-", "o+o", "o-+", "o-o",
                                                "ooo"};
  return k;
}

// Raw -> canonical resolution. Unknown codes throw.
inline std::string canonical_dir_vertex_type(const std::string& code) {
  static const std::map<std::string, std::string> aliases = {
      {"ss-", "ss+"}, {"us+", "su-"}, {"uso", "suo"}, {"us-", "su+"},
      {"uu-", "uu+"}, {"ts+", "st-"}, {"tso", "sto"}, {"ts-", "st+"},
      {"tu+", "ut-"}, {"tuo", "uto"}, {"tu-", "ut+"}, {"tt-", "tt+"}};
  for (const auto& c : dir_vertex_types())
    if (c == code) return code;
  auto it = aliases.find(code);
  if (it == aliases.end()) throw precondition_error("unknown directed vertex type: " + code);
  return it->second;
}

inline std::string canonical_dir_edge_type(const std::string& code) {
  static const std::map<std::string, std::string> aliases = {
      {"o--", "o++"}, {"oo+", "o+o"}, {"oo-", "o-o"}};
  for (const auto& c : dir_edge_types())
    if (c == code) return code;
  auto it = aliases.find(code);
  if (it == aliases.end()) throw precondition_error("unknown directed edge type: " + code);
  return it->second;
}

using DirVertexCensus = std::map<std::string, std::vector<Value>>;
using DirEdgeCensus = std::map<std::string, SparseMatrix>;

namespace detail {

inline std::vector<Value> diag_of_triple(const SparseMatrix& m1, const SparseMatrix& m2,
                                         const SparseMatrix& m3) {
  return diag_vec(mat_mul(mat_mul(m1, m2), m3));
}

inline std::vector<Value> halved(std::vector<Value> v, const char* type) {
  for (Value& x : v) {
    if (x % 2 != 0) throw internal_error(std::string("odd walk count for type ") + type);
    x /= 2;
  }
  return v;
}

}  // namespace detail

// All 15 canonical per-vertex count vectors. The middle factor encodes the
// opposite edge ('+' A_d, 'o' A_r, '-' A_d^t); the outer factors encode the
// center's two incident edges. Types sso, uuo, tto double-count by symmetry
// and carry the 1/2.
inline DirVertexCensus directed_vertex_census(const Graph& g) {
  if (g.has_loops()) throw precondition_error("directed_vertex_census: loop-free input required");
  const auto parts = split_reciprocal_directed(g);
  const SparseMatrix& r = parts.reciprocal;
  const SparseMatrix& d = parts.one_way;
  const SparseMatrix dt = transpose(d);
  using detail::diag_of_triple;
  DirVertexCensus census;
  census["ss+"] = diag_of_triple(dt, d, d);
  census["sso"] = detail::halved(diag_of_triple(dt, r, d), "sso");
  census["su+"] = diag_of_triple(r, d, d);
  census["suo"] = diag_of_triple(r, r, d);
  census["su-"] = diag_of_triple(r, dt, d);
  census["st+"] = diag_of_triple(d, d, d);
  census["sto"] = diag_of_triple(d, r, d);
  census["st-"] = diag_of_triple(d, dt, d);
  census["uu+"] = diag_of_triple(r, d, r);
  census["uuo"] = detail::halved(diag_of_triple(r, r, r), "uuo");
  census["ut+"] = diag_of_triple(d, d, r);
  census["uto"] = diag_of_triple(d, r, r);
  census["ut-"] = diag_of_triple(d, dt, r);
  census["tt+"] = diag_of_triple(d, dt, dt);
  census["tto"] = detail::halved(diag_of_triple(d, r, dt), "tto");
  return census;
}

// All 15 canonical per-edge count matrices.
inline DirEdgeCensus directed_edge_census(const Graph& g) {
  if (g.has_loops()) throw precondition_error("directed_edge_census: loop-free input required");
  const auto parts = split_reciprocal_directed(g);
  const SparseMatrix& r = parts.reciprocal;
  const SparseMatrix& d = parts.one_way;
  const SparseMatrix dt = transpose(d);
  DirEdgeCensus census;
  census["+++"] = hadamard(d, mat_mul(d, d));
  census["++-"] = hadamard(d, mat_mul(dt, d));
  census["++o"] = hadamard(d, mat_mul(r, d));
  census["+-+"] = hadamard(d, mat_mul(d, dt));
  census["+--"] = hadamard(d, mat_mul(dt, dt));
  census["+-o"] = hadamard(d, mat_mul(r, dt));
  census["+o+"] = hadamard(d, mat_mul(d, r));
  census["+o-"] = hadamard(d, mat_mul(dt, r));
  census["+oo"] = hadamard(d, mat_mul(r, r));
  census["o++"] = hadamard(r, mat_mul(d, d));
  census["o+-"] = hadamard(r, mat_mul(dt, d));
  census["o+o"] = hadamard(r, mat_mul(r, d));
  census["o-+"] = hadamard(r, mat_mul(d, dt));
  census["o-o"] = hadamard(r, mat_mul(r, dt));
  census["ooo"] = hadamard(r, mat_mul(r, r));
  return census;
}

inline const std::vector<Value>& census_vertex_type(const DirVertexCensus& census,
                                                    const std::string& code) {
  return census.at(canonical_dir_vertex_type(code));
}

inline const SparseMatrix& census_edge_type(const DirEdgeCensus& census, const std::string& code) {
  return census.at(canonical_dir_edge_type(code));
}

namespace detail {

inline void check_directed_product_factors(const Graph& a, const Graph& b, const char* who) {
  if (a.has_loops()) throw precondition_error(std::string(who) + ": left factor must be loop-free");
  if (b.is_directed() || !b.adjacency().is_symmetric())
    throw precondition_error(std::string(who) + ": right factor must be undirected (symmetric)");
}

}  // namespace detail

// Typed vertex counts of C = A (x) B for directed A and symmetric B, pointwise:
// t_C[type](p) = t_A[type](i(p)) * diag(B^3)(k(p)).
class DirectedProductVertex {
 public:
  DirectedProductVertex(const Graph& a, const Graph& b)
      : t_a_(directed_vertex_census(a)), g3b_(diag_of_cube(b.adjacency())), nb_(b.size()) {}

  Wide at(const std::string& type, Index p) const {
    const auto& ta = t_a_.at(canonical_dir_vertex_type(type));
    const auto [i, k] = idx_split(p, nb_);
    return static_cast<Wide>(ta[i - 1]) * g3b_[k - 1];
  }

  const DirVertexCensus& factor_census() const { return t_a_; }
  const std::vector<Value>& diag_b_cubed() const { return g3b_; }

 private:
  DirVertexCensus t_a_;
  std::vector<Value> g3b_;
  Index nb_;
};

inline DirectedProductVertex product_directed_vertex(const Graph& a, const Graph& b) {
  detail::check_directed_product_factors(a, b, "product_directed_vertex");
  return DirectedProductVertex(a, b);
}

// Typed edge counts of C = A (x) B, pointwise:
// Delta_C[type](p,q) = Delta_A[type](i,j) * (B o B^2)(k,l).
class DirectedProductEdge {
 public:
  DirectedProductEdge(const Graph& a, const Graph& b)
      : delta_a_(directed_edge_census(a)),
        t1b_(hadamard_with_square(b.adjacency())),
        nb_(b.size()) {}

  Wide at(const std::string& type, Index p, Index q) const {
    const auto& da = delta_a_.at(canonical_dir_edge_type(type));
    const auto [i, k] = idx_split(p, nb_);
    const auto [j, l] = idx_split(q, nb_);
    return static_cast<Wide>(da.at(i, j)) * t1b_.at(k, l);
  }

  const DirEdgeCensus& factor_census() const { return delta_a_; }
  const SparseMatrix& b_edge_triangles() const { return t1b_; }

 private:
  DirEdgeCensus delta_a_;
  SparseMatrix t1b_;
  Index nb_;
};

inline DirectedProductEdge product_directed_edge(const Graph& a, const Graph& b) {
  detail::check_directed_product_factors(a, b, "product_directed_edge");
  return DirectedProductEdge(a, b);
}

}  // namespace krontri
