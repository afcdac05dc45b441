#pragma once

// Closed-form statistics of C = A (x) B computed from factor statistics,
// without materializing C. Three self-loop regimes select the formula route:
//
//   none    neither factor has loops:  t_C = 2 t_A (x) t_B,
//                                      Delta_C = Delta_A (x) Delta_B
//   b_only  loops only in B:           t_C = t_A (x) diag(B^3),
//                                      Delta_C = Delta_A (x) (B o B^2)
//   both    loops in both factors:     four-term diagonal expansion for t_C,
//                                      five-term expansion for Delta_C,
//                                      with D_X = I o X.
//
// All statistics describe the hollow part of C (loops of C are reported but
// never counted as edges or triangles at themselves).

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "krontri/graph.hpp"
#include "krontri/sparse.hpp"
#include "krontri/tri_undirected.hpp"

namespace krontri {

enum class LoopRegime { none, b_only, both };

inline const char* to_string(LoopRegime r) {
  switch (r) {
    case LoopRegime::none: return "none";
    case LoopRegime::b_only: return "b_only";
    case LoopRegime::both: return "both";
  }
  return "?";
}

inline LoopRegime parse_loop_regime(const std::string& s) {
  if (s == "none") return LoopRegime::none;
  if (s == "b_only") return LoopRegime::b_only;
  if (s == "both") return LoopRegime::both;
  throw precondition_error("unknown loop regime: " + s);
}

// The regime is derived from the factors, never asserted by callers. The
// formulas are stated for loops in B only; a left-only loop pattern is the
// mirrored situation, so the caller is told to swap.
inline LoopRegime derive_loop_regime(const Graph& a, const Graph& b) {
  const bool la = a.has_loops(), lb = b.has_loops();
  if (la && !lb)
    throw precondition_error(
        "loop regime: left factor has loops while the right factor has none; swap the factors");
  if (la && lb) return LoopRegime::both;
  if (lb) return LoopRegime::b_only;
  return LoopRegime::none;
}

namespace detail {

inline void check_undirected_factors(const Graph& a, const Graph& b, const char* who) {
  if (a.is_directed() || b.is_directed())
    throw precondition_error(std::string(who) + ": undirected factors required");
}

inline std::vector<Value> loop_indicators(const Graph& g) {
  std::vector<Value> s(g.size(), 0);
  for (Index i = 1; i <= g.size(); ++i) s[i - 1] = g.adjacency().at(i, i);
  return s;
}

inline std::vector<Value> hollow_degrees(const Graph& g) {
  auto d = row_sums(g.adjacency());
  const auto s = loop_indicators(g);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= s[i];
  return d;
}

}  // namespace detail

// Non-loop degree of every product vertex, evaluable pointwise:
//   d_C(p) = (d_A + s_A)(i) * (d_B + s_B)(k) - s_A(i) * s_B(k)
// with s the per-vertex loop indicator. This single expression reduces to the
// three published all-or-nothing loop cases.
class ProductDegrees {
 public:
  ProductDegrees(const Graph& a, const Graph& b)
      : da_(detail::hollow_degrees(a)),
        sa_(detail::loop_indicators(a)),
        db_(detail::hollow_degrees(b)),
        sb_(detail::loop_indicators(b)),
        nb_(b.size()) {}

  Value at(Index p) const {
    const auto [i, k] = idx_split(p, nb_);
    return value(i, k);
  }

  Value value(Index i, Index k) const {
    const Value row = checked_mul(da_[i - 1] + sa_[i - 1], db_[k - 1] + sb_[k - 1]);
    return row - sa_[i - 1] * sb_[k - 1];
  }

  Value max() const {
    Value best = 0;
    // Distinct (degree, loop) pairs per factor keep this sublinear in n_C.
    auto distinct = [](const std::vector<Value>& d, const std::vector<Value>& s) {
      std::vector<std::pair<Value, Value>> ps;
      for (std::size_t i = 0; i < d.size(); ++i) ps.emplace_back(d[i], s[i]);
      std::sort(ps.begin(), ps.end());
      ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
      return ps;
    };
    for (auto [da, sa] : distinct(da_, sa_))
      for (auto [db, sb] : distinct(db_, sb_))
        best = std::max(best, checked_mul(da + sa, db + sb) - sa * sb);
    return best;
  }

  Index product_size() const { return da_.size() * nb_; }

  // Full O(n_C) export, gated like kron_materialize; queries stay pointwise.
  std::vector<Value> export_vector(bool override_guard = false) const {
    if (!override_guard && product_size() > kron_materialize_max_dim)
      throw precondition_error("degree vector export exceeds the materialization guard");
    std::vector<Value> out;
    out.reserve(product_size());
    for (Index i = 1; i <= da_.size(); ++i)
      for (Index k = 1; k <= nb_; ++k) out.push_back(value(i, k));
    return out;
  }

 private:
  std::vector<Value> da_, sa_, db_, sb_;
  Index nb_;
};

inline ProductDegrees product_degrees(const Graph& a, const Graph& b) {
  detail::check_undirected_factors(a, b, "product_degrees");
  derive_loop_regime(a, b);
  return ProductDegrees(a, b);
}

namespace detail {

// Per-factor diagonal data for the general (both-loops) vertex expansion:
//   t_C = 1/2 ( diag(A^3) (x) diag(B^3) - 2 diag(A^2 D_A) (x) diag(B^2 D_B)
//               - diag(A D_A A) (x) diag(B D_B B) + 2 diag(D_A) (x) diag(D_B) )
// For a symmetric boolean X: diag(X^2 D_X)_i = s_i (d_i + s_i) and
// diag(X D_X X)_i = sum of s over the neighborhood of i.
struct DiagCubeData {
  std::vector<Value> g3;        // diag(X^3)
  std::vector<Value> sq_diag;   // diag(X^2 D_X)
  std::vector<Value> loop_nbr;  // diag(X D_X X)
  std::vector<Value> s;         // diag(X)

  explicit DiagCubeData(const Graph& g) {
    const SparseMatrix& x = g.adjacency();
    g3 = diag_of_cube(x);
    s = loop_indicators(g);
    const auto d = hollow_degrees(g);
    sq_diag.resize(g.size());
    loop_nbr.resize(g.size());
    for (Index i = 1; i <= g.size(); ++i) {
      sq_diag[i - 1] = s[i - 1] * (d[i - 1] + s[i - 1]);
      Value acc = 0;
      for (Index j : x.row_cols(i)) acc += s[j - 1];
      loop_nbr[i - 1] = acc;
    }
  }
};

}  // namespace detail

// Triangle participation of every product vertex, pointwise.
class ProductTriVertex {
 public:
  ProductTriVertex(const Graph& a, const Graph& b)
      : regime_(derive_loop_regime(a, b)), nb_(b.size()), na_(a.size()) {
    switch (regime_) {
      case LoopRegime::none:
        ta_ = triangle_vertex_counts(a);
        tb_ = triangle_vertex_counts(b);
        break;
      case LoopRegime::b_only:
        ta_ = triangle_vertex_counts(a);
        tb_ = diag_of_cube(b.adjacency());
        break;
      case LoopRegime::both:
        a_data_.emplace(a);
        b_data_.emplace(b);
        break;
    }
  }

  LoopRegime regime() const { return regime_; }

  Wide at(Index p) const {
    const auto [i, k] = idx_split(p, nb_);
    return value(i, k);
  }

  Wide value(Index i, Index k) const {
    switch (regime_) {
      case LoopRegime::none:
        return Wide{2} * ta_[i - 1] * tb_[k - 1];
      case LoopRegime::b_only:
        return static_cast<Wide>(ta_[i - 1]) * tb_[k - 1];
      case LoopRegime::both: {
        const auto& fa = *a_data_;
        const auto& fb = *b_data_;
        const SignedWide raw =
            static_cast<SignedWide>(static_cast<Wide>(fa.g3[i - 1]) * fb.g3[k - 1]) -
            2 * static_cast<SignedWide>(static_cast<Wide>(fa.sq_diag[i - 1]) * fb.sq_diag[k - 1]) -
            static_cast<SignedWide>(static_cast<Wide>(fa.loop_nbr[i - 1]) * fb.loop_nbr[k - 1]) +
            2 * static_cast<SignedWide>(static_cast<Wide>(fa.s[i - 1]) * fb.s[k - 1]);
        if (raw < 0 || raw % 2 != 0)
          throw internal_error("both-loops vertex expansion produced an invalid count");
        return static_cast<Wide>(raw / 2);
      }
    }
    throw internal_error("unreachable");
  }

  // Sum over all product vertices (equals 3 tau(C)), via factor sums.
  Wide sum() const {
    switch (regime_) {
      case LoopRegime::none:
        return Wide{2} * vec_sum(ta_) * vec_sum(tb_);
      case LoopRegime::b_only:
        return vec_sum(ta_) * vec_sum(tb_);
      case LoopRegime::both: {
        const auto& fa = *a_data_;
        const auto& fb = *b_data_;
        const SignedWide raw =
            static_cast<SignedWide>(vec_sum(fa.g3) * vec_sum(fb.g3)) -
            2 * static_cast<SignedWide>(vec_sum(fa.sq_diag) * vec_sum(fb.sq_diag)) -
            static_cast<SignedWide>(vec_sum(fa.loop_nbr) * vec_sum(fb.loop_nbr)) +
            2 * static_cast<SignedWide>(vec_sum(fa.s) * vec_sum(fb.s));
        if (raw < 0 || raw % 2 != 0)
          throw internal_error("both-loops vertex expansion produced an invalid sum");
        return static_cast<Wide>(raw / 2);
      }
    }
    throw internal_error("unreachable");
  }

  Index product_size() const { return na_ * nb_; }

  std::vector<Wide> export_vector(bool override_guard = false) const {
    if (!override_guard && product_size() > kron_materialize_max_dim)
      throw precondition_error("triangle vector export exceeds the materialization guard");
    std::vector<Wide> out;
    out.reserve(product_size());
    for (Index i = 1; i <= na_; ++i)
      for (Index k = 1; k <= nb_; ++k) out.push_back(value(i, k));
    return out;
  }

 private:
  static Wide vec_sum(const std::vector<Value>& v) {
    Wide s = 0;
    for (Value x : v) s += x;
    return s;
  }

  LoopRegime regime_;
  Index nb_, na_;
  std::vector<Value> ta_, tb_;  // regime-dependent factor vectors
  std::optional<detail::DiagCubeData> a_data_, b_data_;
};

inline ProductTriVertex product_tri_vertex(const Graph& a, const Graph& b) {
  detail::check_undirected_factors(a, b, "product_tri_vertex");
  return ProductTriVertex(a, b);
}

// Triangle participation of every product edge, pointwise. Queries at
// non-edges and at loop positions of C evaluate to 0.
class ProductTriEdge {
 public:
  ProductTriEdge(const Graph& a, const Graph& b)
      : regime_(derive_loop_regime(a, b)), nb_(b.size()) {
    switch (regime_) {
      case LoopRegime::none:
        da_ = triangle_edge_counts(a);
        db_ = triangle_edge_counts(b);
        break;
      case LoopRegime::b_only:
        da_ = triangle_edge_counts(a);
        db_ = hadamard_with_square(b.adjacency());
        break;
      case LoopRegime::both:
        da_ = hadamard_with_square(a.adjacency());
        db_ = hadamard_with_square(b.adjacency());
        adj_a_ = a.adjacency();
        adj_b_ = b.adjacency();
        sa_ = detail::loop_indicators(a);
        sb_ = detail::loop_indicators(b);
        dega_ = detail::hollow_degrees(a);
        degb_ = detail::hollow_degrees(b);
        break;
    }
  }

  LoopRegime regime() const { return regime_; }

  Wide at(Index p, Index q) const {
    const auto [i, k] = idx_split(p, nb_);
    const auto [j, l] = idx_split(q, nb_);
    return value(i, j, k, l);
  }

  Wide value(Index i, Index j, Index k, Index l) const {
    if (regime_ != LoopRegime::both) return static_cast<Wide>(da_.at(i, j)) * db_.at(k, l);
    // (A o A^2) (x) (B o B^2) - (A D_A) (x) (B D_B) - (D_A A) (x) (D_B B)
    //   + 2 D_A (x) D_B - (D_A o A^2) (x) (D_B o B^2)
    const Value aij = adj_a_.at(i, j), bkl = adj_b_.at(k, l);
    SignedWide raw = static_cast<SignedWide>(static_cast<Wide>(da_.at(i, j)) * db_.at(k, l));
    raw -= static_cast<SignedWide>(static_cast<Wide>(aij * sa_[j - 1]) * (bkl * sb_[l - 1]));
    raw -= static_cast<SignedWide>(static_cast<Wide>(sa_[i - 1] * aij) * (sb_[k - 1] * bkl));
    if (i == j && k == l) {
      raw += 2 * static_cast<SignedWide>(static_cast<Wide>(sa_[i - 1]) * sb_[k - 1]);
      raw -= static_cast<SignedWide>(static_cast<Wide>(sa_[i - 1] * (dega_[i - 1] + sa_[i - 1])) *
                                     (sb_[k - 1] * (degb_[k - 1] + sb_[k - 1])));
    }
    if (raw < 0) throw internal_error("both-loops edge expansion produced a negative count");
    return static_cast<Wide>(raw);
  }

 private:
  LoopRegime regime_;
  Index nb_;
  SparseMatrix da_, db_;  // Delta-like left/right factor matrices
  SparseMatrix adj_a_, adj_b_;
  std::vector<Value> sa_, sb_, dega_, degb_;
};

inline ProductTriEdge product_tri_edge(const Graph& a, const Graph& b) {
  detail::check_undirected_factors(a, b, "product_tri_edge");
  return ProductTriEdge(a, b);
}

// tau(C) in closed form: 6 tau(A) tau(B) without loops, and factor-trace
// products otherwise. Never enumerates product vertices.
inline Wide product_tri_total(const Graph& a, const Graph& b) {
  detail::check_undirected_factors(a, b, "product_tri_total");
  const LoopRegime regime = derive_loop_regime(a, b);
  if (regime == LoopRegime::none) return Wide{6} * triangle_total(a) * triangle_total(b);
  const Wide sum = ProductTriVertex(a, b).sum();
  if (sum % 3 != 0) throw internal_error("product vertex counts not divisible by 3");
  return sum / 3;
}

struct ProductManifestStats {
  Wide n_c = 0;
  Wide stored_entries = 0;
  Wide loop_count = 0;
  Wide undirected_edges = 0;  // loops counted once
  Wide triangle_total = 0;
  LoopRegime regime = LoopRegime::none;
};

inline ProductManifestStats product_manifest(const Graph& a, const Graph& b) {
  detail::check_undirected_factors(a, b, "product_manifest");
  ProductManifestStats m;
  m.regime = derive_loop_regime(a, b);
  m.n_c = static_cast<Wide>(a.size()) * b.size();
  m.stored_entries = static_cast<Wide>(a.stored_entries()) * b.stored_entries();
  m.loop_count = static_cast<Wide>(a.loop_count()) * b.loop_count();
  m.undirected_edges = (m.stored_entries - m.loop_count) / 2 + m.loop_count;
  m.triangle_total = product_tri_total(a, b);
  return m;
}

}  // namespace krontri
