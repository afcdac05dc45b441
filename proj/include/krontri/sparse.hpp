#pragma once

// Sparse integer matrix kernel and the block index arithmetic used by every
// Kronecker formula. Matrices are square, 1-based, immutable after
// construction, and store no explicit zeros.

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "krontri/common.hpp"

namespace krontri {

// ---------------------------------------------------------------------------
// Block index maps.
//
// A global index p >= 1 over blocks of size n splits into a block number and
// an intra-block index, both 1-based:
//   block(p) = floor((p-1)/n) + 1,  intra(p) = ((p-1) mod n) + 1
// and joins back via (block-1)*n + intra.

struct SplitIndex {
  Index block;
  Index intra;
};

inline SplitIndex idx_split(Index p, Index n) {
  if (p < 1) throw precondition_error("idx_split: index must be >= 1");
  if (n < 1) throw precondition_error("idx_split: block size must be >= 1");
  return SplitIndex{(p - 1) / n + 1, (p - 1) % n + 1};
}

inline Index idx_join(Index block, Index intra, Index n) {
  if (block < 1) throw precondition_error("idx_join: block must be >= 1");
  if (n < 1) throw precondition_error("idx_join: block size must be >= 1");
  if (intra < 1 || intra > n) throw precondition_error("idx_join: intra-block index out of range");
  return (block - 1) * n + intra;
}

// ---------------------------------------------------------------------------

struct Entry {
  Index row;
  Index col;
  Value value;
};

inline bool operator==(const Entry& a, const Entry& b) {
  return a.row == b.row && a.col == b.col && a.value == b.value;
}

// Square sparse matrix with non-negative integer entries, CSR layout with
// ascending columns per row. Doubles as a boolean adjacency (entries in
// {0,1}) and as a count matrix (powers, triangle participation).
class SparseMatrix {
 public:
  SparseMatrix() : n_(0) {}
  explicit SparseMatrix(Index n) : n_(n), row_start_(static_cast<std::size_t>(n) + 1, 0) {}

  // Entries may arrive in any order. Zero values are dropped; duplicate
  // coordinates and out-of-range indices are rejected.
  static SparseMatrix from_entries(Index n, std::vector<Entry> entries) {
    SparseMatrix m(n);
    std::erase_if(entries, [](const Entry& e) { return e.value == 0; });
    for (const Entry& e : entries) {
      if (e.row < 1 || e.row > n || e.col < 1 || e.col > n)
        throw precondition_error("sparse entry index out of range");
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    for (std::size_t i = 1; i < entries.size(); ++i) {
      if (entries[i].row == entries[i - 1].row && entries[i].col == entries[i - 1].col)
        throw precondition_error("duplicate sparse entry");
    }
    m.cols_.reserve(entries.size());
    m.vals_.reserve(entries.size());
    for (const Entry& e : entries) {
      ++m.row_start_[e.row];
      m.cols_.push_back(e.col);
      m.vals_.push_back(e.value);
    }
    for (Index r = 1; r <= n; ++r) m.row_start_[r] += m.row_start_[r - 1];
    return m;
  }

  static SparseMatrix identity(Index n) {
    std::vector<Entry> e;
    e.reserve(n);
    for (Index i = 1; i <= n; ++i) e.push_back({i, i, 1});
    return from_entries(n, std::move(e));
  }

  Index size() const { return n_; }
  std::size_t nnz() const { return cols_.size(); }

  std::span<const Index> row_cols(Index i) const {
    return {cols_.data() + row_start_[i - 1], row_start_[i] - row_start_[i - 1]};
  }
  std::span<const Value> row_vals(Index i) const {
    return {vals_.data() + row_start_[i - 1], row_start_[i] - row_start_[i - 1]};
  }

  Value at(Index i, Index j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_) throw precondition_error("matrix index out of range");
    auto cols = row_cols(i);
    auto it = std::lower_bound(cols.begin(), cols.end(), j);
    if (it == cols.end() || *it != j) return 0;
    return vals_[static_cast<std::size_t>(it - cols.begin()) + row_start_[i - 1]];
  }

  // Deterministic row-major, ascending-column iteration.
  template <class F>
  void for_each(F&& f) const {
    for (Index i = 1; i <= n_; ++i) {
      auto cols = row_cols(i);
      auto vals = row_vals(i);
      for (std::size_t k = 0; k < cols.size(); ++k) f(i, cols[k], vals[k]);
    }
  }

  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    out.reserve(nnz());
    for_each([&](Index i, Index j, Value v) { out.push_back({i, j, v}); });
    return out;
  }

  bool is_symmetric() const;

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.n_ == b.n_ && a.row_start_ == b.row_start_ && a.cols_ == b.cols_ && a.vals_ == b.vals_;
  }

 private:
  Index n_;
  std::vector<std::size_t> row_start_;  // n_+1 slots, row i at [row_start_[i-1], row_start_[i])
  std::vector<Index> cols_;
  std::vector<Value> vals_;
};

inline SparseMatrix transpose(const SparseMatrix& x) {
  std::vector<Entry> e;
  e.reserve(x.nnz());
  x.for_each([&](Index i, Index j, Value v) { e.push_back({j, i, v}); });
  return SparseMatrix::from_entries(x.size(), std::move(e));
}

inline bool SparseMatrix::is_symmetric() const { return transpose(*this) == *this; }

inline void require_same_size(const SparseMatrix& x, const SparseMatrix& y, const char* op) {
  if (x.size() != y.size())
    throw precondition_error(std::string(op) + ": dimension mismatch");
}

// Standard integer matrix product. Row-wise with a dense accumulator;
// sequential, so results are trivially deterministic.
inline SparseMatrix mat_mul(const SparseMatrix& x, const SparseMatrix& y) {
  require_same_size(x, y, "mat_mul");
  const Index n = x.size();
  std::vector<Value> acc(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Index> touched;
  std::vector<Entry> out;
  for (Index i = 1; i <= n; ++i) {
    touched.clear();
    auto xc = x.row_cols(i);
    auto xv = x.row_vals(i);
    for (std::size_t a = 0; a < xc.size(); ++a) {
      const Index j = xc[a];
      auto yc = y.row_cols(j);
      auto yv = y.row_vals(j);
      for (std::size_t b = 0; b < yc.size(); ++b) {
        const Index l = yc[b];
        if (acc[l] == 0) touched.push_back(l);
        acc[l] = checked_add(acc[l], checked_mul(xv[a], yv[b]));
      }
    }
    std::sort(touched.begin(), touched.end());
    for (Index l : touched) {
      out.push_back({i, l, acc[l]});
      acc[l] = 0;
    }
  }
  return SparseMatrix::from_entries(n, std::move(out));
}

// Entrywise product.
inline SparseMatrix hadamard(const SparseMatrix& x, const SparseMatrix& y) {
  require_same_size(x, y, "hadamard");
  const Index n = x.size();
  std::vector<Entry> out;
  for (Index i = 1; i <= n; ++i) {
    auto xc = x.row_cols(i);
    auto xv = x.row_vals(i);
    auto yc = y.row_cols(i);
    auto yv = y.row_vals(i);
    std::size_t a = 0, b = 0;
    while (a < xc.size() && b < yc.size()) {
      if (xc[a] < yc[b]) {
        ++a;
      } else if (yc[b] < xc[a]) {
        ++b;
      } else {
        out.push_back({i, xc[a], checked_mul(xv[a], yv[b])});
        ++a;
        ++b;
      }
    }
  }
  return SparseMatrix::from_entries(n, std::move(out));
}

inline SparseMatrix add(const SparseMatrix& x, const SparseMatrix& y) {
  require_same_size(x, y, "add");
  std::vector<Entry> e = x.entries();
  y.for_each([&](Index i, Index j, Value v) { e.push_back({i, j, v}); });
  std::sort(e.begin(), e.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<Entry> merged;
  for (const Entry& cur : e) {
    if (!merged.empty() && merged.back().row == cur.row && merged.back().col == cur.col)
      merged.back().value = checked_add(merged.back().value, cur.value);
    else
      merged.push_back(cur);
  }
  return SparseMatrix::from_entries(x.size(), std::move(merged));
}

// x - y; entries that would go negative throw.
inline SparseMatrix subtract(const SparseMatrix& x, const SparseMatrix& y) {
  require_same_size(x, y, "subtract");
  std::vector<Entry> out = x.entries();
  std::vector<Entry> sub = y.entries();
  std::vector<Entry> merged;
  std::size_t a = 0, b = 0;
  auto key = [](const Entry& e) { return std::pair<Index, Index>(e.row, e.col); };
  while (a < out.size() || b < sub.size()) {
    if (b == sub.size() || (a < out.size() && key(out[a]) < key(sub[b]))) {
      merged.push_back(out[a++]);
    } else if (a == out.size() || key(sub[b]) < key(out[a])) {
      throw arithmetic_overflow("subtract: negative entry");
    } else {
      Value v = checked_sub(out[a].value, sub[b].value);
      if (v > 0) merged.push_back({out[a].row, out[a].col, v});
      ++a;
      ++b;
    }
  }
  return SparseMatrix::from_entries(x.size(), std::move(merged));
}

inline SparseMatrix scalar_mul(Value a, const SparseMatrix& x) {
  std::vector<Entry> e;
  e.reserve(x.nnz());
  x.for_each([&](Index i, Index j, Value v) { e.push_back({i, j, checked_mul(a, v)}); });
  return SparseMatrix::from_entries(x.size(), std::move(e));
}

// diag(X) as a vector: (I o X) 1.
inline std::vector<Value> diag_vec(const SparseMatrix& x) {
  std::vector<Value> d(x.size(), 0);
  for (Index i = 1; i <= x.size(); ++i) d[i - 1] = x.at(i, i);
  return d;
}

// D_X = I o X, the diagonal part kept as a matrix.
inline SparseMatrix diag_matrix(const SparseMatrix& x) {
  std::vector<Entry> e;
  for (Index i = 1; i <= x.size(); ++i) {
    Value v = x.at(i, i);
    if (v != 0) e.push_back({i, i, v});
  }
  return SparseMatrix::from_entries(x.size(), std::move(e));
}

inline std::vector<Value> row_sums(const SparseMatrix& x) {
  std::vector<Value> s(x.size(), 0);
  x.for_each([&](Index i, Index, Value v) { s[i - 1] = checked_add(s[i - 1], v); });
  return s;
}

inline std::vector<Value> col_sums(const SparseMatrix& x) {
  std::vector<Value> s(x.size(), 0);
  x.for_each([&](Index, Index j, Value v) { s[j - 1] = checked_add(s[j - 1], v); });
  return s;
}

// hollow = X - I o X, plus the removed diagonal as a vector.
inline std::pair<SparseMatrix, std::vector<Value>> strip_loops(const SparseMatrix& x) {
  std::vector<Entry> e;
  e.reserve(x.nnz());
  std::vector<Value> loops(x.size(), 0);
  x.for_each([&](Index i, Index j, Value v) {
    if (i == j)
      loops[i - 1] = v;
    else
      e.push_back({i, j, v});
  });
  return {SparseMatrix::from_entries(x.size(), std::move(e)), std::move(loops)};
}

// diag(X^3) by sorted-neighborhood intersection, never forming X^3.
inline std::vector<Value> diag_of_cube(const SparseMatrix& x) {
  const SparseMatrix xt = transpose(x);
  std::vector<Value> d(x.size(), 0);
  for (Index i = 1; i <= x.size(); ++i) {
    auto ic = xt.row_cols(i);  // m with X(m,i) != 0
    auto iv = xt.row_vals(i);
    auto jc = x.row_cols(i);
    auto jv = x.row_vals(i);
    Value acc = 0;
    for (std::size_t a = 0; a < jc.size(); ++a) {
      auto mc = x.row_cols(jc[a]);
      auto mv = x.row_vals(jc[a]);
      std::size_t p = 0, q = 0;
      while (p < mc.size() && q < ic.size()) {
        if (mc[p] < ic[q])
          ++p;
        else if (ic[q] < mc[p])
          ++q;
        else {
          acc = checked_add(acc, checked_mul(jv[a], checked_mul(mv[p], iv[q])));
          ++p;
          ++q;
        }
      }
    }
    d[i - 1] = acc;
  }
  return d;
}

// X o X^2 evaluated only on the sparsity of X, never forming X^2.
inline SparseMatrix hadamard_with_square(const SparseMatrix& x) {
  const SparseMatrix xt = transpose(x);
  std::vector<Entry> out;
  x.for_each([&](Index i, Index j, Value v) {
    auto oc = x.row_cols(i);
    auto ov = x.row_vals(i);
    auto incol = xt.row_cols(j);  // m with X(m,j) != 0
    auto inval = xt.row_vals(j);
    Value acc = 0;
    std::size_t p = 0, q = 0;
    while (p < oc.size() && q < incol.size()) {
      if (oc[p] < incol[q])
        ++p;
      else if (incol[q] < oc[p])
        ++q;
      else {
        acc = checked_add(acc, checked_mul(ov[p], inval[q]));
        ++p;
        ++q;
      }
    }
    if (acc != 0) out.push_back({i, j, checked_mul(v, acc)});
  });
  return SparseMatrix::from_entries(x.size(), std::move(out));
}

inline constexpr Index kron_materialize_max_dim = 1'000'000;
inline constexpr std::size_t kron_materialize_max_nnz = 100'000'000;

// Explicit Kronecker product: entry ((i-1)*nY+k, (j-1)*nY+l) = X(i,j)*Y(k,l).
// Refuses above the size guard unless overridden; large products are meant to
// be streamed, not materialized.
inline SparseMatrix kron_materialize(const SparseMatrix& x, const SparseMatrix& y,
                                     bool override_guard = false) {
  const Index nx = x.size(), ny = y.size();
  if (nx != 0 && ny != 0) {
    if (!override_guard) {
      if (static_cast<Wide>(nx) * ny > kron_materialize_max_dim)
        throw precondition_error("kron_materialize: product dimension exceeds guard");
      if (static_cast<Wide>(x.nnz()) * y.nnz() > kron_materialize_max_nnz)
        throw precondition_error("kron_materialize: predicted entry count exceeds guard");
    }
  }
  const Index n = checked_mul(nx, ny);
  std::vector<Entry> e;
  e.reserve(x.nnz() * y.nnz());
  for (Index i = 1; i <= nx; ++i) {
    auto xc = x.row_cols(i);
    auto xv = x.row_vals(i);
    if (xc.empty()) continue;
    for (Index k = 1; k <= ny; ++k) {
      auto yc = y.row_cols(k);
      auto yv = y.row_vals(k);
      if (yc.empty()) continue;
      const Index row = idx_join(i, k, ny);
      for (std::size_t a = 0; a < xc.size(); ++a)
        for (std::size_t b = 0; b < yc.size(); ++b)
          e.push_back({row, idx_join(xc[a], yc[b], ny), checked_mul(xv[a], yv[b])});
    }
  }
  return SparseMatrix::from_entries(n, std::move(e));
}

}  // namespace krontri
