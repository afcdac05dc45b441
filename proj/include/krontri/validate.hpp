#pragma once

// Named oracle-equivalence suites behind the `validate` command. Each
// scenario generates seeded instances, runs a formula path against the brute
// oracle (or an algebraic identity against direct evaluation), and reports
// the first divergence. All comparisons are exact.

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "krontri/factor_gen.hpp"
#include "krontri/graph.hpp"
#include "krontri/kron_stats.hpp"
#include "krontri/oracle.hpp"
#include "krontri/product_stream.hpp"
#include "krontri/rng.hpp"
#include "krontri/tri_directed.hpp"
#include "krontri/tri_labeled.hpp"
#include "krontri/tri_undirected.hpp"
#include "krontri/truss.hpp"

namespace krontri {

struct ScenarioResult {
  bool ok = true;
  std::uint64_t checks = 0;
  std::string first_divergence;

  template <class DetailFn>
  void expect(bool cond, DetailFn&& detail) {
    ++checks;
    if (!cond && ok) {
      ok = false;
      first_divergence = detail();
    }
  }
};

namespace validate_detail {

inline Graph random_hollow_undirected(SplitMix64& rng, Index n_lo, Index n_hi) {
  const Index n = n_lo + rng.next_below(n_hi - n_lo + 1);
  const double p = 0.2 + 0.05 * static_cast<double>(rng.next_below(11));
  return gen_er(n, p, RngSeed{rng.next()}, false, false);
}

inline Graph with_random_loops(const Graph& g, SplitMix64& rng) {
  std::vector<Entry> e = g.adjacency().entries();
  bool any = false;
  for (Index i = 1; i <= g.size(); ++i)
    if (rng.next_below(2) == 0) {
      e.push_back({i, i, 1});
      any = true;
    }
  if (!any) e.push_back({1, 1, 1});
  return Graph::undirected(SparseMatrix::from_entries(g.size(), std::move(e)));
}

inline SparseMatrix random_matrix(SplitMix64& rng, Index n, Value max_value) {
  std::vector<Entry> e;
  for (Index i = 1; i <= n; ++i)
    for (Index j = 1; j <= n; ++j) {
      const Value v = rng.next_below(max_value + 1);
      if (v > 0) e.push_back({i, j, v});
    }
  return SparseMatrix::from_entries(n, std::move(e));
}

inline std::string fmt_edge(Index u, Index v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace validate_detail

// Index round trips plus the Kronecker and Hadamard product properties on
// seeded random integer matrices.
inline ScenarioResult validate_algebra(std::uint64_t seed) {
  using validate_detail::random_matrix;
  ScenarioResult r;
  SplitMix64 rng(seed);

  for (Index nb : {1, 2, 3, 5, 8}) {
    for (Index na : {1, 2, 4, 7}) {
      for (Index p = 1; p <= na * nb; ++p) {
        const auto s = idx_split(p, nb);
        r.expect(idx_join(s.block, s.intra, nb) == p, [&] {
          return "index round trip failed at p=" + std::to_string(p) + " n=" + std::to_string(nb);
        });
      }
    }
  }

  for (int iter = 0; iter < 25 && r.ok; ++iter) {
    const Index n1 = 3 + rng.next_below(2);
    const Index n2 = 3 + rng.next_below(2);
    const SparseMatrix a1 = random_matrix(rng, n1, 3);
    const SparseMatrix a2 = random_matrix(rng, n2, 3);
    const SparseMatrix a3 = random_matrix(rng, n1, 3);
    const SparseMatrix a4 = random_matrix(rng, n2, 3);
    const Value s1 = 1 + rng.next_below(3), s2 = 1 + rng.next_below(3);

    auto tag = [&](const char* what) {
      return [what, iter] { return std::string(what) + " failed at iteration " + std::to_string(iter); };
    };

    r.expect(scalar_mul(s1 * s2, kron_materialize(a1, a2)) ==
                 kron_materialize(scalar_mul(s1, a1), scalar_mul(s2, a2)),
             tag("kronecker scalar multiplication"));
    r.expect(kron_materialize(add(a1, a3), a2) ==
                 add(kron_materialize(a1, a2), kron_materialize(a3, a2)),
             tag("kronecker distributivity"));
    r.expect(transpose(kron_materialize(a1, a2)) == kron_materialize(transpose(a1), transpose(a2)),
             tag("kronecker transposition"));
    r.expect(mat_mul(kron_materialize(a1, a2), kron_materialize(a3, a4)) ==
                 kron_materialize(mat_mul(a1, a3), mat_mul(a2, a4)),
             tag("kronecker mixed product"));
    r.expect(hadamard(a1, a3) == hadamard(a3, a1), tag("hadamard commutativity"));
    r.expect(scalar_mul(s1 * s2, hadamard(a1, a3)) ==
                 hadamard(scalar_mul(s1, a1), scalar_mul(s2, a3)),
             tag("hadamard scalar multiplication"));
    r.expect(hadamard(add(a1, a3), a3) == add(hadamard(a1, a3), hadamard(a3, a3)),
             tag("hadamard distributivity"));
    r.expect(transpose(hadamard(a1, a3)) == hadamard(transpose(a1), transpose(a3)),
             tag("hadamard transposition"));
    r.expect(hadamard(kron_materialize(a1, a2), kron_materialize(a3, a4)) ==
                 kron_materialize(hadamard(a1, a3), hadamard(a2, a4)),
             tag("hadamard-kronecker distributivity"));
    r.expect(diag_vec(kron_materialize(a1, a2)) == [&] {
      std::vector<Value> d;
      for (Value da : diag_vec(a1))
        for (Value db : diag_vec(a2)) d.push_back(da * db);
      return d;
    }(),
             tag("diagonal-kronecker distributivity"));
  }
  return r;
}

// Undirected product formulas against brute force on the materialized
// product, for every vertex and every edge, in all three loop regimes.
inline ScenarioResult validate_undirected_all_regimes(std::uint64_t seed, int pairs_per_regime = 25) {
  ScenarioResult r;
  SplitMix64 rng(seed);
  const char* regime_names[] = {"none", "b_only", "both"};
  for (int regime = 0; regime < 3; ++regime) {
    for (int iter = 0; iter < pairs_per_regime && r.ok; ++iter) {
      Graph a = validate_detail::random_hollow_undirected(rng, 2, 12);
      Graph b = validate_detail::random_hollow_undirected(rng, 2, 12);
      if (regime >= 1) b = validate_detail::with_random_loops(b, rng);
      if (regime == 2) a = validate_detail::with_random_loops(a, rng);

      auto where = [&](const std::string& what) {
        return "regime=" + std::string(regime_names[regime]) + " pair=" + std::to_string(iter) +
               ": " + what;
      };

      const Graph c = Graph::undirected(kron_materialize(a.adjacency(), b.adjacency()));
      const auto brute = brute_triangles(c);
      const auto [hollow_c, loops_c] = strip_loops(c.adjacency());

      const ProductDegrees deg = product_degrees(a, b);
      const ProductTriVertex tv = product_tri_vertex(a, b);
      const ProductTriEdge te = product_tri_edge(a, b);

      for (Index p = 1; p <= c.size() && r.ok; ++p) {
        const Value brute_deg = hollow_c.row_cols(p).size();
        r.expect(deg.at(p) == brute_deg, [&, p] {
          return where("degree at p=" + std::to_string(p) + " formula=" +
                       std::to_string(deg.at(p)) + " brute=" + std::to_string(brute_deg));
        });
        r.expect(tv.at(p) == static_cast<Wide>(brute.per_vertex[p - 1]), [&, p] {
          return where("t_C at p=" + std::to_string(p) + " formula=" + to_string(tv.at(p)) +
                       " brute=" + std::to_string(brute.per_vertex[p - 1]));
        });
      }
      hollow_c.for_each([&](Index p, Index q, Value) {
        if (p >= q || !r.ok) return;
        auto it = brute.per_edge.find({p, q});
        const Value want = it == brute.per_edge.end() ? 0 : it->second;
        r.expect(te.at(p, q) == static_cast<Wide>(want) && te.at(q, p) == static_cast<Wide>(want),
                 [&] {
                   return where("Delta_C at " + validate_detail::fmt_edge(p, q) + " formula=" +
                                to_string(te.at(p, q)) + " brute=" + std::to_string(want));
                 });
      });
      r.expect(product_tri_total(a, b) == brute.total, [&] {
        return where("triangle total formula=" + to_string(product_tri_total(a, b)) +
                     " brute=" + to_string(brute.total));
      });
      // Parity and degree-maximum identities in the loop-free regime.
      if (regime == 0) {
        for (Index p = 1; p <= c.size() && r.ok; ++p)
          r.expect(tv.at(p) % 2 == 0,
                   [&, p] { return where("odd t_C at p=" + std::to_string(p)); });
        Value max_da = 0, max_db = 0, max_dc = 0;
        for (Index i = 1; i <= a.size(); ++i)
          max_da = std::max<Value>(max_da, a.adjacency().row_cols(i).size());
        for (Index k = 1; k <= b.size(); ++k)
          max_db = std::max<Value>(max_db, b.adjacency().row_cols(k).size());
        for (Index p = 1; p <= c.size(); ++p)
          max_dc = std::max<Value>(max_dc, hollow_c.row_cols(p).size());
        r.expect(deg.max() == max_dc && max_dc == max_da * max_db,
                 [&] { return where("max degree identity"); });
        r.expect(product_tri_total(a, b) ==
                     Wide{6} * triangle_total(a) * triangle_total(b),
                 [&] { return where("tau(C) = 6 tau(A) tau(B)"); });
      }
    }
  }
  return r;
}

// Factor censuses and directed product theorems against the brute classifier.
inline ScenarioResult validate_directed(std::uint64_t seed, int pairs = 25) {
  ScenarioResult r;
  SplitMix64 rng(seed);
  for (int iter = 0; iter < pairs && r.ok; ++iter) {
    const Index na = 3 + rng.next_below(10);  // up to 12
    const double pa = 0.2 + 0.05 * static_cast<double>(rng.next_below(9));
    const Graph a = gen_er(na, pa, RngSeed{rng.next()}, true, false);
    Graph b = validate_detail::random_hollow_undirected(rng, 2, 8);
    if (rng.next_below(2) == 0) b = validate_detail::with_random_loops(b, rng);

    auto where = [&](const std::string& what) {
      return "pair=" + std::to_string(iter) + ": " + what;
    };

    // Factor-level: the 15+15 table formulas against the brute classifier.
    const auto census_v = directed_vertex_census(a);
    const auto census_e = directed_edge_census(a);
    const auto brute_a = brute_directed_census(a);
    for (const auto& type : dir_vertex_types()) {
      r.expect(census_v.at(type) == brute_a.vertex.at(type),
               [&] { return where("factor vertex census for type " + type); });
    }
    for (const auto& type : dir_edge_types()) {
      const auto& formula = census_e.at(type);
      const auto& brute_map = brute_a.edge.at(type);
      Wide formula_entries = 0;
      bool entry_ok = true;
      formula.for_each([&](Index i, Index j, Value v) {
        ++formula_entries;
        auto it = brute_map.find({i, j});
        if (it == brute_map.end() || it->second != v) entry_ok = false;
      });
      r.expect(entry_ok && formula_entries == static_cast<Wide>(brute_map.size()),
               [&] { return where("factor edge census for type " + type); });
      if (!r.ok) break;
    }

    // Product theorems on the materialized product.
    const Graph c = Graph::directed(kron_materialize(a.adjacency(), b.adjacency()));
    const auto brute_c = brute_directed_census(c);
    const DirectedProductVertex pv = product_directed_vertex(a, b);
    const DirectedProductEdge pe = product_directed_edge(a, b);
    for (const auto& type : dir_vertex_types()) {
      for (Index p = 1; p <= c.size() && r.ok; ++p)
        r.expect(pv.at(type, p) == static_cast<Wide>(brute_c.vertex.at(type)[p - 1]), [&, p] {
          return where("product vertex type " + type + " at p=" + std::to_string(p));
        });
    }
    c.adjacency().for_each([&](Index p, Index q, Value) {
      if (!r.ok) return;
      for (const auto& type : dir_edge_types()) {
        const auto& bm = brute_c.edge.at(type);
        auto it = bm.find({p, q});
        const Value want = it == bm.end() ? 0 : it->second;
        r.expect(pe.at(type, p, q) == static_cast<Wide>(want), [&] {
          return where("product edge type " + type + " at " + validate_detail::fmt_edge(p, q));
        });
        if (!r.ok) return;
      }
    });
  }
  return r;
}

// Labeled censuses, completeness, and the labeled product theorems.
inline ScenarioResult validate_labeled(std::uint64_t seed, int pairs = 25, Index num_labels = 3) {
  ScenarioResult r;
  SplitMix64 rng(seed);
  for (int iter = 0; iter < pairs && r.ok; ++iter) {
    Graph a = validate_detail::random_hollow_undirected(rng, 3, 12);
    a = a.with_labels(gen_labels(a.size(), num_labels, RngSeed{rng.next()}), num_labels);
    Graph b = validate_detail::random_hollow_undirected(rng, 2, 8);
    if (rng.next_below(2) == 0) b = validate_detail::with_random_loops(b, rng);

    auto where = [&](const std::string& what) {
      return "pair=" + std::to_string(iter) + ": " + what;
    };

    const auto brute_a = brute_labeled_census(a);
    const auto undirected = triangle_stats(a);
    std::vector<Wide> vertex_sum(a.size(), 0);
    for (const auto& type : all_labeled_vertex_types(num_labels)) {
      const auto counts = labeled_vertex_counts(a, type);
      r.expect(counts == brute_a.vertex.at(type), [&] {
        return where("factor labeled vertex counts for (" + std::to_string(type.center) + ",{" +
                     std::to_string(type.other_lo) + "," + std::to_string(type.other_hi) + "})");
      });
      for (Index i = 1; i <= a.size(); ++i) vertex_sum[i - 1] += counts[i - 1];
      if (!r.ok) break;
    }
    for (Index i = 1; i <= a.size() && r.ok; ++i)
      r.expect(vertex_sum[i - 1] == static_cast<Wide>(undirected.per_vertex[i - 1]),
               [&, i] { return where("vertex completeness at i=" + std::to_string(i)); });

    std::map<std::pair<Index, Index>, Wide> edge_sum;
    for (const auto& type : all_labeled_edge_types(num_labels)) {
      const auto counts = labeled_edge_counts(a, type);
      const auto& bm = brute_a.edge.at(type);
      Wide entries = 0;
      bool entry_ok = true;
      counts.for_each([&](Index i, Index j, Value v) {
        ++entries;
        auto it = bm.find({i, j});
        if (it == bm.end() || it->second != v) entry_ok = false;
        edge_sum[{i, j}] += v;
      });
      r.expect(entry_ok && entries == static_cast<Wide>(bm.size()),
               [&] { return where("factor labeled edge counts") ; });
      if (!r.ok) break;
    }
    if (r.ok) {
      bool complete = true;
      undirected.per_edge.for_each([&](Index i, Index j, Value v) {
        auto it = edge_sum.find({i, j});
        if (it == edge_sum.end() || it->second != static_cast<Wide>(v)) complete = false;
      });
      std::size_t nonzero_edges = 0;
      for (auto& [e, v] : edge_sum)
        if (v != 0) ++nonzero_edges;
      r.expect(complete && nonzero_edges == undirected.per_edge.nnz(),
               [&] { return where("edge completeness"); });
    }

    // Product theorems with inherited labels.
    const Graph c_plain = Graph::undirected(kron_materialize(a.adjacency(), b.adjacency()));
    std::vector<Index> c_labels(c_plain.size());
    for (Index p = 1; p <= c_plain.size(); ++p)
      c_labels[p - 1] = a.label_of(idx_split(p, b.size()).block);
    const Graph c = c_plain.with_labels(std::move(c_labels), num_labels);
    const auto brute_c = brute_labeled_census(c);
    const LabeledProductVertex pv = product_labeled_vertex(a, b);
    const LabeledProductEdge pe = product_labeled_edge(a, b);
    for (const auto& type : all_labeled_vertex_types(num_labels)) {
      for (Index p = 1; p <= c.size() && r.ok; ++p)
        r.expect(pv.at(type, p) == static_cast<Wide>(brute_c.vertex.at(type)[p - 1]), [&, p] {
          return where("product labeled vertex at p=" + std::to_string(p));
        });
    }
    auto [hollow_c, loops_ignored] = strip_loops(c.adjacency());
    hollow_c.for_each([&](Index p, Index q, Value) {
      if (!r.ok) return;
      for (const auto& type : all_labeled_edge_types(num_labels)) {
        const auto& bm = brute_c.edge.at(type);
        auto it = bm.find({p, q});
        const Value want = it == bm.end() ? 0 : it->second;
        r.expect(pe.at(type, p, q) == static_cast<Wide>(want), [&] {
          return where("product labeled edge at " + validate_detail::fmt_edge(p, q));
        });
        if (!r.ok) return;
      }
    });
  }
  return r;
}

// Product truss theorem against brute truss on the materialized product, with
// B drawn from the triangle-capped generator; plus the precondition check.
inline ScenarioResult validate_truss_product(std::uint64_t seed, int pairs = 10) {
  ScenarioResult r;
  SplitMix64 rng(seed);
  for (int iter = 0; iter < pairs && r.ok; ++iter) {
    const Index nb = 5 + rng.next_below(26);  // up to 30
    const Graph b = gen_trianglecap_pa(nb, RngSeed{rng.next()});
    const Index na = 4 + rng.next_below(7);  // up to 10
    const double pa = 0.35 + 0.05 * static_cast<double>(rng.next_below(8));
    const Graph a = gen_er(na, pa, RngSeed{rng.next()}, false, false);

    auto where = [&](const std::string& what) {
      return "pair=" + std::to_string(iter) + ": " + what;
    };

    const ProductTruss pt(a, b);
    const Graph c = Graph::undirected(kron_materialize(a.adjacency(), b.adjacency()));
    const TrussDecomposition brute = brute_truss(c);
    c.adjacency().for_each([&](Index p, Index q, Value) {
      if (p >= q || !r.ok) return;
      const Index formula = pt.trussness(p, q);
      const Index want = brute.trussness.at({p, q});
      r.expect(formula == want, [&] {
        return where("trussness at " + validate_detail::fmt_edge(p, q) + " formula=" +
                     std::to_string(formula) + " brute=" + std::to_string(want));
      });
    });

    // Factor-level: incremental peeling against the literal algorithm.
    const TrussDecomposition fast = truss_decompose(a);
    const TrussDecomposition slow = brute_truss(a);
    r.expect(fast.trussness == slow.trussness,
             [&] { return where("incremental vs recompute peeling on A"); });
  }

  if (r.ok) {
    bool rejected = false;
    std::string message;
    try {
      ProductTruss pt(make_clique(4, false), make_hub_cycle());
    } catch (const precondition_error& e) {
      rejected = true;
      message = e.what();
    }
    r.expect(rejected && message.find("triangles") != std::string::npos,
             [&] { return "hub-cycle B was not rejected by the Delta_B <= 1 check"; });
  }
  return r;
}

// Stream-partition completeness and byte determinism.
inline ScenarioResult validate_stream(std::uint64_t seed, int cases = 10) {
  ScenarioResult r;
  SplitMix64 rng(seed);
  for (int iter = 0; iter < cases && r.ok; ++iter) {
    Graph a = validate_detail::random_hollow_undirected(rng, 2, 9);
    Graph b = validate_detail::random_hollow_undirected(rng, 2, 9);
    if (rng.next_below(3) == 0) b = validate_detail::with_random_loops(b, rng);
    const ProductHandle h(a, b);

    auto where = [&](const std::string& what) {
      return "case=" + std::to_string(iter) + ": " + what;
    };

    // Split 1..n_A into 1-3 chunks at seeded cut points.
    std::vector<BlockRange> ranges;
    Index lo = 1;
    while (lo <= a.size()) {
      Index hi = std::min<Index>(a.size(), lo + rng.next_below(a.size()) );
      ranges.push_back({lo, hi});
      lo = hi + 1;
    }

    std::vector<std::pair<Index, Index>> streamed;
    Wide emitted = 0;
    for (const auto& range : ranges)
      emitted += stream_edges(h, range, [&](Index p, Index q) { streamed.emplace_back(p, q); });
    r.expect(emitted == static_cast<Wide>(streamed.size()), [&] { return where("emitted count"); });

    const SparseMatrix c = kron_materialize(a.adjacency(), b.adjacency());
    std::vector<std::pair<Index, Index>> expected;
    c.for_each([&](Index p, Index q, Value) { expected.emplace_back(p, q); });
    std::vector<std::pair<Index, Index>> sorted = streamed;
    std::sort(sorted.begin(), sorted.end());
    r.expect(sorted == expected, [&] { return where("partition completeness"); });
    r.expect(emitted == static_cast<Wide>(a.stored_entries()) * b.stored_entries(),
             [&] { return where("emitted count formula"); });

    std::vector<std::pair<Index, Index>> second;
    for (const auto& range : ranges)
      stream_edges(h, range, [&](Index p, Index q) { second.emplace_back(p, q); });
    r.expect(second == streamed, [&] { return where("determinism"); });

    std::vector<std::pair<Index, Index>> canonical;
    stream_edges(h, {1, a.size()}, [&](Index p, Index q) { canonical.emplace_back(p, q); }, true);
    bool all_le = true;
    for (auto [p, q] : canonical)
      if (p > q) all_le = false;
    std::vector<std::pair<Index, Index>> filtered;
    for (auto [p, q] : streamed)
      if (p <= q) filtered.push_back({p, q});
    r.expect(all_le && canonical == filtered, [&] { return where("canonical mode"); });
  }
  return r;
}

// Neighborhood, egonet, and ground-truth queries against the materialized
// product at sampled vertices.
inline ScenarioResult validate_egonet(std::uint64_t seed, int samples = 100) {
  ScenarioResult r;
  SplitMix64 rng(seed);
  Graph a = validate_detail::random_hollow_undirected(rng, 4, 10);
  Graph b = validate_detail::random_hollow_undirected(rng, 4, 10);
  if (rng.next_below(2) == 0) b = validate_detail::with_random_loops(b, rng);
  const ProductHandle h(a, b);
  const Graph c = Graph::undirected(kron_materialize(a.adjacency(), b.adjacency()));
  const auto [hollow_c, loops_c] = strip_loops(c.adjacency());
  const auto brute = brute_triangles(c);

  for (int s = 0; s < samples && r.ok; ++s) {
    const Index p = 1 + rng.next_below(h.n_c());
    auto where = [&](const std::string& what) {
      return "p=" + std::to_string(p) + ": " + what;
    };
    const auto nbrs = neighbors(h, p);
    std::vector<Index> expected(hollow_c.row_cols(p).begin(), hollow_c.row_cols(p).end());
    r.expect(nbrs == expected, [&] { return where("neighbor list"); });
    r.expect(nbrs.size() == h.degrees().at(p), [&] { return where("neighbor count vs degree"); });
    const Egonet ego = egonet(h, p);
    r.expect(static_cast<Wide>(ego.edge_count) == h.tri_vertex().at(p),
             [&] { return where("egonet edge count vs triangle count"); });
    const auto record = vertex_ground_truth(h, p);
    r.expect(record.degree == h.degrees().at(p) &&
                 record.triangles == static_cast<Wide>(brute.per_vertex[p - 1]),
             [&] { return where("ground truth record"); });
  }
  return r;
}

struct ScenarioSpec {
  std::string name;
  std::function<ScenarioResult(std::uint64_t)> run;
};

inline const std::vector<ScenarioSpec>& validation_scenarios() {
  static const std::vector<ScenarioSpec> scenarios = {
      {"algebra", [](std::uint64_t s) { return validate_algebra(s); }},
      {"undirected-all-regimes", [](std::uint64_t s) { return validate_undirected_all_regimes(s); }},
      {"directed", [](std::uint64_t s) { return validate_directed(s); }},
      {"labeled", [](std::uint64_t s) { return validate_labeled(s); }},
      {"truss-product", [](std::uint64_t s) { return validate_truss_product(s); }},
      {"stream", [](std::uint64_t s) { return validate_stream(s); }},
      {"egonet", [](std::uint64_t s) { return validate_egonet(s); }},
  };
  return scenarios;
}

}  // namespace krontri
