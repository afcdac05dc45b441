#include <catch2/catch_amalgamated.hpp>

#include "krontri/factor_gen.hpp"
#include "krontri/kron_stats.hpp"
#include "krontri/oracle.hpp"
#include "test_support.hpp"

using namespace krontri;

namespace {

// Formula evaluation against brute force on the materialized product, every
// vertex and every edge.
void check_pair(const Graph& a, const Graph& b) {
  const Graph c = Graph::undirected(kron_materialize(a.adjacency(), b.adjacency()));
  const auto [hollow, loops] = strip_loops(c.adjacency());
  const auto brute = brute_triangles(c);
  const ProductDegrees deg = product_degrees(a, b);
  const ProductTriVertex tv = product_tri_vertex(a, b);
  const ProductTriEdge te = product_tri_edge(a, b);
  for (Index p = 1; p <= c.size(); ++p) {
    CHECK(deg.at(p) == hollow.row_cols(p).size());
    CHECK(tv.at(p) == static_cast<Wide>(brute.per_vertex[p - 1]));
  }
  hollow.for_each([&](Index p, Index q, Value) {
    if (p > q) return;
    auto it = brute.per_edge.find({p, q});
    const Value want = it == brute.per_edge.end() ? 0 : it->second;
    CHECK(te.at(p, q) == static_cast<Wide>(want));
  });
  CHECK(product_tri_total(a, b) == brute.total);
}

Graph with_all_loops(const Graph& g) {
  auto entries = g.adjacency().entries();
  for (Index i = 1; i <= g.size(); ++i) entries.push_back({i, i, 1});
  return Graph::undirected(SparseMatrix::from_entries(g.size(), std::move(entries)));
}

}  // namespace

TEST_CASE("clique products, no loops") {
  const Graph k4 = make_clique(4, false);
  const ProductDegrees deg = product_degrees(k4, k4);
  const ProductTriVertex tv = product_tri_vertex(k4, k4);
  const ProductTriEdge te = product_tri_edge(k4, k4);
  for (Index p = 1; p <= 16; ++p) {
    CHECK(deg.at(p) == 9);
    CHECK(tv.at(p) == 18);
  }
  const SparseMatrix c = kron_materialize(k4.adjacency(), k4.adjacency());
  c.for_each([&](Index p, Index q, Value) { CHECK(te.at(p, q) == 4); });
  check_pair(k4, k4);
}

TEST_CASE("clique times loop-clique") {
  const Graph k3 = make_clique(3, false);
  const Graph j2 = make_clique(2, true);
  const ProductDegrees deg = product_degrees(k3, j2);
  const ProductTriVertex tv = product_tri_vertex(k3, j2);
  const ProductTriEdge te = product_tri_edge(k3, j2);
  CHECK(tv.regime() == LoopRegime::b_only);
  for (Index p = 1; p <= 6; ++p) {
    CHECK(deg.at(p) == 4);  // (n_A - 1) n_B
    CHECK(tv.at(p) == 4);
  }
  kron_materialize(k3.adjacency(), j2.adjacency()).for_each([&](Index p, Index q, Value) {
    if (p != q) CHECK(te.at(p, q) == 2);
  });
  check_pair(k3, j2);
}

TEST_CASE("loop-clique squared is a clique") {
  const Graph j3 = make_clique(3, true);
  const ProductDegrees deg = product_degrees(j3, j3);
  const ProductTriVertex tv = product_tri_vertex(j3, j3);
  const ProductTriEdge te = product_tri_edge(j3, j3);
  CHECK(tv.regime() == LoopRegime::both);
  for (Index p = 1; p <= 9; ++p) {
    CHECK(deg.at(p) == 8);
    CHECK(tv.at(p) == 28);  // C(8,2)
  }
  for (Index p = 1; p <= 9; ++p)
    for (Index q = 1; q <= 9; ++q)
      CHECK(te.at(p, q) == (p == q ? 0 : 7));
  check_pair(j3, j3);
}

TEST_CASE("clique identities across sizes") {
  for (Index na = 3; na <= 6; ++na)
    for (Index nb = 3; nb <= 6; ++nb) {
      const Index n = na * nb;
      const ProductTriVertex tv = product_tri_vertex(make_clique(na, false), make_clique(nb, false));
      const Wide expected = Wide{n + 1 - na - nb} * (n + 4 - 2 * na - 2 * nb) / 2;
      CHECK(tv.at(1) == expected);

      const ProductTriVertex tvb = product_tri_vertex(make_clique(na, false), make_clique(nb, true));
      CHECK(tvb.at(1) == Wide{n - nb} * (n - 2 * nb) / 2);
    }
}

TEST_CASE("left-only loops are rejected with swap guidance") {
  const Graph a = make_clique(3, true);
  const Graph b = make_clique(3, false);
  CHECK_THROWS_WITH(product_tri_vertex(a, b), Catch::Matchers::ContainsSubstring("swap"));
  CHECK_THROWS_AS(product_degrees(a, b), precondition_error);
  CHECK_THROWS_AS(product_tri_total(a, b), precondition_error);
}

TEST_CASE("directed factors are rejected") {
  const Graph d = ktest::dgraph(3, {{1, 2}, {2, 3}, {3, 1}});
  const Graph u = make_clique(3, false);
  CHECK_THROWS_AS(product_degrees(d, u), precondition_error);
  CHECK_THROWS_AS(product_tri_vertex(u, d), precondition_error);
}

TEST_CASE("loop-free products have even counts and multiplicative degree maxima") {
  SplitMix64 rng(31);
  for (int iter = 0; iter < 8; ++iter) {
    const Graph a = gen_er(4 + rng.next_below(8), 0.5, RngSeed{rng.next()}, false, false);
    const Graph b = gen_er(4 + rng.next_below(8), 0.5, RngSeed{rng.next()}, false, false);
    const ProductTriVertex tv = product_tri_vertex(a, b);
    for (Index p = 1; p <= a.size() * b.size(); ++p) CHECK(tv.at(p) % 2 == 0);
    CHECK(product_tri_total(a, b) == Wide{6} * triangle_total(a) * triangle_total(b));

    Value max_da = 0, max_db = 0;
    for (Index i = 1; i <= a.size(); ++i)
      max_da = std::max<Value>(max_da, a.adjacency().row_cols(i).size());
    for (Index k = 1; k <= b.size(); ++k)
      max_db = std::max<Value>(max_db, b.adjacency().row_cols(k).size());
    CHECK(product_degrees(a, b).max() == max_da * max_db);
  }
}

TEST_CASE("hub-cycle squared totals") {
  const Graph hub = make_hub_cycle();
  CHECK(product_tri_total(hub, hub) == 96);
  const ProductManifestStats m = product_manifest(hub, hub);
  CHECK(m.n_c == 25);
  CHECK(m.undirected_edges == 128);
  CHECK(m.triangle_total == 96);
}

TEST_CASE("triangle-free factor kills the product") {
  const Graph path = ktest::ugraph(4, {{1, 2}, {2, 3}, {3, 4}});
  CHECK(product_tri_total(path, make_clique(5, false)) == 0);
  CHECK(product_tri_total(make_clique(5, false), path) == 0);
}

TEST_CASE("product_manifest counts") {
  const Graph k2 = make_clique(2, false);
  const ProductManifestStats m = product_manifest(k2, k2);
  CHECK(m.n_c == 4);
  CHECK(m.stored_entries == 4);
  CHECK(m.loop_count == 0);
  CHECK(m.undirected_edges == 2);
  CHECK(m.triangle_total == 0);

  const Graph j3 = make_clique(3, true);
  const ProductManifestStats mj = product_manifest(j3, j3);
  CHECK(mj.n_c == 9);
  CHECK(mj.loop_count == 9);
  CHECK(mj.stored_entries == 81);
  CHECK(mj.undirected_edges == (81 - 9) / 2 + 9);
}

TEST_CASE("one random pair per regime against brute force") {
  SplitMix64 rng(77);
  const Graph a0 = gen_er(9, 0.45, RngSeed{rng.next()}, false, false);
  const Graph b0 = gen_er(7, 0.5, RngSeed{rng.next()}, false, false);
  check_pair(a0, b0);
  check_pair(a0, with_all_loops(b0));
  check_pair(with_all_loops(a0), with_all_loops(b0));
}

TEST_CASE("guarded full-vector export") {
  const Graph k4 = make_clique(4, false);
  const auto degrees = product_degrees(k4, k4).export_vector();
  CHECK(degrees == std::vector<Value>(16, 9));
  const auto triangles = product_tri_vertex(k4, k4).export_vector();
  CHECK(triangles == std::vector<Wide>(16, 18));

  // 2000 x 2000 exceeds the guard unless overridden
  const Graph big = Graph::undirected(SparseMatrix(2000));
  const ProductDegrees deg = product_degrees(big, big);
  CHECK_THROWS_AS(deg.export_vector(), precondition_error);
  CHECK(product_degrees(big, make_clique(2, false)).export_vector() ==
        std::vector<Value>(4000, 0));
}

TEST_CASE("adding loops to B multiplies triangles by the trace identity") {
  // With B = A + I: tau(C) = tau_A * (6 tau_A + 6 m_A + n_A).
  for (std::uint64_t seed : {4, 9}) {
    const Graph a = gen_er(11, 0.5, RngSeed{seed}, false, false);
    const Graph b = with_all_loops(a);
    const Wide tau = triangle_total(a);
    const Wide m = a.edge_count();
    const Wide expected = tau * (6 * tau + 6 * m + a.size());
    CHECK(product_tri_total(a, b) == expected);
  }
}
