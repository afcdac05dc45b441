#include <catch2/catch_amalgamated.hpp>

#include "krontri/factor_gen.hpp"
#include "krontri/oracle.hpp"
#include "krontri/tri_undirected.hpp"
#include "test_support.hpp"

using namespace krontri;

TEST_CASE("make_clique") {
  const Graph k3 = make_clique(3, false);
  for (Index i = 1; i <= 3; ++i) CHECK(k3.adjacency().row_cols(i).size() == 2);
  CHECK_FALSE(k3.has_loops());

  const Graph single = make_clique(1, false);
  CHECK(single.size() == 1);
  CHECK(single.stored_entries() == 0);

  const Graph j2 = make_clique(2, true);
  CHECK(j2.stored_entries() == 4);
  CHECK(j2.loop_count() == 2);
  CHECK(j2.has_edge(1, 2));
  CHECK(j2.has_edge(1, 1));

  CHECK_THROWS_AS(make_clique(0, false), precondition_error);

  for (Index n = 1; n <= 12; ++n) {
    const Value expected = n >= 3 ? (n - 1) * (n - 2) / 2 : 0;
    for (Value t : triangle_vertex_counts(make_clique(n, false))) CHECK(t == expected);
  }
}

TEST_CASE("make_hub_cycle") {
  const Graph g = make_hub_cycle();
  CHECK(g.size() == 5);
  CHECK(g.edge_count() == 8);
  const TriangleStats stats = triangle_stats(g);
  CHECK(stats.total == 4);
  // hub edges carry 2 triangles, cycle edges 1
  for (Index v = 2; v <= 5; ++v) CHECK(stats.per_edge.at(1, v) == 2);
  for (auto [u, v] : {std::pair<Index, Index>{2, 3}, {3, 4}, {4, 5}, {2, 5}})
    CHECK(stats.per_edge.at(u, v) == 1);
}

TEST_CASE("gen_er") {
  const Graph empty = gen_er(9, 0.0, RngSeed{3}, false, false);
  CHECK(empty.stored_entries() == 0);

  const Graph full = gen_er(6, 1.0, RngSeed{3}, false, false);
  CHECK(full.adjacency() == make_clique(6, false).adjacency());

  const Graph a = gen_er(12, 0.4, RngSeed{7}, false, false);
  const Graph b = gen_er(12, 0.4, RngSeed{7}, false, false);
  CHECK(a.adjacency() == b.adjacency());
  const Graph c = gen_er(12, 0.4, RngSeed{8}, false, false);
  CHECK_FALSE(a.adjacency() == c.adjacency());

  const Graph d = gen_er(10, 0.5, RngSeed{11}, true, false);
  CHECK(d.is_directed());
  CHECK_FALSE(d.has_loops());
  const Graph e = gen_er(10, 0.9, RngSeed{11}, false, true);
  CHECK(e.has_loops());
}

TEST_CASE("gen_trianglecap_pa base cases") {
  const Graph two = gen_trianglecap_pa(2, RngSeed{1});
  CHECK(two.size() == 2);
  CHECK(two.edge_count() == 1);

  // three vertices: either a path (2 edges) or a triangle (3 edges)
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Graph g = gen_trianglecap_pa(3, RngSeed{seed});
    const Wide edges = g.edge_count();
    CHECK((edges == 2 || edges == 3));
    CHECK(ktest::max_edge_triangles(triangle_edge_counts(g)) <= 1);
  }
  CHECK_THROWS_AS(gen_trianglecap_pa(1, RngSeed{0}), precondition_error);
}

TEST_CASE("gen_trianglecap_pa properties") {
  for (std::uint64_t seed : {1, 2, 9}) {
    const Graph g = gen_trianglecap_pa(200, RngSeed{seed});
    CHECK(g.size() == 200);
    CHECK_FALSE(g.has_loops());
    CHECK(ktest::is_connected(g));
    CHECK(ktest::max_edge_triangles(triangle_edge_counts(g)) <= 1);
    const Graph again = gen_trianglecap_pa(200, RngSeed{seed});
    CHECK(g.adjacency() == again.adjacency());
  }
}

TEST_CASE("reduce_to_trianglecap") {
  // a graph already under the cap comes back unchanged
  const Graph capped = gen_trianglecap_pa(40, RngSeed{5});
  const Graph reduced = reduce_to_trianglecap(capped, RngSeed{17});
  CHECK(reduced.adjacency() == capped.adjacency());

  for (const Graph& g : {make_clique(4, false), make_hub_cycle(),
                         gen_er(14, 0.5, RngSeed{21}, false, false)}) {
    if (!ktest::is_connected(g)) continue;
    const Graph out = reduce_to_trianglecap(g, RngSeed{3});
    CHECK(out.size() == g.size());
    CHECK(ktest::is_connected(out));
    CHECK(ktest::max_edge_triangles(triangle_edge_counts(out)) <= 1);
    // only ever deletes edges
    out.adjacency().for_each([&](Index u, Index v, Value) { CHECK(g.has_edge(u, v)); });
  }

  const Graph disconnected = ktest::ugraph(4, {{1, 2}, {3, 4}});
  CHECK_THROWS_AS(reduce_to_trianglecap(disconnected, RngSeed{0}), precondition_error);
}
