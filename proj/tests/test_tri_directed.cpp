#include <catch2/catch_amalgamated.hpp>

#include "krontri/factor_gen.hpp"
#include "krontri/kron_stats.hpp"
#include "krontri/oracle.hpp"
#include "krontri/tri_directed.hpp"
#include "test_support.hpp"

using namespace krontri;
using ktest::dgraph;

namespace {

const Graph& directed_3cycle() {
  static const Graph g = dgraph(3, {{1, 2}, {2, 3}, {3, 1}});
  return g;
}

Graph symmetric_k3_directed() { return dgraph(3, {{1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 3}, {3, 2}}); }

void check_census_against_oracle(const Graph& g) {
  const auto vertex_census = directed_vertex_census(g);
  const auto edge_census = directed_edge_census(g);
  const auto brute = brute_directed_census(g);
  for (const auto& type : dir_vertex_types()) CHECK(vertex_census.at(type) == brute.vertex.at(type));
  for (const auto& type : dir_edge_types()) {
    const auto& formula = edge_census.at(type);
    const auto& want = brute.edge.at(type);
    std::size_t entries = 0;
    formula.for_each([&](Index i, Index j, Value v) {
      ++entries;
      auto it = want.find({i, j});
      REQUIRE(it != want.end());
      CHECK(it->second == v);
    });
    CHECK(entries == want.size());
  }
}

}  // namespace

TEST_CASE("split_reciprocal_directed") {
  const Graph sym = symmetric_k3_directed();
  const auto sym_parts = split_reciprocal_directed(sym);
  CHECK(sym_parts.one_way.nnz() == 0);
  CHECK(sym_parts.reciprocal == sym.adjacency());

  const auto cyc_parts = split_reciprocal_directed(directed_3cycle());
  CHECK(cyc_parts.reciprocal.nnz() == 0);
  CHECK(cyc_parts.one_way == directed_3cycle().adjacency());

  SplitMix64 rng(3);
  for (int iter = 0; iter < 5; ++iter) {
    const Graph g = gen_er(9, 0.45, RngSeed{rng.next()}, true, false);
    const auto parts = split_reciprocal_directed(g);
    CHECK(add(parts.reciprocal, parts.one_way) == g.adjacency());
    CHECK(parts.reciprocal.is_symmetric());
    CHECK(hadamard(parts.one_way, transpose(parts.one_way)).nnz() == 0);
    CHECK(parts.undirected.is_symmetric());
  }

  CHECK_THROWS_AS(split_reciprocal_directed(dgraph(2, {{1, 1}, {1, 2}})), precondition_error);
}

TEST_CASE("directed_degrees") {
  const auto cyc = directed_degrees(directed_3cycle());
  CHECK(cyc.reciprocal == std::vector<Value>(3, 0));
  CHECK(cyc.directed_out == std::vector<Value>(3, 1));
  CHECK(cyc.directed_in == std::vector<Value>(3, 1));

  const auto sym = directed_degrees(symmetric_k3_directed());
  CHECK(sym.reciprocal == std::vector<Value>(3, 2));
  CHECK(sym.directed_out == std::vector<Value>(3, 0));
  CHECK(sym.directed_in == std::vector<Value>(3, 0));

  const Graph g = gen_er(10, 0.4, RngSeed{12}, true, false);
  const auto deg = directed_degrees(g);
  const auto out_total = row_sums(g.adjacency());
  const auto in_total = col_sums(g.adjacency());
  for (Index i = 1; i <= g.size(); ++i) {
    CHECK(out_total[i - 1] == deg.reciprocal[i - 1] + deg.directed_out[i - 1]);
    CHECK(in_total[i - 1] == deg.reciprocal[i - 1] + deg.directed_in[i - 1]);
  }
}

TEST_CASE("census on canonical fixtures") {
  const auto cyc = directed_vertex_census(directed_3cycle());
  CHECK(cyc.at("st+") == std::vector<Value>(3, 1));
  for (const auto& type : dir_vertex_types())
    if (type != "st+") CHECK(cyc.at(type) == std::vector<Value>(3, 0));

  const auto sym = directed_vertex_census(symmetric_k3_directed());
  CHECK(sym.at("uuo") == std::vector<Value>(3, 1));
  for (const auto& type : dir_vertex_types())
    if (type != "uuo") CHECK(sym.at(type) == std::vector<Value>(3, 0));

  // From an arc of a directed 3-cycle, both remaining edges run against the
  // walk from its tail to its head, so the cyclic triangle lands in +--
  // (A_d o (A_d^t)^2); A_d o A_d^2 counts the transitive triangle instead.
  const auto cyc_edges = directed_edge_census(directed_3cycle());
  CHECK(cyc_edges.at("+--").nnz() == 3);
  cyc_edges.at("+--").for_each([](Index, Index, Value v) { CHECK(v == 1); });
  for (const auto& type : dir_edge_types())
    if (type != "+--") CHECK(cyc_edges.at(type).nnz() == 0);

  const Graph transitive = dgraph(3, {{1, 2}, {1, 3}, {3, 2}});
  const auto trans_edges = directed_edge_census(transitive);
  CHECK(trans_edges.at("+++").at(1, 2) == 1);  // shortcut edge of i->y->j
  CHECK(trans_edges.at("+-+").at(1, 3) == 1);
  CHECK(trans_edges.at("++-").at(3, 2) == 1);

  const auto sym_edges = directed_edge_census(symmetric_k3_directed());
  CHECK(sym_edges.at("ooo").nnz() == 6);
  sym_edges.at("ooo").for_each([](Index, Index, Value v) { CHECK(v == 1); });

  const auto empty = directed_vertex_census(Graph::directed(SparseMatrix(4)));
  for (const auto& type : dir_vertex_types()) CHECK(empty.at(type) == std::vector<Value>(4, 0));
}

TEST_CASE("alias resolution") {
  CHECK(canonical_dir_vertex_type("us+") == "su-");
  CHECK(canonical_dir_vertex_type("ts-") == "st+");
  CHECK(canonical_dir_vertex_type("uu-") == "uu+");
  CHECK(canonical_dir_vertex_type("tuo") == "uto");
  CHECK(canonical_dir_vertex_type("sso") == "sso");
  CHECK_THROWS_AS(canonical_dir_vertex_type("xyz"), precondition_error);

  CHECK(canonical_dir_edge_type("o--") == "o++");
  CHECK(canonical_dir_edge_type("oo+") == "o+o");
  CHECK(canonical_dir_edge_type("oo-") == "o-o");
  CHECK(canonical_dir_edge_type("+-+") == "+-+");
  CHECK_THROWS_AS(canonical_dir_edge_type("++*"), precondition_error);

  const Graph g = gen_er(8, 0.5, RngSeed{19}, true, false);
  const auto census = directed_vertex_census(g);
  CHECK(census_vertex_type(census, "us+") == census.at("su-"));
  CHECK(census_vertex_type(census, "tt-") == census.at("tt+"));
  const auto edges = directed_edge_census(g);
  CHECK(census_edge_type(edges, "o--") == edges.at("o++"));
}

TEST_CASE("census equals oracle on random digraphs") {
  SplitMix64 rng(41);
  for (int iter = 0; iter < 10; ++iter) {
    const Index n = 4 + rng.next_below(7);
    check_census_against_oracle(gen_er(n, 0.2 + 0.06 * rng.next_below(8),
                                       RngSeed{rng.next()}, true, false));
  }
}

TEST_CASE("typed counts sum to the undirected census") {
  SplitMix64 rng(53);
  for (int iter = 0; iter < 6; ++iter) {
    const Graph g = gen_er(9, 0.4, RngSeed{rng.next()}, true, false);
    const auto census = directed_vertex_census(g);
    const Graph und = Graph::undirected(split_reciprocal_directed(g).undirected);
    const auto t = triangle_vertex_counts(und);
    for (Index i = 1; i <= g.size(); ++i) {
      Wide sum = 0;
      for (const auto& type : dir_vertex_types()) sum += census.at(type)[i - 1];
      CHECK(sum == static_cast<Wide>(t[i - 1]));
    }
  }
}

TEST_CASE("fully symmetric graphs only have uuo and ooo") {
  const Graph g = gen_er(9, 0.5, RngSeed{91}, false, false);
  const Graph as_directed = Graph::directed(g.adjacency());
  const auto census = directed_vertex_census(as_directed);
  CHECK(census.at("uuo") == triangle_vertex_counts(g));
  const auto edges = directed_edge_census(as_directed);
  CHECK(edges.at("ooo") == triangle_edge_counts(g));
}

TEST_CASE("directed product theorems") {
  const Graph k3 = make_clique(3, false);
  const DirectedProductVertex pv = product_directed_vertex(directed_3cycle(), k3);
  for (Index p = 1; p <= 9; ++p) {
    CHECK(pv.at("st+", p) == 2);
    for (const auto& type : dir_vertex_types())
      if (type != "st+") CHECK(pv.at(type, p) == 0);
  }

  const Graph j2 = make_clique(2, true);
  const DirectedProductVertex pv_loops = product_directed_vertex(directed_3cycle(), j2);
  for (Index p = 1; p <= 6; ++p) CHECK(pv_loops.at("st+", p) == 4);

  const Graph tree = ktest::ugraph(4, {{1, 2}, {2, 3}, {3, 4}});
  const DirectedProductVertex pv_tree = product_directed_vertex(directed_3cycle(), tree);
  for (Index p = 1; p <= 12; ++p)
    for (const auto& type : dir_vertex_types()) CHECK(pv_tree.at(type, p) == 0);

  const DirectedProductEdge pe = product_directed_edge(directed_3cycle(), k3);
  const SparseMatrix c = kron_materialize(directed_3cycle().adjacency(), k3.adjacency());
  c.for_each([&](Index p, Index q, Value) { CHECK(pe.at("+--", p, q) == 1); });

  // all-reciprocal left factor: Delta^(ooo) matches the undirected product
  const Graph hub = make_hub_cycle();
  const Graph hub_directed = Graph::directed(hub.adjacency());
  const DirectedProductEdge pe_hub = product_directed_edge(hub_directed, k3);
  const ProductTriEdge undirected = product_tri_edge(hub, k3);
  kron_materialize(hub.adjacency(), k3.adjacency()).for_each([&](Index p, Index q, Value) {
    CHECK(pe_hub.at("ooo", p, q) == undirected.at(p, q));
    CHECK(pe_hub.at("+++", p, q) == 0);
  });
}

TEST_CASE("directed product preconditions") {
  const Graph nonsym = dgraph(3, {{1, 2}, {2, 3}});
  CHECK_THROWS_AS(product_directed_vertex(directed_3cycle(), nonsym), precondition_error);
  const Graph loopy = dgraph(3, {{1, 1}, {1, 2}, {2, 1}, {2, 3}, {3, 2}, {1, 3}, {3, 1}});
  CHECK_THROWS_AS(product_directed_vertex(loopy, make_clique(3, false)), precondition_error);
}

TEST_CASE("directed product against oracle on materialized products") {
  SplitMix64 rng(67);
  for (int iter = 0; iter < 4; ++iter) {
    const Graph a = gen_er(3 + rng.next_below(5), 0.4, RngSeed{rng.next()}, true, false);
    Graph b = gen_er(2 + rng.next_below(5), 0.5, RngSeed{rng.next()}, false, false);
    if (iter % 2 == 0) {
      auto entries = b.adjacency().entries();
      entries.push_back({1, 1, 1});
      b = Graph::undirected(SparseMatrix::from_entries(b.size(), std::move(entries)));
    }
    const DirectedProductVertex pv = product_directed_vertex(a, b);
    const DirectedProductEdge pe = product_directed_edge(a, b);
    const Graph c = Graph::directed(kron_materialize(a.adjacency(), b.adjacency()));
    const auto brute = brute_directed_census(c);
    for (const auto& type : dir_vertex_types())
      for (Index p = 1; p <= c.size(); ++p)
        CHECK(pv.at(type, p) == static_cast<Wide>(brute.vertex.at(type)[p - 1]));
    c.adjacency().for_each([&](Index p, Index q, Value) {
      for (const auto& type : dir_edge_types()) {
        auto it = brute.edge.at(type).find({p, q});
        const Value want = it == brute.edge.at(type).end() ? 0 : it->second;
        CHECK(pe.at(type, p, q) == static_cast<Wide>(want));
      }
    });
  }
}
