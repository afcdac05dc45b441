// Acceptance suite: one criterion per line, PASS/FAIL/SKIP, nonzero exit on
// any failure. Every tolerance here is exact equality; runtime budgets are
// asserted where stated.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "krontri/factor_gen.hpp"
#include "krontri/io.hpp"
#include "krontri/kron_stats.hpp"
#include "krontri/oracle.hpp"
#include "krontri/product_stream.hpp"
#include "krontri/tri_undirected.hpp"
#include "krontri/truss.hpp"
#include "krontri/validate.hpp"

using namespace krontri;

namespace {

constexpr std::uint64_t kSuiteSeed = 20260810;

enum class Outcome { pass, fail, skip };

struct CriterionResult {
  Outcome outcome = Outcome::pass;
  std::string detail;
};

struct Failure {
  std::string what;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure{what};
}

void require_scenario(const ScenarioResult& r, const std::string& name) {
  require(r.ok, name + ": " + r.first_divergence);
}

// ---------------------------------------------------------------------------
// Criterion 1: clique product identities for 3 <= n_A, n_B <= 8.

CriterionResult criterion_cliques() {
  std::uint64_t checks = 0;
  auto check_family = [&](const Graph& a, const Graph& b, const std::string& label) {
    const Graph c = Graph::undirected(kron_materialize(a.adjacency(), b.adjacency()));
    const auto [hollow, loops] = strip_loops(c.adjacency());
    const auto brute = brute_triangles(c);
    const ProductDegrees deg = product_degrees(a, b);
    const ProductTriVertex tv = product_tri_vertex(a, b);
    const ProductTriEdge te = product_tri_edge(a, b);
    for (Index p = 1; p <= c.size(); ++p) {
      require(deg.at(p) == hollow.row_cols(p).size(), label + ": degree at " + std::to_string(p));
      require(tv.at(p) == static_cast<Wide>(brute.per_vertex[p - 1]),
              label + ": vertex triangles at " + std::to_string(p));
      checks += 2;
    }
    hollow.for_each([&](Index p, Index q, Value) {
      if (p > q) return;
      auto it = brute.per_edge.find({p, q});
      const Value want = it == brute.per_edge.end() ? 0 : it->second;
      require(te.at(p, q) == static_cast<Wide>(want), label + ": edge triangles");
      ++checks;
    });
  };

  for (Index na = 3; na <= 8; ++na)
    for (Index nb = 3; nb <= 8; ++nb) {
      const std::string sz = std::to_string(na) + "x" + std::to_string(nb);
      check_family(make_clique(na, false), make_clique(nb, false), "K(x)K " + sz);
      check_family(make_clique(na, false), make_clique(nb, true), "K(x)J " + sz);
      check_family(make_clique(na, true), make_clique(nb, true), "J(x)J " + sz);
    }

  // spot values
  const Graph k4 = make_clique(4, false);
  require(product_degrees(k4, k4).at(5) == 9, "K4xK4 degree");
  require(product_tri_vertex(k4, k4).at(5) == 18, "K4xK4 vertex triangles");
  require(product_tri_edge(k4, k4).at(1, 6) == 4, "K4xK4 edge triangles");
  return {Outcome::pass, std::to_string(checks) + " exact comparisons"};
}

// ---------------------------------------------------------------------------
// Criterion 2: the hub-cycle squared truss counterexample.

CriterionResult criterion_truss_example() {
  const CounterexampleReport r = verify_counterexample();
  require(r.delta_histogram == std::map<Value, std::size_t>{{1, 32}, {2, 64}, {4, 32}},
          "edge triangle histogram");
  require(r.truss3_size == 128, "|T^(3)| = " + std::to_string(r.truss3_size));
  require(r.truss4_size == 80, "|T^(4)| = " + std::to_string(r.truss4_size));
  require(r.truss5_size == 0, "|T^(5)| = " + std::to_string(r.truss5_size));
  require(r.triangle_total == 96, "triangle total");
  return {Outcome::pass, "histogram {1:32,2:64,4:32}, trusses 128/80/0, 96 triangles"};
}

// ---------------------------------------------------------------------------
// Criterion 3: oracle equivalence, 50 seeded pairs per suite.

CriterionResult criterion_oracle_equivalence() {
  const ScenarioResult u = validate_undirected_all_regimes(kSuiteSeed, 50);
  require_scenario(u, "undirected");
  const ScenarioResult d = validate_directed(kSuiteSeed, 50);
  require_scenario(d, "directed");
  const ScenarioResult l = validate_labeled(kSuiteSeed, 50);
  require_scenario(l, "labeled");
  return {Outcome::pass, to_string(static_cast<Wide>(u.checks + d.checks + l.checks)) +
                             " exact comparisons across 150 undirected + 50 directed + 50 "
                             "labeled factor pairs"};
}

// ---------------------------------------------------------------------------
// Criterion 4: the product truss theorem on triangle-capped right factors.

CriterionResult criterion_product_truss() {
  const ScenarioResult r = validate_truss_product(kSuiteSeed, 20);
  require_scenario(r, "truss-product");
  return {Outcome::pass, std::to_string(r.checks) + " checks over 20 pairs; hub-cycle B rejected"};
}

// ---------------------------------------------------------------------------
// Criterion 5: web-NotreDame reproduction (needs the dataset file).

std::filesystem::path notredame_path() {
  if (const char* env = std::getenv("KRONTRI_NOTREDAME")) return env;
  return "data/web-NotreDame.txt";
}

CriterionResult criterion_notredame() {
  const auto path = notredame_path();
  if (!std::filesystem::exists(path))
    return {Outcome::skip, "dataset not found at " + path.string() +
                               " (set KRONTRI_NOTREDAME to enable)"};

  LoadOptions opt;
  opt.undirected = true;
  opt.strip_loops = true;
  const Graph a = load_edge_list(path, opt);
  require(a.size() == 325729, "vertex count " + std::to_string(a.size()));
  require(a.edge_count() == 1090108, "edge count " + to_string(a.edge_count()));

  const auto t0 = std::chrono::steady_clock::now();
  const Wide tau = triangle_total(a);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require(tau == 4308495, "triangle count " + to_string(tau));
  require(seconds <= 60.0, "factor triangle computation took " + std::to_string(seconds) + " s");

  const ProductManifestStats aa = product_manifest(a, a);
  require(aa.n_c == Wide{106099381441ULL}, "A(x)A vertices " + to_string(aa.n_c));
  require(aa.undirected_edges == Wide{2376670903328ULL}, "A(x)A edges " + to_string(aa.undirected_edges));
  require(aa.triangle_total == Wide{111378774990150ULL},
          "A(x)A triangles " + to_string(aa.triangle_total));

  auto entries = a.adjacency().entries();
  for (Index i = 1; i <= a.size(); ++i) entries.push_back({i, i, 1});
  const Graph b = Graph::undirected(SparseMatrix::from_entries(a.size(), std::move(entries)));
  const ProductManifestStats ab = product_manifest(a, b);
  require(ab.undirected_edges == Wide{2731750692060ULL},
          "A(x)B edges " + to_string(ab.undirected_edges));
  const Wide expected_ab =
      tau * (6 * tau + 6 * static_cast<Wide>(a.edge_count()) + a.size());
  require(expected_ab == Wide{140962525962765ULL}, "closed-form A(x)B triangle total");
  require(ab.triangle_total == expected_ab, "A(x)B triangles " + to_string(ab.triangle_total));
  return {Outcome::pass,
          "325729 vertices / 1090108 edges / 4308495 triangles; products exact (" +
              std::to_string(seconds) + " s for the factor pass)"};
}

// ---------------------------------------------------------------------------
// Criterion 6: egonet validation at degree-3 vertices carrying 1/2/3
// triangles. Runs on the dataset when present, otherwise on a fixed
// synthetic factor with the same structure.

CriterionResult criterion_egonets() {
  const auto path = notredame_path();
  Graph a = [&] {
    if (std::filesystem::exists(path)) {
      LoadOptions opt;
      opt.undirected = true;
      opt.strip_loops = true;
      return load_edge_list(path, opt);
    }
    // three gadgets: an apex of a K_4 (vertex 1), a degree-3 vertex with two
    // triangles (5), and one with a single triangle (9)
    std::vector<Entry> e;
    auto edge = [&](Index u, Index v) {
      e.push_back({u, v, 1});
      e.push_back({v, u, 1});
    };
    edge(1, 2); edge(1, 3); edge(1, 4); edge(2, 3); edge(2, 4); edge(3, 4);
    edge(5, 6); edge(5, 7); edge(5, 8); edge(6, 7); edge(7, 8);
    edge(9, 10); edge(9, 11); edge(9, 12); edge(10, 11);
    return Graph::undirected(SparseMatrix::from_entries(12, std::move(e)));
  }();
  const bool synthetic = !std::filesystem::exists(path);
  const std::vector<Index> picks =
      synthetic ? std::vector<Index>{9, 5, 1} : std::vector<Index>{76, 231, 85};

  const auto t = triangle_vertex_counts(a);
  for (std::size_t idx = 0; idx < picks.size(); ++idx) {
    const Index v = picks[idx];
    require(a.adjacency().row_cols(v).size() == 3,
            "vertex " + std::to_string(v) + " must have degree 3");
    require(t[v - 1] == idx + 1, "vertex " + std::to_string(v) + " must sit in " +
                                     std::to_string(idx + 1) + " triangles");
  }

  auto entries = a.adjacency().entries();
  for (Index i = 1; i <= a.size(); ++i) entries.push_back({i, i, 1});
  const Graph b = Graph::undirected(SparseMatrix::from_entries(a.size(), std::move(entries)));

  const ProductHandle haa(a, a);
  const ProductHandle hab(a, b);
  for (Index i : picks)
    for (Index k : picks) {
      const Index p = idx_join(i, k, a.size());
      const Egonet ego_aa = egonet(haa, p);
      require(ego_aa.vertices.size() == 9, "A(x)A egonet degree at p=" + std::to_string(p));
      const Wide want_aa = Wide{2} * t[i - 1] * t[k - 1];
      require(static_cast<Wide>(ego_aa.edge_count) == want_aa,
              "A(x)A egonet edge count at p=" + std::to_string(p));
      require(haa.tri_vertex().at(p) == want_aa, "A(x)A formula at p=" + std::to_string(p));

      const Egonet ego_ab = egonet(hab, p);
      require(ego_ab.vertices.size() == 12, "A(x)B egonet degree at p=" + std::to_string(p));
      const Wide want_ab = static_cast<Wide>(t[i - 1]) * (2 * t[k - 1] + 3 * 3 + 1);
      require(static_cast<Wide>(ego_ab.edge_count) == want_ab,
              "A(x)B egonet edge count at p=" + std::to_string(p));
      require(hab.tri_vertex().at(p) == want_ab, "A(x)B formula at p=" + std::to_string(p));
    }
  return {Outcome::pass, std::string(synthetic ? "synthetic factors" : "web-NotreDame") +
                             ": 9 egonets degree 9 (A(x)A) and 12 (A(x)B), triangle counts exact"};
}

// ---------------------------------------------------------------------------
// Criterion 7: offline property suites.

CriterionResult criterion_properties() {
  const ScenarioResult algebra = validate_algebra(kSuiteSeed);
  require_scenario(algebra, "algebra");
  const ScenarioResult stream = validate_stream(kSuiteSeed, 12);
  require_scenario(stream, "stream");
  const ScenarioResult ego = validate_egonet(kSuiteSeed, 100);
  require_scenario(ego, "egonet");

  // determinism under fixed seeds
  require(gen_er(40, 0.3, RngSeed{9}, false, false).adjacency() ==
              gen_er(40, 0.3, RngSeed{9}, false, false).adjacency(),
          "gen_er determinism");
  require(gen_trianglecap_pa(120, RngSeed{9}).adjacency() ==
              gen_trianglecap_pa(120, RngSeed{9}).adjacency(),
          "triangle-cap generator determinism");

  // parity of vertex counts in the loop-free regime
  const Graph a = gen_er(9, 0.5, RngSeed{17}, false, false);
  const Graph b = gen_er(8, 0.5, RngSeed{18}, false, false);
  const ProductTriVertex tv = product_tri_vertex(a, b);
  for (Index p = 1; p <= a.size() * b.size(); ++p)
    require(tv.at(p) % 2 == 0, "loop-free parity at p=" + std::to_string(p));

  return {Outcome::pass,
          std::to_string(algebra.checks + stream.checks + ego.checks) +
              " property checks, determinism and parity included"};
}

struct Criterion {
  std::string name;
  std::function<CriterionResult()> run;
  double budget_seconds;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"clique identities (K(x)K, K(x)J, J(x)J, 3..8)", criterion_cliques, 10.0},
      {"hub-cycle squared truss decomposition", criterion_truss_example, 1.0},
      {"oracle equivalence (undirected/directed/labeled)", criterion_oracle_equivalence, 60.0},
      {"product truss theorem on triangle-capped factors", criterion_product_truss, 60.0},
      {"web-NotreDame reproduction", criterion_notredame, 0.0},
      {"egonet validation at degree-3 vertices", criterion_egonets, 0.0},
      {"offline property suites", criterion_properties, 0.0},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult result;
    try {
      result = c.run();
    } catch (const Failure& f) {
      result = {Outcome::fail, f.what};
    } catch (const std::exception& e) {
      result = {Outcome::fail, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (result.outcome == Outcome::pass && c.budget_seconds > 0 && seconds > c.budget_seconds)
      result = {Outcome::fail, "exceeded the " + std::to_string(c.budget_seconds) + " s budget"};

    const char* tag = result.outcome == Outcome::pass   ? "PASS"
                      : result.outcome == Outcome::skip ? "SKIP"
                                                        : "FAIL";
    std::ostringstream line;
    line << "[" << tag << "] criterion " << (i + 1) << ": " << c.name;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << " (" << seconds << " s)";
    if (!result.detail.empty()) line << " -- " << result.detail;
    std::cout << line.str() << '\n';
    if (result.outcome == Outcome::fail) ++failures;
  }
  if (failures > 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  return 0;
}
