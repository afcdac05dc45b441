// Command line surface: factor generation, statistics reports, product
// manifests, edge streaming, ground-truth queries, truss decompositions, and
// the named validation suites.
//
// Exit codes: 0 success, 1 validation failure, 2 usage or precondition error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "krontri/factor_gen.hpp"
#include "krontri/io.hpp"
#include "krontri/kron_stats.hpp"
#include "krontri/oracle.hpp"
#include "krontri/product_stream.hpp"
#include "krontri/tri_directed.hpp"
#include "krontri/tri_labeled.hpp"
#include "krontri/tri_undirected.hpp"
#include "krontri/truss.hpp"
#include "krontri/validate.hpp"

namespace {

using namespace krontri;

struct FactorCliOptions {
  std::string path;
  bool undirected = false;
  bool strip_loops = false;
  bool add_loops = false;
  std::uint64_t n_override = 0;

  LoadOptions to_load_options() const {
    LoadOptions opt;
    opt.undirected = undirected;
    opt.strip_loops = strip_loops;
    opt.add_loops = add_loops;
    if (n_override > 0) opt.n_override = n_override;
    return opt;
  }
};

void add_factor_options(CLI::App* cmd, FactorCliOptions& f, const std::string& prefix,
                        const std::string& what) {
  cmd->add_option("--" + prefix, f.path, what)->required();
  cmd->add_flag("--" + prefix + "-undirected", f.undirected, "symmetrize " + what + " on load");
  cmd->add_flag("--" + prefix + "-strip-loops", f.strip_loops, "drop self loops from " + what);
  cmd->add_flag("--" + prefix + "-add-loops", f.add_loops, "add a loop at every vertex of " + what);
  cmd->add_option("--" + prefix + "-n", f.n_override, "vertex count override for " + what);
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw precondition_error("cannot write: " + path);
  return file;
}

BlockRange parse_rows(const std::string& spec, Index n_a) {
  if (spec.empty()) return {1, n_a};
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw precondition_error("--rows expects lo:hi");
  try {
    return {std::stoull(spec.substr(0, colon)), std::stoull(spec.substr(colon + 1))};
  } catch (const std::exception&) {
    throw precondition_error("--rows expects lo:hi");
  }
}

int run_gen_factor(const std::string& kind, Index n, double prob, std::uint64_t seed,
                   bool directed, bool loops, const std::string& out,
                   const std::string& labels_out, Index num_labels,
                   const std::string& reduce_input) {
  Graph g = [&] {
    if (kind == "clique") return make_clique(n, false);
    if (kind == "loop-clique") return make_clique(n, true);
    if (kind == "hub-cycle") return make_hub_cycle();
    if (kind == "er") return gen_er(n, prob, RngSeed{seed}, directed, loops);
    if (kind == "pa-trianglecap") return gen_trianglecap_pa(n, RngSeed{seed});
    if (kind == "reduce-trianglecap") {
      if (reduce_input.empty())
        throw precondition_error("reduce-trianglecap needs --input");
      LoadOptions opt;
      opt.undirected = true;
      return reduce_to_trianglecap(load_edge_list(reduce_input, opt), RngSeed{seed});
    }
    throw precondition_error("unknown factor kind: " + kind);
  }();
  save_edge_list(g, out);
  if (!labels_out.empty())
    save_labels(gen_labels(g.size(), num_labels, RngSeed{seed + 1}), labels_out);
  std::cerr << "wrote " << out << ": n=" << g.size() << " stored_entries=" << g.stored_entries()
            << " loops=" << g.loop_count() << "\n";
  return 0;
}

void print_undirected_stats(std::ostream& os, const Graph& g) {
  const TriangleStats stats = triangle_stats(g);
  const auto [hollow, loop_vec] = strip_loops(g.adjacency());
  os << "G\ttriangles\t" << to_string(stats.total) << '\n';
  const bool clustered = !g.has_loops();
  std::vector<Rational> clust;
  if (clustered) clust = clustering_coefficients(g);
  for (Index i = 1; i <= g.size(); ++i) {
    os << "V\t" << i << '\t' << hollow.row_cols(i).size() << '\t' << stats.per_vertex[i - 1];
    if (clustered) os << '\t' << clust[i - 1].num << '/' << clust[i - 1].den;
    os << '\n';
  }
  hollow.for_each([&](Index u, Index v, Value) {
    if (u > v) return;
    os << "E\t" << u << '\t' << v << '\t' << stats.per_edge.at(u, v) << '\n';
  });
}

void print_directed_stats(std::ostream& os, const Graph& g) {
  const auto deg = directed_degrees(g);
  for (Index i = 1; i <= g.size(); ++i)
    os << "DDEG\t" << i << '\t' << deg.reciprocal[i - 1] << '\t' << deg.directed_out[i - 1] << '\t'
       << deg.directed_in[i - 1] << '\n';
  const auto vertex_census = directed_vertex_census(g);
  for (const auto& type : dir_vertex_types()) {
    const auto& counts = vertex_census.at(type);
    for (Index i = 1; i <= g.size(); ++i)
      if (counts[i - 1] != 0) os << "DV\t" << type << '\t' << i << '\t' << counts[i - 1] << '\n';
  }
  const auto edge_census = directed_edge_census(g);
  for (const auto& type : dir_edge_types())
    edge_census.at(type).for_each([&](Index u, Index v, Value c) {
      os << "DE\t" << type << '\t' << u << '\t' << v << '\t' << c << '\n';
    });
}

void print_labeled_stats(std::ostream& os, const Graph& g) {
  for (const auto& type : all_labeled_vertex_types(g.label_count())) {
    const auto counts = labeled_vertex_counts(g, type);
    for (Index i = 1; i <= g.size(); ++i)
      if (counts[i - 1] != 0)
        os << "LV\t" << type.center << '\t' << type.other_lo << '\t' << type.other_hi << '\t' << i
           << '\t' << counts[i - 1] << '\n';
  }
  for (const auto& type : all_labeled_edge_types(g.label_count()))
    labeled_edge_counts(g, type).for_each([&](Index u, Index v, Value c) {
      os << "LE\t" << type.q1 << '\t' << type.q2 << '\t' << type.q3 << '\t' << u << '\t' << v
         << '\t' << c << '\n';
    });
}

int run_stats(const FactorCliOptions& input, const std::string& labels_path,
              const std::string& out_path) {
  Graph g = load_edge_list(input.path, input.to_load_options());
  if (!labels_path.empty()) g = g.with_labels(load_labels(labels_path, g.size()));
  std::ofstream file;
  std::ostream& os = open_output(file, out_path);
  os << "# " << version_string << " stats\n";
  os << "G\tn\t" << g.size() << '\n';
  os << "G\tdirected\t" << (g.is_directed() ? 1 : 0) << '\n';
  os << "G\tstored_entries\t" << g.stored_entries() << '\n';
  os << "G\tloops\t" << g.loop_count() << '\n';
  os << "G\tedges\t" << to_string(g.edge_count()) << '\n';
  if (g.is_directed()) {
    print_directed_stats(os, g);
  } else {
    print_undirected_stats(os, g);
    if (g.is_labeled()) print_labeled_stats(os, g);
  }
  return 0;
}

int run_kron_manifest(const FactorCliOptions& a, const FactorCliOptions& b,
                      const std::string& a_labels, const std::string& out) {
  std::optional<std::filesystem::path> labels;
  if (!a_labels.empty()) labels = a_labels;
  const Manifest m =
      build_manifest(a.path, a.to_load_options(), b.path, b.to_load_options(), labels);
  save_manifest(m, out);
  std::cerr << "wrote " << out << ": n_C=" << to_string(m.n_c)
            << " edges=" << to_string(m.undirected_edges)
            << " triangles=" << to_string(m.triangle_total) << " regime=" << m.regime << "\n";
  return 0;
}

ProductHandle handle_from_manifest(const std::string& manifest_path) {
  const Manifest m = load_manifest(manifest_path);
  const auto base = std::filesystem::path(manifest_path).parent_path();
  auto [a, b] = load_factors(m, base);
  return ProductHandle(std::move(a), std::move(b));
}

int run_kron_edges(const std::string& manifest_path, const std::string& rows, bool canonical,
                   const std::string& out_path) {
  const ProductHandle h = handle_from_manifest(manifest_path);
  const BlockRange range = parse_rows(rows, h.a().size());
  std::ofstream file;
  std::ostream& os = open_output(file, out_path);
  const Wide emitted =
      stream_edges(h, range, [&](Index p, Index q) { os << p << ' ' << q << '\n'; }, canonical);
  if (!os) throw error("write failure while streaming edges");
  std::cerr << "emitted " << to_string(emitted) << " entries\n";
  return 0;
}

int run_kron_query(const std::string& manifest_path, std::uint64_t vertex,
                   const std::vector<std::uint64_t>& edge) {
  const ProductHandle h = handle_from_manifest(manifest_path);
  std::ostream& os = std::cout;
  if (vertex != 0) {
    const auto r = vertex_ground_truth(h, vertex);
    os << "vertex\t" << r.vertex << '\n';
    os << "a_vertex\t" << r.a_vertex << '\n';
    os << "b_vertex\t" << r.b_vertex << '\n';
    if (r.label) os << "label\t" << *r.label << '\n';
    os << "degree\t" << r.degree << '\n';
    os << "triangles\t" << to_string(r.triangles) << '\n';
    if (r.directed_degrees) {
      os << "reciprocal_degree\t" << r.directed_degrees->reciprocal << '\n';
      os << "directed_out_degree\t" << r.directed_degrees->directed_out << '\n';
      os << "directed_in_degree\t" << r.directed_degrees->directed_in << '\n';
      os << "out_degree\t" << r.directed_degrees->out_total << '\n';
      os << "in_degree\t" << r.directed_degrees->in_total << '\n';
    }
    for (const auto& [type, count] : r.directed_types)
      if (count != 0) os << "dv\t" << type << '\t' << to_string(count) << '\n';
    for (const auto& [type, count] : r.labeled_types)
      if (count != 0)
        os << "lv\t" << type.center << '\t' << type.other_lo << '\t' << type.other_hi << '\t'
           << to_string(count) << '\n';
    return 0;
  }
  const auto r = edge_ground_truth(h, edge[0], edge[1]);
  os << "edge\t" << r.p << '\t' << r.q << '\n';
  os << "present\t" << (r.present ? 1 : 0) << '\n';
  os << "triangles\t" << to_string(r.triangles) << '\n';
  for (const auto& [type, count] : r.directed_types)
    if (count != 0) os << "de\t" << type << '\t' << to_string(count) << '\n';
  for (const auto& [type, count] : r.labeled_types)
    if (count != 0)
      os << "le\t" << type.q1 << '\t' << type.q2 << '\t' << type.q3 << '\t' << to_string(count)
         << '\n';
  return 0;
}

int run_egonet(const std::string& manifest_path, std::uint64_t vertex, std::size_t guard,
               const std::string& out_path) {
  const ProductHandle h = handle_from_manifest(manifest_path);
  const Egonet ego = egonet(h, vertex, guard);
  std::ofstream file;
  std::ostream& os = open_output(file, out_path);
  os << "# egonet of vertex " << vertex << ": " << ego.vertices.size() << " neighbors, "
     << ego.edge_count << " edges\n";
  ego.graph.adjacency().for_each([&](Index u, Index v, Value) {
    if (u > v) return;
    os << ego.vertices[u - 1] << ' ' << ego.vertices[v - 1] << '\n';
  });
  return 0;
}

int run_truss(const FactorCliOptions& input, const std::string& manifest_path,
              const std::string& rows, const std::string& out_path) {
  std::ofstream file;
  std::ostream& os = open_output(file, out_path);
  if (!manifest_path.empty()) {
    const ProductHandle h = handle_from_manifest(manifest_path);
    const ProductTruss pt(h.a(), h.b());
    const BlockRange range = parse_rows(rows, h.a().size());
    stream_edges(h, range,
                 [&](Index p, Index q) { os << p << ' ' << q << ' ' << pt.trussness(p, q) << '\n'; },
                 /*canonical=*/true);
    return 0;
  }
  const Graph g = load_edge_list(input.path, input.to_load_options());
  const TrussDecomposition t = truss_decompose(g);
  for (const auto& [e, k] : t.trussness) os << e.first << ' ' << e.second << ' ' << k << '\n';
  return 0;
}

int run_validate(const std::string& scenario, std::uint64_t seed) {
  bool all_ok = true;
  bool matched = false;
  for (const auto& spec : validation_scenarios()) {
    if (scenario != "all" && scenario != spec.name) continue;
    matched = true;
    const ScenarioResult result = spec.run(seed);
    if (result.ok) {
      std::cout << "PASS " << spec.name << " (" << result.checks << " checks)\n";
    } else {
      std::cout << "FAIL " << spec.name << ": " << result.first_divergence << '\n';
      all_ok = false;
    }
  }
  if (!matched) throw precondition_error("unknown scenario: " + scenario);
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kronecker product graph generator with exact triangle and truss ground truth"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(krontri::version_string));

  // gen-factor
  auto* gen = app.add_subcommand("gen-factor", "generate a factor graph");
  std::string kind;
  std::uint64_t gen_n = 0, gen_seed = 0, num_labels = 3;
  double prob = 0.5;
  bool gen_directed = false, gen_loops = false;
  std::string gen_out, labels_out, reduce_input;
  gen->add_option("--kind", kind,
                  "clique | loop-clique | hub-cycle | er | pa-trianglecap | reduce-trianglecap")
      ->required();
  gen->add_option("--n", gen_n, "vertex count");
  gen->add_option("--prob", prob, "edge probability (er)");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_flag("--directed", gen_directed, "directed output (er)");
  gen->add_flag("--loops", gen_loops, "sample self loops too (er)");
  gen->add_option("--input", reduce_input, "input edge list (reduce-trianglecap)");
  gen->add_option("--out", gen_out, "output edge list")->required();
  gen->add_option("--labels-out", labels_out, "also write a random label file");
  gen->add_option("--num-labels", num_labels, "label count for --labels-out");

  // stats
  auto* stats = app.add_subcommand("stats", "triangle statistics report (TSV)");
  FactorCliOptions stats_input;
  std::string stats_labels, stats_out;
  add_factor_options(stats, stats_input, "graph", "input edge list");
  stats->add_option("--labels", stats_labels, "vertex label file");
  stats->add_option("--out", stats_out, "output path (default stdout)");

  // kron-manifest
  auto* manifest = app.add_subcommand("kron-manifest", "write a product manifest with exact totals");
  FactorCliOptions factor_a, factor_b;
  std::string manifest_a_labels, manifest_out;
  add_factor_options(manifest, factor_a, "a", "left factor");
  add_factor_options(manifest, factor_b, "b", "right factor");
  manifest->add_option("--a-labels", manifest_a_labels, "label file for the left factor");
  manifest->add_option("--out", manifest_out, "manifest path")->required();

  // kron-edges
  auto* edges = app.add_subcommand("kron-edges", "stream product edges");
  std::string edges_manifest, edges_rows, edges_out;
  bool canonical = false;
  edges->add_option("--manifest", edges_manifest, "product manifest")->required();
  edges->add_option("--rows", edges_rows, "left-factor row block lo:hi (default all)");
  edges->add_flag("--canonical", canonical, "emit only entries with p <= q");
  edges->add_option("--out", edges_out, "output path (default stdout)");

  // kron-query
  auto* query = app.add_subcommand("kron-query", "ground truth for a product vertex or edge");
  std::string query_manifest;
  std::uint64_t query_vertex = 0;
  std::vector<std::uint64_t> query_edge;
  query->add_option("--manifest", query_manifest, "product manifest")->required();
  query->add_option("--vertex", query_vertex, "product vertex id");
  query->add_option("--edge", query_edge, "product edge: two vertex ids")->expected(2);

  // egonet
  auto* ego = app.add_subcommand("egonet", "edge list of the egonet at a product vertex");
  std::string ego_manifest, ego_out;
  std::uint64_t ego_vertex = 0;
  std::size_t ego_guard = krontri::egonet_default_guard;
  ego->add_option("--manifest", ego_manifest, "product manifest")->required();
  ego->add_option("--vertex", ego_vertex, "product vertex id")->required();
  ego->add_option("--guard", ego_guard, "neighbor count guard");
  ego->add_option("--out", ego_out, "output path (default stdout)");

  // truss
  auto* truss_cmd = app.add_subcommand("truss", "per-edge trussness");
  FactorCliOptions truss_input;
  std::string truss_manifest, truss_rows, truss_out;
  truss_cmd->add_option("--graph", truss_input.path, "input edge list");
  truss_cmd->add_flag("--graph-undirected", truss_input.undirected, "symmetrize on load");
  truss_cmd->add_flag("--graph-strip-loops", truss_input.strip_loops, "drop self loops");
  truss_cmd->add_option("--graph-n", truss_input.n_override, "vertex count override");
  truss_cmd->add_option("--manifest", truss_manifest,
                        "product manifest (requires Delta_B <= 1)");
  truss_cmd->add_option("--rows", truss_rows, "row block lo:hi for the manifest path");
  truss_cmd->add_option("--out", truss_out, "output path (default stdout)");

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "run a named oracle-equivalence suite");
  std::string scenario = "all";
  std::uint64_t validate_seed = 1;
  validate_cmd->add_option("--scenario", scenario,
                           "algebra | undirected-all-regimes | directed | labeled | "
                           "truss-product | stream | egonet | all");
  validate_cmd->add_option("--seed", validate_seed, "suite seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForVersion") return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed())
      return run_gen_factor(kind, gen_n, prob, gen_seed, gen_directed, gen_loops, gen_out,
                            labels_out, num_labels, reduce_input);
    if (stats->parsed()) return run_stats(stats_input, stats_labels, stats_out);
    if (manifest->parsed())
      return run_kron_manifest(factor_a, factor_b, manifest_a_labels, manifest_out);
    if (edges->parsed()) return run_kron_edges(edges_manifest, edges_rows, canonical, edges_out);
    if (query->parsed()) {
      if ((query_vertex == 0) == query_edge.empty())
        throw krontri::precondition_error("kron-query needs exactly one of --vertex / --edge");
      return run_kron_query(query_manifest, query_vertex, query_edge);
    }
    if (ego->parsed()) return run_egonet(ego_manifest, ego_vertex, ego_guard, ego_out);
    if (truss_cmd->parsed()) {
      if (truss_input.path.empty() == truss_manifest.empty())
        throw krontri::precondition_error("truss needs exactly one of --graph / --manifest");
      return run_truss(truss_input, truss_manifest, truss_rows, truss_out);
    }
    if (validate_cmd->parsed()) return run_validate(scenario, validate_seed);
  } catch (const krontri::validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const krontri::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
