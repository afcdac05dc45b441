#pragma once

// File formats: whitespace edge lists ('#'/'%' comments, 1-based ids), vertex
// label files, and the JSON product manifest. A manifest plus its factor
// files is the shareable compressed form of a product graph; loading verifies
// factor checksums and recomputes the stored totals.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "krontri/graph.hpp"
#include "krontri/kron_stats.hpp"
#include "krontri/tri_directed.hpp"

namespace krontri {

struct LoadOptions {
  bool undirected = false;   // symmetrize: each line may list an edge once
  bool strip_loops = false;  // drop (i,i) lines
  bool add_loops = false;    // add a loop at every vertex after loading
  std::optional<Index> n_override;
};

inline Graph load_edge_list(const std::filesystem::path& path, const LoadOptions& opt = {}) {
  std::ifstream in(path);
  if (!in) throw precondition_error("cannot open edge list: " + path.string());
  std::set<std::pair<Index, Index>> arcs;
  Index max_id = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#' || line[start] == '%') continue;
    std::istringstream ls(line);
    Index u = 0, v = 0;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra))
      throw precondition_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected exactly two vertex ids");
    if (u < 1 || v < 1)
      throw precondition_error(path.string() + ":" + std::to_string(line_no) +
                               ": vertex ids must be >= 1");
    if (opt.strip_loops && u == v) continue;
    max_id = std::max({max_id, u, v});
    arcs.insert({u, v});
    if (opt.undirected) arcs.insert({v, u});
  }
  Index n = opt.n_override.value_or(max_id);
  if (n < max_id) throw precondition_error("edge list has vertex ids beyond the given n");
  if (opt.add_loops)
    for (Index i = 1; i <= n; ++i) arcs.insert({i, i});
  std::vector<Entry> entries;
  entries.reserve(arcs.size());
  for (auto [u, v] : arcs) entries.push_back({u, v, 1});
  SparseMatrix adj = SparseMatrix::from_entries(n, std::move(entries));
  return opt.undirected ? Graph::undirected(std::move(adj)) : Graph::directed(std::move(adj));
}

// Undirected graphs write each edge once (u <= v); directed graphs write
// every arc. Reloading with the matching options reproduces the graph.
inline void save_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw precondition_error("cannot write edge list: " + path.string());
  g.adjacency().for_each([&](Index u, Index v, Value) {
    if (!g.is_directed() && u > v) return;
    out << u << ' ' << v << '\n';
  });
  if (!out) throw error("write failure: " + path.string());
}

inline std::vector<Index> load_labels(const std::filesystem::path& path, Index n) {
  std::ifstream in(path);
  if (!in) throw precondition_error("cannot open label file: " + path.string());
  std::vector<Index> labels(n, 0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#' || line[start] == '%') continue;
    std::istringstream ls(line);
    Index v = 0, l = 0;
    std::string extra;
    if (!(ls >> v >> l) || (ls >> extra))
      throw precondition_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected 'vertex label'");
    if (v < 1 || v > n)
      throw precondition_error(path.string() + ":" + std::to_string(line_no) +
                               ": vertex id out of range");
    if (labels[v - 1] != 0)
      throw precondition_error(path.string() + ":" + std::to_string(line_no) +
                               ": duplicate label for vertex " + std::to_string(v));
    labels[v - 1] = l;
  }
  for (Index i = 1; i <= n; ++i)
    if (labels[i - 1] == 0)
      throw precondition_error(path.string() + ": vertex " + std::to_string(i) + " has no label");
  return labels;
}

inline void save_labels(const std::vector<Index>& labels, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw precondition_error("cannot write label file: " + path.string());
  for (Index i = 1; i <= labels.size(); ++i) out << i << ' ' << labels[i - 1] << '\n';
  if (!out) throw error("write failure: " + path.string());
}

// FNV-1a over the raw file bytes; enough to catch factor file swaps and
// truncation, which is all the manifest needs.
inline std::string file_checksum_hex(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw precondition_error("cannot open for checksum: " + path.string());
  std::uint64_t h = 0xCBF29CE484222325ULL;
  char buf[65536];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001B3ULL;
    }
    if (!in) break;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return std::string(hex);
}

struct ManifestFactor {
  std::string path;
  std::string checksum;
  LoadOptions options;
  std::optional<std::string> labels_path;
  std::optional<std::string> labels_checksum;
  Index n = 0;
};

struct Manifest {
  ManifestFactor a, b;
  bool directed = false;  // left factor directedness
  std::string regime;     // loop regime of the undirected view
  Wide n_c = 0;
  Wide stored_entries = 0;
  Wide loop_count = 0;
  Wide undirected_edges = 0;
  Wide triangle_total = 0;  // of the undirected view
  std::string tool_version;
};

namespace io_detail {

inline nlohmann::json factor_to_json(const ManifestFactor& f) {
  nlohmann::json j;
  j["path"] = f.path;
  j["checksum"] = f.checksum;
  j["n"] = f.n;
  j["undirected"] = f.options.undirected;
  j["strip_loops"] = f.options.strip_loops;
  j["add_loops"] = f.options.add_loops;
  if (f.labels_path) {
    j["labels_path"] = *f.labels_path;
    j["labels_checksum"] = *f.labels_checksum;
  }
  return j;
}

inline ManifestFactor factor_from_json(const nlohmann::json& j) {
  ManifestFactor f;
  f.path = j.at("path").get<std::string>();
  f.checksum = j.at("checksum").get<std::string>();
  f.n = j.at("n").get<Index>();
  f.options.undirected = j.at("undirected").get<bool>();
  f.options.strip_loops = j.at("strip_loops").get<bool>();
  f.options.add_loops = j.at("add_loops").get<bool>();
  f.options.n_override = f.n;
  if (j.contains("labels_path")) {
    f.labels_path = j.at("labels_path").get<std::string>();
    f.labels_checksum = j.at("labels_checksum").get<std::string>();
  }
  return f;
}

}  // namespace io_detail

inline void save_manifest(const Manifest& m, const std::filesystem::path& path) {
  nlohmann::json j;
  j["format"] = "krontri-manifest";
  j["version"] = 1;
  j["tool"] = m.tool_version;
  j["factor_a"] = io_detail::factor_to_json(m.a);
  j["factor_b"] = io_detail::factor_to_json(m.b);
  j["directed"] = m.directed;
  j["loop_regime"] = m.regime;
  // Totals can exceed 2^53, so they travel as decimal strings.
  j["n_c"] = to_string(m.n_c);
  j["stored_entries"] = to_string(m.stored_entries);
  j["loop_count"] = to_string(m.loop_count);
  j["undirected_edges"] = to_string(m.undirected_edges);
  j["triangle_total"] = to_string(m.triangle_total);
  std::ofstream out(path);
  if (!out) throw precondition_error("cannot write manifest: " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw error("write failure: " + path.string());
}

inline Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw precondition_error("cannot open manifest: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw precondition_error("manifest parse error: " + std::string(e.what()));
  }
  if (j.value("format", "") != std::string("krontri-manifest"))
    throw precondition_error("not a krontri manifest: " + path.string());
  Manifest m;
  m.a = io_detail::factor_from_json(j.at("factor_a"));
  m.b = io_detail::factor_from_json(j.at("factor_b"));
  m.directed = j.at("directed").get<bool>();
  m.regime = j.at("loop_regime").get<std::string>();
  m.n_c = parse_wide(j.at("n_c").get<std::string>());
  m.stored_entries = parse_wide(j.at("stored_entries").get<std::string>());
  m.loop_count = parse_wide(j.at("loop_count").get<std::string>());
  m.undirected_edges = parse_wide(j.at("undirected_edges").get<std::string>());
  m.triangle_total = parse_wide(j.at("triangle_total").get<std::string>());
  m.tool_version = j.value("tool", "");
  return m;
}

// Relative factor paths resolve against the manifest's directory.
inline std::filesystem::path resolve_against(const std::filesystem::path& base,
                                             const std::string& p) {
  std::filesystem::path fp(p);
  return fp.is_absolute() ? fp : base / fp;
}

inline Graph load_manifest_factor(const ManifestFactor& f, const std::filesystem::path& base_dir) {
  const auto path = resolve_against(base_dir, f.path);
  const std::string sum = file_checksum_hex(path);
  if (sum != f.checksum)
    throw validation_error("checksum mismatch for " + path.string() + ": manifest has " +
                           f.checksum + ", file has " + sum);
  Graph g = load_edge_list(path, f.options);
  if (f.labels_path) {
    const auto lpath = resolve_against(base_dir, *f.labels_path);
    const std::string lsum = file_checksum_hex(lpath);
    if (lsum != *f.labels_checksum)
      throw validation_error("checksum mismatch for " + lpath.string());
    g = g.with_labels(load_labels(lpath, g.size()));
  }
  return g;
}

// Loads both factors, verifying checksums and every stored total. The
// triangle totals and edge counts always describe the undirected view; the
// stored entry count describes C itself (arcs when directed).
inline std::pair<Graph, Graph> load_factors(const Manifest& m,
                                            const std::filesystem::path& base_dir) {
  Graph a = load_manifest_factor(m.a, base_dir);
  Graph b = load_manifest_factor(m.b, base_dir);
  if (a.is_directed() != m.directed)
    throw validation_error("manifest directedness does not match the loaded factor");
  const Graph und =
      a.is_directed() ? Graph::undirected(split_reciprocal_directed(a).undirected) : a;
  const ProductManifestStats s = product_manifest(und, b);
  const Wide stored = static_cast<Wide>(a.stored_entries()) * b.stored_entries();
  if (s.n_c != m.n_c || stored != m.stored_entries || s.loop_count != m.loop_count ||
      s.undirected_edges != m.undirected_edges || s.triangle_total != m.triangle_total ||
      to_string(s.regime) != m.regime)
    throw validation_error("manifest totals do not match the factors");
  return {std::move(a), std::move(b)};
}

inline Manifest build_manifest(const std::filesystem::path& a_path, const LoadOptions& a_opt,
                               const std::filesystem::path& b_path, const LoadOptions& b_opt,
                               const std::optional<std::filesystem::path>& a_labels = {}) {
  Graph a = load_edge_list(a_path, a_opt);
  if (a_labels) a = a.with_labels(load_labels(*a_labels, a.size()));
  Graph b = load_edge_list(b_path, b_opt);

  Manifest m;
  m.tool_version = version_string;
  m.directed = a.is_directed();
  m.a.path = a_path.string();
  m.a.checksum = file_checksum_hex(a_path);
  m.a.options = a_opt;
  m.a.n = a.size();
  if (a_labels) {
    m.a.labels_path = a_labels->string();
    m.a.labels_checksum = file_checksum_hex(*a_labels);
  }
  m.b.path = b_path.string();
  m.b.checksum = file_checksum_hex(b_path);
  m.b.options = b_opt;
  m.b.n = b.size();

  const Graph und =
      a.is_directed() ? Graph::undirected(split_reciprocal_directed(a).undirected) : a;
  const ProductManifestStats s = product_manifest(und, b);
  m.regime = to_string(s.regime);
  m.n_c = s.n_c;
  m.loop_count = s.loop_count;
  m.undirected_edges = s.undirected_edges;
  m.triangle_total = s.triangle_total;
  m.stored_entries = static_cast<Wide>(a.stored_entries()) * b.stored_entries();
  return m;
}

}  // namespace krontri
