/*
 * (C) Copyright 2026 The sbmlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "sbmlab/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "sbmlab/error.hpp"

namespace sbmlab {

LabeledGraph read_graph(std::istream& in) {
  long long n = 0, m = 0;
  if (!(in >> n >> m)) throw_invalid("graph file: missing header 'n m'");
  require(n >= 2 && n <= 1'000'000, "graph file: bad vertex count");
  require(m >= 0 && m <= n * (n - 1) / 2, "graph file: bad edge count");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long k = 0; k < m; ++k) {
    long long u = 0, v = 0;
    if (!(in >> u >> v)) throw_invalid("graph file: truncated edge list");
    require(u >= 1 && v <= n && u < v, "graph file: edges must be 1-based with u < v");
    edges.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
  }
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (auto& s : labels)
    if (!(in >> s)) throw_invalid("graph file: missing labeling line");
  return LabeledGraph::from_edges(static_cast<int>(n), edges,
                                  Labeling::from_values(std::move(labels)));
}

void write_graph(const LabeledGraph& g, std::ostream& out) {
  const auto edges = g.edges();
  out << g.n() << ' ' << edges.size() << '\n';
  for (auto [u, v] : edges) out << u + 1 << ' ' << v + 1 << '\n';
  for (int u = 0; u < g.n(); ++u) out << (u ? " " : "") << g.truth()[u];
  out << '\n';
}

LabeledGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open graph file '" + path + "'");
  return read_graph(in);
}

void write_graph_file(const LabeledGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  write_graph(g, out);
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path + "'");
}

}  // namespace sbmlab
