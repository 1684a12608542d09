#include "dynleiden/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace dynleiden {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open '" + path + "'");
  return in;
}

}  // namespace

Graph read_matrix_market(std::istream& in, const MatrixMarketOptions& options) {
  std::string line;
  if (!std::getline(in, line)) throw GraphError("empty Matrix Market input");
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix" || lower(format) != "coordinate")
    throw GraphError("expected a '%%MatrixMarket matrix coordinate' header");
  field = lower(field);
  symmetry = lower(symmetry);
  if (field != "pattern" && field != "real" && field != "integer" && field != "double")
    throw GraphError("unsupported Matrix Market field '" + field + "'");
  if (symmetry != "general" && symmetry != "symmetric")
    throw GraphError("unsupported Matrix Market symmetry '" + symmetry + "'");
  const bool has_values = field != "pattern";

  // Skip comments up to the size line.
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '%') continue;
    break;
  }
  std::istringstream size_line(line);
  std::size_t rows = 0, cols = 0, entries = 0;
  if (!(size_line >> rows >> cols >> entries)) throw GraphError("malformed Matrix Market size line");
  const std::size_t n = std::max(rows, cols);

  std::vector<WeightedEdge> edges;
  edges.reserve(entries);
  std::size_t read = 0;
  while (read < entries && std::getline(in, line)) {
    if (line.empty() || line[0] == '%') continue;
    std::istringstream ls(line);
    std::size_t i = 0, j = 0;
    double w = 1.0;
    if (!(ls >> i >> j)) throw GraphError("malformed Matrix Market entry: " + line);
    if (has_values && !(ls >> w)) throw GraphError("missing value in Matrix Market entry: " + line);
    if (i == 0 || j == 0 || i > n || j > n) throw GraphError("Matrix Market index out of range: " + line);
    if (options.unit_weights || !has_values) w = 1.0;
    edges.push_back({static_cast<VertexId>(i - 1), static_cast<VertexId>(j - 1), static_cast<EdgeWeight>(w)});
    ++read;
  }
  if (read != entries) throw GraphError("Matrix Market file ended after " + std::to_string(read) + " of " +
                                        std::to_string(entries) + " entries");
  return build_graph(edges, n);
}

Graph read_matrix_market_file(const std::string& path, const MatrixMarketOptions& options) {
  auto in = open_or_throw(path);
  return read_matrix_market(in, options);
}

TemporalEdgeList read_temporal_edges(std::istream& in) {
  TemporalEdgeList out;
  std::string line;
  std::size_t max_id = 0;
  bool any = false;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#' || line[first] == '%') continue;
    std::istringstream ls(line);
    unsigned long long u = 0, v = 0;
    long long t = 0;
    if (!(ls >> u >> v >> t)) throw GraphError("malformed temporal edge: " + line);
    if (u >= kEmpty || v >= kEmpty) throw GraphError("temporal vertex id too large: " + line);
    max_id = std::max<std::size_t>(max_id, std::max(u, v));
    any = true;
    if (u == v) {
      ++out.skipped_self_loops;
      continue;
    }
    out.edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), t});
  }
  out.vertex_count = any ? max_id + 1 : 0;
  std::stable_sort(out.edges.begin(), out.edges.end(),
                   [](const TemporalEdge& a, const TemporalEdge& b) { return a.time < b.time; });
  return out;
}

TemporalEdgeList read_temporal_edges_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_temporal_edges(in);
}

}  // namespace dynleiden
