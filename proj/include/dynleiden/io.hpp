#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dynleiden/graph.hpp"

namespace dynleiden {

struct MatrixMarketOptions {
  /// Ignore stored values and give every edge weight 1.
  bool unit_weights = false;
};

/// Reads a `%%MatrixMarket matrix coordinate` file (pattern, integer or real;
/// general or symmetric). Indices are 1-based in the file. The result is
/// always symmetrized.
Graph read_matrix_market(std::istream& in, const MatrixMarketOptions& options = {});
Graph read_matrix_market_file(const std::string& path, const MatrixMarketOptions& options = {});

struct TemporalEdge {
  VertexId source = 0;
  VertexId target = 0;
  std::int64_t time = 0;
};

struct TemporalEdgeList {
  /// Stable-sorted by time; ties keep file order.
  std::vector<TemporalEdge> edges;
  std::size_t vertex_count = 0;
  std::size_t skipped_self_loops = 0;
};

/// Reads SNAP-style `u v t` lines. Lines starting with `#` or `%` are
/// comments. Self-loops are dropped and counted.
TemporalEdgeList read_temporal_edges(std::istream& in);
TemporalEdgeList read_temporal_edges_file(const std::string& path);

}  // namespace dynleiden
