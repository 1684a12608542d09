#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dynleiden/types.hpp"

namespace dynleiden {

struct WeightedEdge {
  VertexId source = 0;
  VertexId target = 0;
  EdgeWeight weight = 1.0f;
};

/**
 * Undirected weighted graph in CSR form.
 *
 * Every undirected edge {i, j} is stored twice, as i->j and j->i, with equal
 * weight. A self-loop is stored once. Adjacency lists are sorted by neighbor
 * id and contain no duplicates. Instances are immutable once built and can be
 * read concurrently without synchronization.
 */
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  /// Takes ownership of raw CSR arrays. Only the array shapes are checked.
  Graph(std::vector<EdgeIndex> offsets, std::vector<VertexId> neighbors,
        std::vector<EdgeWeight> weights);

  std::size_t vertex_count() const { return offsets_.size() - 1; }
  std::size_t directed_edge_count() const { return neighbors_.size(); }
  /// Number of undirected edges |E|; a self-loop counts as one edge.
  std::size_t undirected_edge_count() const;

  std::span<const VertexId> neighbors(VertexId i) const {
    return {neighbors_.data() + offsets_[i], neighbors_.data() + offsets_[i + 1]};
  }
  std::span<const EdgeWeight> weights(VertexId i) const {
    return {weights_.data() + offsets_[i], weights_.data() + offsets_[i + 1]};
  }
  std::size_t degree(VertexId i) const { return offsets_[i + 1] - offsets_[i]; }

  /// K_i: sum of the weights stored in the adjacency of i.
  double weighted_degree(VertexId i) const;
  std::vector<double> weighted_degrees() const;

  /// m: half the sum of all stored weights.
  double total_edge_weight() const;

  std::optional<EdgeWeight> edge_weight(VertexId i, VertexId j) const;
  bool has_edge(VertexId i, VertexId j) const { return edge_weight(i, j).has_value(); }

  std::span<const EdgeIndex> offsets() const { return offsets_; }
  std::span<const VertexId> neighbor_array() const { return neighbors_; }
  std::span<const EdgeWeight> weight_array() const { return weights_; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<EdgeIndex> offsets_;
  std::vector<VertexId> neighbors_;
  std::vector<EdgeWeight> weights_;
};

/**
 * Build a symmetric CSR graph from an edge list.
 *
 * Missing reverse edges are added. Repeated pairs (in either direction)
 * collapse to a single edge carrying the weight of the last occurrence.
 * Throws GraphError on an out-of-range id or a non-positive weight.
 */
Graph build_graph(std::span<const WeightedEdge> edges, std::size_t vertex_count);

inline double total_edge_weight(const Graph& g) { return g.total_edge_weight(); }

}  // namespace dynleiden
