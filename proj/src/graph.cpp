#include "dynleiden/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dynleiden {

Graph::Graph(std::vector<EdgeIndex> offsets, std::vector<VertexId> neighbors,
             std::vector<EdgeWeight> weights)
    : offsets_(std::move(offsets)), neighbors_(std::move(neighbors)), weights_(std::move(weights)) {
  if (offsets_.empty()) throw GraphError("CSR offsets must have at least one entry");
  if (neighbors_.size() != weights_.size())
    throw GraphError("CSR neighbor and weight arrays differ in length");
  if (offsets_.back() != neighbors_.size())
    throw GraphError("CSR offsets do not end at the edge count");
}

std::size_t Graph::undirected_edge_count() const {
  std::size_t loops = 0;
  for (std::size_t i = 0; i < vertex_count(); ++i) {
    auto adj = neighbors(static_cast<VertexId>(i));
    if (std::binary_search(adj.begin(), adj.end(), static_cast<VertexId>(i))) ++loops;
  }
  return (neighbors_.size() - loops) / 2 + loops;
}

double Graph::weighted_degree(VertexId i) const {
  double k = 0.0;
  for (EdgeWeight w : weights(i)) k += w;
  return k;
}

std::vector<double> Graph::weighted_degrees() const {
  std::vector<double> k(vertex_count());
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = weighted_degree(static_cast<VertexId>(i));
  return k;
}

double Graph::total_edge_weight() const {
  double sum = 0.0;
  for (EdgeWeight w : weights_) sum += w;
  return sum / 2.0;
}

std::optional<EdgeWeight> Graph::edge_weight(VertexId i, VertexId j) const {
  if (i >= vertex_count()) return std::nullopt;
  auto adj = neighbors(i);
  auto it = std::lower_bound(adj.begin(), adj.end(), j);
  if (it == adj.end() || *it != j) return std::nullopt;
  return weights(i)[static_cast<std::size_t>(it - adj.begin())];
}

Graph build_graph(std::span<const WeightedEdge> edges, std::size_t vertex_count) {
  struct Record {
    VertexId source;
    VertexId target;
    EdgeWeight weight;
    std::size_t order;
  };
  std::vector<Record> records;
  records.reserve(2 * edges.size());
  for (std::size_t n = 0; n < edges.size(); ++n) {
    const auto& e = edges[n];
    if (e.source >= vertex_count || e.target >= vertex_count)
      throw GraphError("edge (" + std::to_string(e.source) + ", " + std::to_string(e.target) +
                       ") out of range for " + std::to_string(vertex_count) + " vertices");
    if (!(e.weight > 0.0f) || !std::isfinite(e.weight))
      throw GraphError("edge weights must be positive and finite");
    records.push_back({e.source, e.target, e.weight, n});
    if (e.source != e.target) records.push_back({e.target, e.source, e.weight, n});
  }
  std::sort(records.begin(), records.end(), [](const Record& a, const Record& b) {
    if (a.source != b.source) return a.source < b.source;
    if (a.target != b.target) return a.target < b.target;
    return a.order < b.order;
  });

  std::vector<EdgeIndex> offsets(vertex_count + 1, 0);
  std::vector<VertexId> neighbors;
  std::vector<EdgeWeight> weights;
  neighbors.reserve(records.size());
  weights.reserve(records.size());
  for (std::size_t r = 0; r < records.size(); ++r) {
    // Keep only the last occurrence of each directed pair.
    if (r + 1 < records.size() && records[r + 1].source == records[r].source &&
        records[r + 1].target == records[r].target)
      continue;
    neighbors.push_back(records[r].target);
    weights.push_back(records[r].weight);
    ++offsets[records[r].source + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  return Graph(std::move(offsets), std::move(neighbors), std::move(weights));
}

}  // namespace dynleiden
