#include "dynleiden/quality.hpp"

#include <algorithm>
#include <deque>

namespace dynleiden {

namespace {

std::size_t id_universe(const Graph& g, std::span<const VertexId> membership) {
  std::size_t n = g.vertex_count();
  for (VertexId c : membership) n = std::max<std::size_t>(n, std::size_t{c} + 1);
  return n;
}

void check_membership(const Graph& g, std::span<const VertexId> membership) {
  if (membership.size() != g.vertex_count())
    throw std::invalid_argument("membership size does not match vertex count");
}

}  // namespace

std::vector<double> community_weights(std::span<const VertexId> membership,
                                      std::span<const double> vertex_weights) {
  std::size_t n = membership.size();
  for (VertexId c : membership) n = std::max<std::size_t>(n, std::size_t{c} + 1);
  std::vector<double> sigma(n, 0.0);
  for (std::size_t i = 0; i < membership.size(); ++i) sigma[membership[i]] += vertex_weights[i];
  return sigma;
}

double modularity(const Graph& g, std::span<const VertexId> membership) {
  check_membership(g, membership);
  const double m = g.total_edge_weight();
  if (m <= 0.0) return 0.0;
  const std::size_t n = id_universe(g, membership);
  std::vector<double> internal(n, 0.0), total(n, 0.0);
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    const auto v = static_cast<VertexId>(i);
    const VertexId c = membership[i];
    auto adj = g.neighbors(v);
    auto wts = g.weights(v);
    for (std::size_t e = 0; e < adj.size(); ++e) {
      total[c] += wts[e];
      if (membership[adj[e]] == c) internal[c] += wts[e];
    }
  }
  double q = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    if (total[c] == 0.0 && internal[c] == 0.0) continue;
    const double share = total[c] / (2.0 * m);
    q += internal[c] / (2.0 * m) - share * share;
  }
  return q;
}

std::vector<VertexId> audit_connectivity(const Graph& g, std::span<const VertexId> membership) {
  check_membership(g, membership);
  const std::size_t n = g.vertex_count();
  const std::size_t ids = id_universe(g, membership);
  std::vector<std::size_t> size(ids, 0);
  for (VertexId c : membership) ++size[c];

  std::vector<std::uint8_t> visited(n, 0), started(ids, 0);
  std::vector<VertexId> disconnected;
  std::deque<VertexId> frontier;
  for (std::size_t s = 0; s < n; ++s) {
    const VertexId c = membership[s];
    if (started[c]) continue;
    started[c] = 1;
    std::size_t reached = 1;
    visited[s] = 1;
    frontier.push_back(static_cast<VertexId>(s));
    while (!frontier.empty()) {
      const VertexId u = frontier.front();
      frontier.pop_front();
      for (VertexId v : g.neighbors(u)) {
        if (visited[v] || membership[v] != c) continue;
        visited[v] = 1;
        ++reached;
        frontier.push_back(v);
      }
    }
    if (reached != size[c]) disconnected.push_back(c);
  }
  std::sort(disconnected.begin(), disconnected.end());
  return disconnected;
}

std::size_t community_count(std::span<const VertexId> membership) {
  std::vector<VertexId> ids(membership.begin(), membership.end());
  std::sort(ids.begin(), ids.end());
  return static_cast<std::size_t>(std::unique(ids.begin(), ids.end()) - ids.begin());
}

PartitionStats partition_stats(const Graph& g, std::span<const VertexId> membership) {
  check_membership(g, membership);
  PartitionStats stats;
  std::vector<std::size_t> size(id_universe(g, membership), 0);
  for (VertexId c : membership) ++size[c];
  std::size_t largest = 0;
  for (std::size_t s : size) {
    if (s == 0) continue;
    ++stats.community_count;
    largest = std::max(largest, s);
  }
  stats.size_histogram.assign(largest + 1, 0);
  for (std::size_t s : size)
    if (s > 0) ++stats.size_histogram[s];
  stats.modularity = modularity(g, membership);
  stats.disconnected_count = audit_connectivity(g, membership).size();
  return stats;
}

}  // namespace dynleiden
