#pragma once

#include <span>
#include <vector>

#include "dynleiden/graph.hpp"

namespace dynleiden {

/**
 * Modularity of a partition.
 *
 * sigma_c counts intra-community weight over both stored directions (a
 * self-loop once), Sigma_c is the sum of member weighted degrees. Returns 0
 * for a graph without edges.
 */
double modularity(const Graph& g, std::span<const VertexId> membership);

/**
 * Change in modularity from moving vertex i out of community d into c.
 * @param k_i_to_c weight from i to members of c
 * @param k_i_to_d weight from i to the other members of d (self-loop excluded)
 * @param k_i weighted degree of i
 * @param sigma_c total weight of c, excluding i
 * @param sigma_d total weight of d, including i
 * @param m total edge weight of the graph
 */
inline double delta_modularity(double k_i_to_c, double k_i_to_d, double k_i, double sigma_c,
                               double sigma_d, double m) {
  return (k_i_to_c - k_i_to_d) / m - k_i * (k_i + sigma_c - sigma_d) / (2.0 * m * m);
}

/// Ids of communities whose members are not all reachable from one another
/// over intra-community edges. Sorted ascending.
std::vector<VertexId> audit_connectivity(const Graph& g, std::span<const VertexId> membership);

struct PartitionStats {
  std::size_t community_count = 0;
  /// size_histogram[s] = number of communities with exactly s members.
  std::vector<std::size_t> size_histogram;
  double modularity = 0.0;
  std::size_t disconnected_count = 0;
};

PartitionStats partition_stats(const Graph& g, std::span<const VertexId> membership);

/// Number of distinct community ids in use.
std::size_t community_count(std::span<const VertexId> membership);

/// Sigma recomputed from scratch, indexed by community id; the result has
/// max(vertex_count, max id + 1) entries.
std::vector<double> community_weights(std::span<const VertexId> membership,
                                      std::span<const double> vertex_weights);

}  // namespace dynleiden
