#pragma once

#include <cstdint>
#include <vector>

#include "dynleiden/batch.hpp"
#include "dynleiden/leiden.hpp"

namespace dynleiden {

/// Clustering state carried from the previous snapshot.
struct DynamicContext {
  std::vector<VertexId> membership;
  std::vector<double> vertex_weight;
  std::vector<double> community_weight;

  /// Builds a context for `membership` on g, recomputing K and Sigma.
  static DynamicContext from_membership(const Graph& g, std::vector<VertexId> membership);
};

struct VertexCommunityWeights {
  std::vector<double> vertex_weight;
  std::vector<double> community_weight;
};

/**
 * Incremental K and Sigma for the updated snapshot. Each deletion (i, j, w)
 * subtracts w from K[i] and from Sigma[C_prev[i]]; insertions add. Work is
 * split by ownership of index ranges, so no atomics are needed.
 * @param b the records that were actually applied (deletions carry weights)
 */
VertexCommunityWeights update_weights(const BatchUpdate& b, const DynamicContext& ctx,
                                      int threads = 1);

/// Flags set during delta-screening marking.
struct AffectedMarks {
  std::vector<std::uint8_t> vertices;
  std::vector<std::uint8_t> neighbors;
  std::vector<std::uint8_t> communities;
};

/**
 * Delta-screening marking on the updated graph. Intra-community deletions
 * mark the source, its neighbors and the community; for every insertion
 * source the best cross-community target (by delta-modularity) is marked
 * together with the source and its neighbors. Affected-community flags are
 * then expanded to their members and neighbor flags to the neighbors.
 */
AffectedMarks mark_delta_screening(const Graph& g_t, const BatchUpdate& b,
                                   std::span<const VertexId> c_prev,
                                   std::span<const double> vertex_weights,
                                   std::span<const double> community_weights);

/// Dynamic-frontier initial marking: sources of intra-community deletions
/// and of cross-community insertions.
std::vector<std::uint8_t> mark_dynamic_frontier(std::size_t vertex_count, const BatchUpdate& b,
                                                std::span<const VertexId> c_prev);

struct DynamicResult {
  std::vector<VertexId> membership;
  std::vector<double> vertex_weight;
  std::vector<double> community_weight;
  LeidenReport report;
  /// Time spent marking and updating K/Sigma before the engine starts.
  double marking_seconds = 0.0;
};

/// Every vertex is affected; starts from the previous membership.
DynamicResult naive_dynamic(const Graph& g_t, const BatchUpdate& b, const DynamicContext& ctx,
                            const LeidenParams& params);

/// Only delta-screened vertices are processed in the first pass.
DynamicResult delta_screening(const Graph& g_t, const BatchUpdate& b, const DynamicContext& ctx,
                              const LeidenParams& params);

/// Batch endpoints seed a frontier that grows as vertices change community.
DynamicResult dynamic_frontier(const Graph& g_t, const BatchUpdate& b, const DynamicContext& ctx,
                               const LeidenParams& params);

}  // namespace dynleiden
