#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dynleiden/accumulator.hpp"
#include "dynleiden/batch.hpp"
#include "dynleiden/graph.hpp"

namespace dynleiden {

struct LeidenParams {
  /// Per-iteration convergence threshold on the summed delta-modularity.
  double tolerance = 0.01;
  /// Tolerance is divided by this after every pass.
  double tolerance_drop = 10.0;
  std::size_t max_iterations = 20;
  std::size_t max_passes = 10;
  /// Stop before aggregating when live communities exceed this fraction of
  /// the current vertex count. 1 disables the check.
  double aggregation_tolerance = 0.8;
  /// Dynamic-schedule chunk for the local-moving and refinement loops.
  std::size_t chunk_size_main = 2048;
  /// Dynamic-schedule chunk for the per-community aggregation loop.
  std::size_t chunk_size_aggregation = 32;
  /// 0 uses the OpenMP default (OMP_NUM_THREADS).
  int threads = 0;
  std::uint64_t seed = 42;

  /// Throws std::invalid_argument if any field is out of range.
  void validate() const;
  int resolved_threads() const;
};

/// Per-thread accumulators, sized to the largest graph they will see.
class LeidenWorkspace {
 public:
  LeidenWorkspace(std::size_t capacity, int threads);

  int threads() const { return static_cast<int>(tables_.size()); }
  CommunityAccumulator& local(int thread) { return tables_[thread]; }

 private:
  std::vector<CommunityAccumulator> tables_;
};

/**
 * Mutable clustering state over the current (possibly super-vertex) graph.
 * community_weight and changed are indexed by community id, which is always
 * a vertex id of the current graph.
 */
struct CommunityState {
  std::vector<VertexId> membership;
  std::vector<double> vertex_weight;
  std::vector<double> community_weight;
  std::vector<std::uint8_t> changed;
  std::vector<std::uint8_t> processed;

  std::size_t size() const { return membership.size(); }

  /// Each vertex alone, every community flagged changed, nothing processed.
  static CommunityState singletons(const Graph& g);
};

/**
 * Callbacks that restrict the first pass to an affected region.
 * An empty callable means "every vertex" (or "no effect" for on_change).
 */
struct AffectedHooks {
  std::function<bool(VertexId)> is_affected;
  std::function<bool(VertexId)> in_affected_range;
  std::function<void(VertexId)> on_change;
};

void scan_communities(CommunityAccumulator& acc, const Graph& g,
                      std::span<const VertexId> membership, VertexId i, bool include_self);

/// Like scan_communities, but ignores neighbors outside the bound of i.
void scan_bounded(CommunityAccumulator& acc, const Graph& g, std::span<const VertexId> bounds,
                  std::span<const VertexId> membership, VertexId i, bool include_self);

struct MoveResult {
  std::size_t iterations = 0;
  std::size_t moves = 0;
  double delta_modularity = 0.0;
};

/**
 * Local-moving phase. Visits unprocessed vertices in the affected range and
 * greedily moves each to the neighboring community with the highest positive
 * delta-modularity (ties to the lowest id). A move flags the source and
 * target communities as changed and re-marks the neighbors unprocessed.
 * Stops once an iteration gains no more than `tolerance`.
 */
MoveResult leiden_move(const Graph& g, CommunityState& state, const AffectedHooks& hooks,
                       double tolerance, const LeidenParams& params, LeidenWorkspace& ws);

/// Relabels every community with the id of one of its members (the first
/// claimant; with one thread, the smallest member) and re-keys
/// community_weight and changed accordingly.
void leiden_subset_renumber(const Graph& g, CommunityState& state, int threads = 1);

/// Per-community changed flags for the first pass. In dynamic mode a
/// community is flagged when a batch edge has both endpoints in it; in
/// static mode everything is flagged. Indexed by community id, sized
/// g.vertex_count().
std::vector<std::uint8_t> changed_communities(const Graph& g, std::span<const VertexId> c_prev,
                                              const BatchUpdate& b, bool dynamic);

/// Every member of a flagged community becomes a singleton.
void break_changed_communities(const Graph& g, CommunityState& state);

/**
 * Refinement phase: single sweep of constrained merges. Only vertices still
 * alone in a flagged community may move, only into a community inside their
 * bound whose id vertex is still its own root. The source community weight
 * is claimed with a compare-and-swap. Returns the number of merges.
 */
std::size_t leiden_refine(const Graph& g, std::span<const VertexId> bounds, CommunityState& state,
                          double tolerance, const LeidenParams& params, LeidenWorkspace& ws);

/// Relabels ids to 0..k-1 in increasing order of the old id; returns k.
std::size_t renumber_dense(std::span<VertexId> membership);

/// Super-vertex graph of a dense membership: one vertex per community,
/// inter-community weight summed onto edges, intra-community weight onto a
/// self-loop.
Graph leiden_aggregate(const Graph& g, std::span<const VertexId> membership,
                       const LeidenParams& params, LeidenWorkspace& ws);

/// result[i] = level[flat[i]]. Throws std::out_of_range for an unmapped id.
std::vector<VertexId> dendrogram_lookup(std::span<const VertexId> flat,
                                        std::span<const VertexId> level);

struct Dendrogram {
  /// levels[k] maps vertices of the level-k graph to level-(k+1) ids.
  std::vector<std::vector<VertexId>> levels;

  /// Composition of all levels over `vertex_count` base vertices.
  std::vector<VertexId> flatten(std::size_t vertex_count) const;
};

struct PassStats {
  std::size_t vertex_count = 0;
  std::size_t iterations = 0;
  std::size_t moves = 0;
  std::size_t refine_merges = 0;
  std::size_t communities = 0;
};

struct LeidenReport {
  std::vector<PassStats> passes;
  double move_seconds = 0.0;
  double refine_seconds = 0.0;
  double aggregate_seconds = 0.0;
  double total_seconds = 0.0;
  bool max_passes_hit = false;
  /// Vertices flagged by is_affected at the start of the first pass.
  std::size_t initial_affected = 0;
  /// Live communities flagged changed after the first local-moving phase,
  /// and the number of live communities at that point.
  std::size_t changed_communities = 0;
  std::size_t live_communities = 0;

  std::size_t first_pass_moves() const { return passes.empty() ? 0 : passes.front().moves; }
};

struct LeidenResult {
  std::vector<VertexId> membership;
  /// Sigma of the returned membership, indexed by community id.
  std::vector<double> community_weight;
  Dendrogram dendrogram;
  LeidenReport report;
};

/**
 * Dynamic-supporting Leiden.
 * @param g current snapshot
 * @param initial_membership starting community of each vertex (ids < N)
 * @param vertex_weights K for g
 * @param community_weights Sigma consistent with K and initial_membership
 * @param hooks first-pass affected region
 * @param changed first-pass changed-community flags, indexed by community id
 */
LeidenResult leiden(const Graph& g, std::span<const VertexId> initial_membership,
                    std::span<const double> vertex_weights,
                    std::span<const double> community_weights, const AffectedHooks& hooks,
                    std::span<const std::uint8_t> changed, const LeidenParams& params);

/// Leiden from singletons with every vertex affected.
LeidenResult static_leiden(const Graph& g, const LeidenParams& params);

}  // namespace dynleiden
