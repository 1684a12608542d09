#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dynleiden/dynamic.hpp"
#include "dynleiden/io.hpp"
#include "dynleiden/report.hpp"

namespace dynleiden {

enum class Algorithm { Static, NaiveDynamic, DeltaScreening, DynamicFrontier };

std::string_view algorithm_tag(Algorithm a);
/// Accepts the tags "static", "nd", "ds", "df".
Algorithm parse_algorithm(std::string_view tag);

struct HarnessParams {
  LeidenParams leiden;
  /// Aggregation chunk used by the from-scratch static runs.
  std::size_t static_aggregation_chunk = 2048;
};

/// Outcome of a single algorithm invocation plus its report row.
struct AlgorithmRun {
  DynamicContext state;
  RunReport report;
};

/**
 * Runs one algorithm on g_t. Static ignores `prior` and `applied` and starts
 * from singletons; the dynamic variants continue from `prior`. Modularity,
 * community count and the connectivity audit are computed from the returned
 * membership.
 */
AlgorithmRun run_algorithm(Algorithm algorithm, const Graph& g_t, const BatchUpdate& applied,
                           const DynamicContext& prior, const HarnessParams& params);

struct SweepConfig {
  std::vector<double> fractions;
  double insertion_share = 0.8;
  std::size_t repetitions = 5;
  std::uint64_t seed = 42;
  std::vector<Algorithm> algorithms;
  HarnessParams params;
};

/**
 * Random-batch sweep on one base graph. The base is clustered once with
 * static Leiden; every (fraction, repetition) batch is applied to the base,
 * static reruns from scratch and each dynamic variant starts from the base
 * clustering. Emits one row per run followed by one mean row per
 * (fraction, algorithm).
 */
std::vector<RunReport> run_random_sweep(const Graph& g, const std::string& graph_name,
                                        const SweepConfig& config);

/// "overall" rows (one per fraction and algorithm) averaging the
/// mean rows of several graphs, with geometric means for timings.
std::vector<RunReport> summarize_across_graphs(std::span<const RunReport> rows);

struct TemporalConfig {
  /// Batch size as a fraction of the temporal edge count; ignored when
  /// batch_size is non-zero.
  double batch_fraction = 1e-4;
  std::size_t batch_size = 0;
  std::size_t batch_count = 100;
  double base_fraction = 0.9;
  std::vector<Algorithm> algorithms;
  HarnessParams params;
};

/**
 * Temporal replay: the first base_fraction of the time-ordered edges form
 * the base graph, the following edges arrive as batch_count insertion
 * batches. Each algorithm keeps its own state across batches. Rows carry
 * batch indices starting at 1. When not enough edges remain, the number of
 * batches is truncated and a warning goes to `log`.
 */
std::vector<RunReport> run_temporal_replay(const TemporalEdgeList& temporal,
                                           const std::string& graph_name,
                                           const TemporalConfig& config, std::ostream* log = nullptr);

/**
 * Replays a sequence of prepared batches on g. The base graph is clustered
 * once with static Leiden; batches are applied in order and every dynamic
 * algorithm carries its own state forward. Rows carry batch indices
 * starting at 1.
 */
std::vector<RunReport> run_batch_replay(const Graph& g, const std::string& graph_name,
                                        std::span<const BatchUpdate> batches,
                                        std::span<const Algorithm> algorithms,
                                        const HarnessParams& params);

}  // namespace dynleiden
