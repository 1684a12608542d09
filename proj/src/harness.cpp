#include "dynleiden/harness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include "dynleiden/batch_gen.hpp"
#include "dynleiden/quality.hpp"
#include "parallel.hpp"

namespace dynleiden {

std::string_view algorithm_tag(Algorithm a) {
  switch (a) {
    case Algorithm::Static: return "static";
    case Algorithm::NaiveDynamic: return "nd";
    case Algorithm::DeltaScreening: return "ds";
    case Algorithm::DynamicFrontier: return "df";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view tag) {
  if (tag == "static") return Algorithm::Static;
  if (tag == "nd") return Algorithm::NaiveDynamic;
  if (tag == "ds") return Algorithm::DeltaScreening;
  if (tag == "df") return Algorithm::DynamicFrontier;
  throw std::invalid_argument("unknown algorithm '" + std::string(tag) + "' (expected static, nd, ds or df)");
}

namespace {

std::string join_iterations(const LeidenReport& r) {
  std::string s;
  for (const auto& p : r.passes) {
    if (!s.empty()) s += ';';
    s += std::to_string(p.iterations);
  }
  return s;
}

void fill_from_engine(RunReport& row, const LeidenReport& r, std::size_t vertex_count) {
  row.move_seconds = r.move_seconds;
  row.refine_seconds = r.refine_seconds;
  row.aggregate_seconds = r.aggregate_seconds;
  row.passes = static_cast<double>(r.passes.size());
  row.iterations = join_iterations(r);
  row.affected_fraction =
      vertex_count ? static_cast<double>(r.initial_affected) / static_cast<double>(vertex_count) : 0.0;
  row.changed_community_fraction =
      r.live_communities ? static_cast<double>(r.changed_communities) / static_cast<double>(r.live_communities)
                         : 0.0;
  row.first_pass_moves = static_cast<double>(r.first_pass_moves());
  row.max_passes_hit = r.max_passes_hit ? 1.0 : 0.0;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  // splitmix64 finalizer over the combined inputs.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double undirected_updates(const BatchUpdate& b) {
  return static_cast<double>(b.deletions.size() + b.insertions.size()) / 2.0;
}

}  // namespace

AlgorithmRun run_algorithm(Algorithm algorithm, const Graph& g_t, const BatchUpdate& applied,
                           const DynamicContext& prior, const HarnessParams& params) {
  AlgorithmRun run;
  RunReport& row = run.report;
  row.algorithm = std::string(algorithm_tag(algorithm));
  row.threads = params.leiden.resolved_threads();
  row.seed = params.leiden.seed;

  detail::Stopwatch total;
  if (algorithm == Algorithm::Static) {
    LeidenParams p = params.leiden;
    p.chunk_size_aggregation = params.static_aggregation_chunk;
    detail::Stopwatch init;
    const CommunityState st = CommunityState::singletons(g_t);
    row.marking_seconds = init.seconds();
    LeidenResult r = leiden(g_t, st.membership, st.vertex_weight, st.community_weight, AffectedHooks{},
                            st.changed, p);
    row.total_seconds = total.seconds();
    fill_from_engine(row, r.report, g_t.vertex_count());
    run.state.membership = std::move(r.membership);
    run.state.vertex_weight = st.vertex_weight;
    run.state.community_weight = std::move(r.community_weight);
  } else {
    DynamicResult r;
    switch (algorithm) {
      case Algorithm::NaiveDynamic: r = naive_dynamic(g_t, applied, prior, params.leiden); break;
      case Algorithm::DeltaScreening: r = delta_screening(g_t, applied, prior, params.leiden); break;
      default: r = dynamic_frontier(g_t, applied, prior, params.leiden); break;
    }
    row.total_seconds = total.seconds();
    row.marking_seconds = r.marking_seconds;
    fill_from_engine(row, r.report, g_t.vertex_count());
    run.state.membership = std::move(r.membership);
    run.state.vertex_weight = std::move(r.vertex_weight);
    run.state.community_weight = std::move(r.community_weight);
  }

  row.modularity = modularity(g_t, run.state.membership);
  row.communities = static_cast<double>(community_count(run.state.membership));
  row.disconnected_count = static_cast<double>(audit_connectivity(g_t, run.state.membership).size());
  return run;
}

std::vector<RunReport> run_random_sweep(const Graph& g, const std::string& graph_name, const SweepConfig& config) {
  config.params.leiden.validate();
  if (config.repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");

  const DynamicContext empty;
  const AlgorithmRun base = run_algorithm(Algorithm::Static, g, BatchUpdate{}, empty, config.params);
  const DynamicContext& prior = base.state;

  std::vector<RunReport> rows;
  for (std::size_t f = 0; f < config.fractions.size(); ++f) {
    std::map<Algorithm, std::vector<RunReport>> per_algorithm;
    for (std::size_t rep = 1; rep <= config.repetitions; ++rep) {
      BatchSpec spec;
      spec.fraction = config.fractions[f];
      spec.insertion_share = config.insertion_share;
      spec.seed = mix_seed(config.seed, f, rep);
      const BatchUpdate batch = generate_batch(g, spec);
      const BatchApplication app = apply_batch_checked(g, batch);
      for (Algorithm a : config.algorithms) {
        RunReport row = run_algorithm(a, app.graph, app.applied, prior, config.params).report;
        row.graph = graph_name;
        row.batch_fraction = spec.fraction;
        row.batch_size = undirected_updates(batch);
        row.index = rep;
        row.seed = config.seed;
        per_algorithm[a].push_back(row);
        rows.push_back(std::move(row));
      }
    }
    for (Algorithm a : config.algorithms) rows.push_back(mean_report(per_algorithm[a]));
  }
  return rows;
}

std::vector<RunReport> summarize_across_graphs(std::span<const RunReport> rows) {
  std::map<std::pair<double, std::string>, std::vector<RunReport>> groups;
  std::vector<std::pair<double, std::string>> order;
  for (const auto& r : rows) {
    if (r.kind != "mean") continue;
    auto key = std::make_pair(r.batch_fraction, r.algorithm);
    if (!groups.contains(key)) order.push_back(key);
    groups[key].push_back(r);
  }
  std::vector<RunReport> out;
  for (const auto& key : order) out.push_back(overall_report(groups[key]));
  return out;
}

std::vector<RunReport> run_temporal_replay(const TemporalEdgeList& temporal, const std::string& graph_name,
                                           const TemporalConfig& config, std::ostream* log) {
  HarnessParams params = config.params;
  params.leiden.aggregation_tolerance = 1.0;
  params.leiden.validate();
  if (!(config.base_fraction >= 0.0 && config.base_fraction <= 1.0))
    throw std::invalid_argument("base fraction must lie in [0, 1]");

  const std::size_t total_edges = temporal.edges.size();
  const auto base_count = static_cast<std::size_t>(std::floor(config.base_fraction * static_cast<double>(total_edges)));
  std::size_t batch_size = config.batch_size;
  if (batch_size == 0)
    batch_size = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(config.batch_fraction * static_cast<double>(total_edges))));
  const std::size_t available = (total_edges - base_count) / batch_size;
  const std::size_t batches = std::min(config.batch_count, available);
  if (batches < config.batch_count && log)
    *log << "warning: only " << batches << " batches of " << batch_size << " edges remain after the base graph ("
         << config.batch_count << " requested)\n";

  std::vector<WeightedEdge> base_edges;
  base_edges.reserve(base_count);
  for (std::size_t e = 0; e < base_count; ++e)
    base_edges.push_back({temporal.edges[e].source, temporal.edges[e].target, 1.0f});
  Graph g = build_graph(base_edges, temporal.vertex_count);

  std::vector<BatchUpdate> updates(batches);
  for (std::size_t b = 0; b < batches; ++b) {
    for (std::size_t e = base_count + b * batch_size; e < base_count + (b + 1) * batch_size; ++e) {
      const auto& te = temporal.edges[e];
      updates[b].insertions.push_back({te.source, te.target, 1.0f});
      updates[b].insertions.push_back({te.target, te.source, 1.0f});
    }
  }
  std::vector<RunReport> rows = run_batch_replay(g, graph_name, updates, config.algorithms, params);
  for (auto& row : rows) {
    row.batch_size = static_cast<double>(batch_size);
    row.batch_fraction = total_edges ? static_cast<double>(batch_size) / static_cast<double>(total_edges) : 0.0;
  }
  return rows;
}

std::vector<RunReport> run_batch_replay(const Graph& g0, const std::string& graph_name,
                                        std::span<const BatchUpdate> batches,
                                        std::span<const Algorithm> algorithms, const HarnessParams& params) {
  params.leiden.validate();
  Graph g = g0;
  const DynamicContext empty;
  const AlgorithmRun base = run_algorithm(Algorithm::Static, g, BatchUpdate{}, empty, params);
  std::map<Algorithm, DynamicContext> state;
  for (Algorithm a : algorithms) state[a] = base.state;

  std::vector<RunReport> rows;
  for (std::size_t b = 0; b < batches.size(); ++b) {
    BatchApplication app = apply_batch_checked(g, batches[b]);
    g = std::move(app.graph);
    const double edges = static_cast<double>(g.undirected_edge_count());
    for (Algorithm a : algorithms) {
      AlgorithmRun run = run_algorithm(a, g, app.applied, state[a], params);
      run.report.graph = graph_name;
      run.report.batch_size = undirected_updates(batches[b]);
      run.report.batch_fraction = edges > 0 ? run.report.batch_size / edges : 0.0;
      run.report.index = b + 1;
      rows.push_back(std::move(run.report));
      if (a != Algorithm::Static) state[a] = std::move(run.state);
    }
  }
  return rows;
}

}  // namespace dynleiden
