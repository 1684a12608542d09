// Command-line driver for the dynamic Leiden experiments.
//
//   dynleiden sweep    --graph a.mtx [--graph b.mtx] --fractions 1e-4,1e-3 ...
//   dynleiden temporal --edges sx-mathoverflow.txt --batch-fraction 1e-4 ...
//   dynleiden batch    --graph a.mtx --fraction 1e-3 --output batch.txt
//   dynleiden replay   --graph a.mtx --batch b1.txt --batch b2.txt ...

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dynleiden/batch_gen.hpp"
#include "dynleiden/harness.hpp"
#include "dynleiden/io.hpp"

namespace {

using namespace dynleiden;

struct CommonOptions {
  HarnessParams params;
  std::vector<std::string> algorithms{"static", "nd", "ds", "df"};
  std::string output = "-";
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  auto& p = o.params.leiden;
  cmd->add_option("--threads", p.threads, "Worker threads (0 = OpenMP default)")
      ->envname("DYNLEIDEN_THREADS")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--chunk-main", p.chunk_size_main, "Schedule chunk for moving and refinement")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--chunk-aggregation", p.chunk_size_aggregation,
                  "Schedule chunk for aggregation in the dynamic variants")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--static-chunk-aggregation", o.params.static_aggregation_chunk,
                  "Schedule chunk for aggregation in static runs")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tolerance", p.tolerance, "Initial iteration tolerance");
  cmd->add_option("--tolerance-drop", p.tolerance_drop, "Tolerance divisor per pass");
  cmd->add_option("--max-iterations", p.max_iterations, "Local-moving iterations per pass");
  cmd->add_option("--max-passes", p.max_passes, "Maximum passes");
  cmd->add_option("--aggregation-tolerance", p.aggregation_tolerance,
                  "Stop when communities exceed this fraction of vertices (1 disables)");
  cmd->add_option("--algorithms", o.algorithms, "Subset of static, nd, ds, df")
      ->delimiter(',')
      ->check(CLI::IsMember({"static", "nd", "ds", "df"}));
  cmd->add_option("-o,--output", o.output, "Report path, - for stdout");
  cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
}

std::vector<Algorithm> parse_algorithms(const std::vector<std::string>& tags) {
  std::vector<Algorithm> out;
  for (const auto& t : tags) out.push_back(parse_algorithm(t));
  return out;
}

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

Graph load_graph(const std::string& path, bool unit_weights) {
  MatrixMarketOptions options;
  options.unit_weights = unit_weights;
  return read_matrix_market_file(path, options);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic Leiden community detection benchmarks"};
  app.require_subcommand(1);

  // sweep
  CommonOptions sweep_opts;
  SweepConfig sweep;
  std::vector<std::string> graphs;
  bool unit_weights = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "Random batch updates on static graphs");
  sweep_cmd->add_option("-g,--graph", graphs, "Matrix Market graph (repeatable)")->required();
  sweep_cmd->add_option("--fractions", sweep.fractions, "Batch sizes as fractions of |E|")
      ->delimiter(',')
      ->required();
  sweep_cmd->add_option("--insertion-share", sweep.insertion_share, "Share of insertions in a batch")
      ->check(CLI::Range(0.0, 1.0));
  sweep_cmd->add_option("--repetitions", sweep.repetitions, "Batches per fraction")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", sweep.seed, "Batch generation seed");
  sweep_cmd->add_flag("--unit-weights", unit_weights, "Ignore stored edge values");
  add_common(sweep_cmd, sweep_opts);

  // temporal
  CommonOptions temporal_opts;
  TemporalConfig temporal;
  std::string edges_path;
  auto* temporal_cmd = app.add_subcommand("temporal", "Replay a timestamped edge stream");
  temporal_cmd->add_option("-e,--edges", edges_path, "Temporal edge list (u v t)")->required();
  temporal_cmd->add_option("--batch-fraction", temporal.batch_fraction,
                           "Batch size as a fraction of the temporal edge count")
      ->check(CLI::Range(0.0, 1.0));
  temporal_cmd->add_option("--batch-size", temporal.batch_size, "Batch size in edges (overrides fraction)");
  temporal_cmd->add_option("--batches", temporal.batch_count, "Number of batches")->check(CLI::PositiveNumber);
  temporal_cmd->add_option("--base-fraction", temporal.base_fraction, "Share of edges in the base graph")
      ->check(CLI::Range(0.0, 1.0));
  add_common(temporal_cmd, temporal_opts);

  // batch
  BatchSpec batch_spec;
  std::string batch_graph, batch_out = "-";
  bool batch_unit = false;
  auto* batch_cmd = app.add_subcommand("batch", "Write one random batch update");
  batch_cmd->add_option("-g,--graph", batch_graph, "Matrix Market graph")->required();
  batch_cmd->add_option("--fraction", batch_spec.fraction, "Batch size as a fraction of |E|")->required();
  batch_cmd->add_option("--insertion-share", batch_spec.insertion_share, "Share of insertions")
      ->check(CLI::Range(0.0, 1.0));
  batch_cmd->add_option("--seed", batch_spec.seed, "Generation seed");
  batch_cmd->add_flag("--unit-weights", batch_unit, "Ignore stored edge values");
  batch_cmd->add_option("-o,--output", batch_out, "Batch file, - for stdout");

  // replay
  CommonOptions replay_opts;
  std::string replay_graph;
  std::vector<std::string> batch_files;
  bool replay_unit = false;
  auto* replay_cmd = app.add_subcommand("replay", "Apply prepared batch files in order");
  replay_cmd->add_option("-g,--graph", replay_graph, "Matrix Market graph")->required();
  replay_cmd->add_option("-b,--batch", batch_files, "Batch file (repeatable)")->required();
  replay_cmd->add_flag("--unit-weights", replay_unit, "Ignore stored edge values");
  add_common(replay_cmd, replay_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep_cmd->parsed()) {
      sweep.algorithms = parse_algorithms(sweep_opts.algorithms);
      sweep.params = sweep_opts.params;
      std::vector<RunReport> rows;
      for (const auto& path : graphs) {
        const Graph g = load_graph(path, unit_weights);
        std::clog << path << ": " << g.vertex_count() << " vertices, " << g.undirected_edge_count()
                  << " edges\n";
        auto part = run_random_sweep(g, stem(path), sweep);
        rows.insert(rows.end(), part.begin(), part.end());
      }
      if (graphs.size() > 1) {
        auto overall = summarize_across_graphs(rows);
        rows.insert(rows.end(), overall.begin(), overall.end());
      }
      emit_report(rows, parse_report_format(sweep_opts.format), sweep_opts.output);
    } else if (temporal_cmd->parsed()) {
      temporal.algorithms = parse_algorithms(temporal_opts.algorithms);
      temporal.params = temporal_opts.params;
      const TemporalEdgeList list = read_temporal_edges_file(edges_path);
      std::clog << edges_path << ": " << list.edges.size() << " temporal edges, " << list.vertex_count
                << " vertices, " << list.skipped_self_loops << " self-loops dropped\n";
      const auto rows = run_temporal_replay(list, stem(edges_path), temporal, &std::clog);
      emit_report(rows, parse_report_format(temporal_opts.format), temporal_opts.output);
    } else if (batch_cmd->parsed()) {
      const Graph g = load_graph(batch_graph, batch_unit);
      const BatchUpdate b = generate_batch(g, batch_spec);
      if (batch_out == "-") {
        write_batch(std::cout, b);
      } else {
        std::ofstream out(batch_out);
        if (!out) throw std::runtime_error("cannot open '" + batch_out + "' for writing");
        write_batch(out, b);
      }
    } else if (replay_cmd->parsed()) {
      const Graph g = load_graph(replay_graph, replay_unit);
      std::vector<BatchUpdate> batches;
      for (const auto& path : batch_files) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open batch file '" + path + "'");
        batches.push_back(read_batch(in));
      }
      const auto rows = run_batch_replay(g, stem(replay_graph), batches,
                                         parse_algorithms(replay_opts.algorithms), replay_opts.params);
      emit_report(rows, parse_report_format(replay_opts.format), replay_opts.output);
    }
  } catch (const std::exception& e) {
    std::cerr << "dynleiden: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
