#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dynleiden {

/// One measured run (kind "run"), or an average over runs ("mean" across
/// repetitions, "overall" across graphs). Count-like fields are real so that
/// averages are exact.
struct RunReport {
  std::string kind = "run";
  std::string graph;
  std::string algorithm;
  double batch_fraction = 0.0;
  double batch_size = 0.0;
  /// Repetition (random sweep) or batch index (temporal replay); 0 on averages.
  std::size_t index = 0;
  double total_seconds = 0.0;
  double marking_seconds = 0.0;
  double move_seconds = 0.0;
  double refine_seconds = 0.0;
  double aggregate_seconds = 0.0;
  double passes = 0.0;
  /// Local-moving iterations of each pass, `;`-separated. Empty on averages.
  std::string iterations;
  double modularity = 0.0;
  double communities = 0.0;
  double affected_fraction = 0.0;
  double changed_community_fraction = 0.0;
  double disconnected_count = 0.0;
  double first_pass_moves = 0.0;
  double max_passes_hit = 0.0;
  int threads = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

/// Column order of the CSV output.
std::span<const std::string_view> report_columns();

void write_reports_csv(std::ostream& out, std::span<const RunReport> reports);
void write_reports_json(std::ostream& out, std::span<const RunReport> reports);
std::vector<RunReport> read_reports_json(std::istream& in);

enum class ReportFormat { Csv, Json };
ReportFormat parse_report_format(std::string_view name);

/// Writes to `path`, or to stdout when path is "-". Throws std::runtime_error
/// if the file cannot be opened.
void emit_report(std::span<const RunReport> reports, ReportFormat format, const std::string& path);

/// Arithmetic mean of every numeric field. Identity fields are taken from the
/// first row; kind is set to "mean".
RunReport mean_report(std::span<const RunReport> rows);

/// Like mean_report but with geometric means of the timing fields; kind is
/// "overall" and graph is "*".
RunReport overall_report(std::span<const RunReport> rows);

}  // namespace dynleiden
