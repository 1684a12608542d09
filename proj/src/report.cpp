#include "dynleiden/report.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <type_traits>

#include "json.hpp"

namespace dynleiden {

namespace {

constexpr std::array<std::string_view, 22> kColumns = {
    "kind",          "graph",         "algorithm",        "batch_fraction",   "batch_size",
    "index",         "total_seconds", "marking_seconds",  "move_seconds",     "refine_seconds",
    "aggregate_seconds", "passes",    "iterations",       "modularity",       "communities",
    "affected_fraction", "changed_community_fraction",   "disconnected_count", "first_pass_moves",
    "max_passes_hit", "threads",      "seed"};

// Visits every field in column order. Works on const and non-const reports.
template <class Report, class F>
void for_each_field(Report& r, F&& f) {
  f(kColumns[0], r.kind);
  f(kColumns[1], r.graph);
  f(kColumns[2], r.algorithm);
  f(kColumns[3], r.batch_fraction);
  f(kColumns[4], r.batch_size);
  f(kColumns[5], r.index);
  f(kColumns[6], r.total_seconds);
  f(kColumns[7], r.marking_seconds);
  f(kColumns[8], r.move_seconds);
  f(kColumns[9], r.refine_seconds);
  f(kColumns[10], r.aggregate_seconds);
  f(kColumns[11], r.passes);
  f(kColumns[12], r.iterations);
  f(kColumns[13], r.modularity);
  f(kColumns[14], r.communities);
  f(kColumns[15], r.affected_fraction);
  f(kColumns[16], r.changed_community_fraction);
  f(kColumns[17], r.disconnected_count);
  f(kColumns[18], r.first_pass_moves);
  f(kColumns[19], r.max_passes_hit);
  f(kColumns[20], r.threads);
  f(kColumns[21], r.seed);
}

std::string format_number(double x) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

template <class T>
std::string format_value(const T& v) {
  if constexpr (std::is_same_v<T, std::string>)
    return v;
  else if constexpr (std::is_floating_point_v<T>)
    return format_number(v);
  else
    return std::to_string(v);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

struct NumericField {
  double RunReport::*member;
  bool timing;
};

constexpr std::array<NumericField, 15> kNumeric = {{
    {&RunReport::batch_fraction, false},   {&RunReport::batch_size, false},
    {&RunReport::total_seconds, true},     {&RunReport::marking_seconds, true},
    {&RunReport::move_seconds, true},      {&RunReport::refine_seconds, true},
    {&RunReport::aggregate_seconds, true}, {&RunReport::passes, false},
    {&RunReport::modularity, false},       {&RunReport::communities, false},
    {&RunReport::affected_fraction, false}, {&RunReport::changed_community_fraction, false},
    {&RunReport::disconnected_count, false}, {&RunReport::first_pass_moves, false},
    {&RunReport::max_passes_hit, false},
}};

RunReport average(std::span<const RunReport> rows, const char* kind, bool geometric_timings) {
  if (rows.empty()) throw std::invalid_argument("cannot average an empty set of reports");
  RunReport out = rows.front();
  const double count = static_cast<double>(rows.size());
  for (const auto& [member, timing] : kNumeric) {
    double acc = 0.0;
    if (geometric_timings && timing) {
      bool zero = false;
      for (const auto& row : rows) {
        if (row.*member <= 0.0) zero = true;
        else acc += std::log(row.*member);
      }
      out.*member = zero ? 0.0 : std::exp(acc / count);
    } else {
      for (const auto& row : rows) acc += row.*member;
      out.*member = acc / count;
    }
  }
  out.kind = kind;
  out.index = 0;
  out.iterations.clear();
  return out;
}

}  // namespace

std::span<const std::string_view> report_columns() { return kColumns; }

void write_reports_csv(std::ostream& out, std::span<const RunReport> reports) {
  for (std::size_t c = 0; c < kColumns.size(); ++c) out << (c ? "," : "") << kColumns[c];
  out << "\r\n";
  for (const auto& r : reports) {
    bool first = true;
    for_each_field(r, [&](std::string_view, const auto& field) {
      out << (first ? "" : ",") << csv_escape(format_value(field));
      first = false;
    });
    out << "\r\n";
  }
}

void write_reports_json(std::ostream& out, std::span<const RunReport> reports) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json row;
    for_each_field(r, [&](std::string_view name, const auto& field) { row[std::string(name)] = field; });
    rows.push_back(std::move(row));
  }
  out << rows.dump(2) << '\n';
}

std::vector<RunReport> read_reports_json(std::istream& in) {
  const auto rows = nlohmann::json::parse(in);
  if (!rows.is_array()) throw std::runtime_error("report JSON must be an array");
  std::vector<RunReport> out;
  for (const auto& row : rows) {
    RunReport r;
    for_each_field(r, [&](std::string_view name, auto& field) {
      const std::string key(name);
      if (!row.contains(key)) throw std::runtime_error("report JSON row lacks '" + key + "'");
      row.at(key).get_to(field);
    });
    out.push_back(std::move(r));
  }
  return out;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw std::invalid_argument("unknown report format '" + std::string(name) + "'");
}

void emit_report(std::span<const RunReport> reports, ReportFormat format, const std::string& path) {
  auto write = [&](std::ostream& out) {
    if (format == ReportFormat::Csv) write_reports_csv(out, reports);
    else write_reports_json(out, reports);
  };
  if (path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write(out);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

RunReport mean_report(std::span<const RunReport> rows) { return average(rows, "mean", false); }

RunReport overall_report(std::span<const RunReport> rows) {
  RunReport r = average(rows, "overall", true);
  r.graph = "*";
  return r;
}

}  // namespace dynleiden
