#include "physarum/report.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "physarum/io.hpp"

namespace physarum {

namespace {

using json = nlohmann::ordered_json;

double seconds(std::chrono::nanoseconds ns) { return std::chrono::duration<double>(ns).count(); }

// Empty cell for NaN so spreadsheets read it as missing.
std::string cell(double value) { return std::isnan(value) ? std::string() : format_number(value); }

json number_or_null(double value) { return std::isfinite(value) ? json(value) : json(nullptr); }

json one_based(const std::vector<NodeId>& nodes) {
  json out = json::array();
  for (NodeId n : nodes) out.push_back(n + 1);
  return out;
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  if (name == "trace-jsonl") return ReportFormat::trace_jsonl;
  throw std::invalid_argument("unknown report format '" + std::string(name) + "'");
}

std::string success_table_csv(const SuccessTable& table) {
  std::string out = "size,criterion,success_rate,failed,budget_exhausted,mean_time_s,mean_iterations\n";
  for (const auto& c : table.cells) {
    out += std::to_string(c.size) + "," + c.criterion + "," + format_number(c.success_rate()) + "," +
           std::to_string(c.failed) + "," + std::to_string(c.budget_exhausted) + "," +
           cell(c.mean_time_s) + "," + cell(c.mean_iterations) + "\n";
  }
  return out;
}

std::string runs_csv(const SuccessTable& table) {
  std::string out =
      "size,graph_index,graph_seed,criterion,terminated_by,iterations,final_length,oracle_length,"
      "success,time_s\n";
  for (const auto& r : table.runs) {
    out += std::to_string(r.graph_size) + "," + std::to_string(r.graph_index) + "," +
           std::to_string(r.graph_seed) + "," + r.criterion + "," + to_string(r.terminated_by) + "," +
           std::to_string(r.iterations_used) + "," + cell(r.final_length) + "," +
           format_number(r.oracle_length) + "," + (r.success ? "1" : "0") + "," +
           format_number(seconds(r.wall_time)) + "\n";
  }
  return out;
}

std::string trace_jsonl(std::span<const TraceEntry> trace) {
  std::string out;
  for (const auto& e : trace) {
    json line;
    line["iteration"] = e.iteration;
    line["dpath_length"] = number_or_null(e.dpath_length());
    line["dpath_nodes"] = e.dpath ? one_based(e.dpath->nodes) : json::array();
    line["sum_abs_delta_D"] = e.sum_abs_delta_d;
    line["elapsed_ns"] = e.elapsed.count();
    out += line.dump();
    out += '\n';
  }
  return out;
}

std::string tpoint_csv(const TPointReport& report) {
  std::string out = "repeat,tpoint_iteration,confirmed,time_to_tpoint_s,iterations_executed\n";
  for (std::size_t i = 0; i < report.runs.size(); ++i) {
    const auto& r = report.runs[i];
    out += std::to_string(i) + "," +
           (r.tpoint_iteration ? std::to_string(*r.tpoint_iteration) : std::string()) + "," +
           (r.confirmed ? "1" : "0") + "," + format_number(seconds(r.time_to_tpoint)) + "," +
           std::to_string(r.iterations_executed) + "\n";
  }
  return out;
}

std::string success_table_json(const SuccessTable& table) {
  json cells = json::array();
  for (const auto& c : table.cells) {
    cells.push_back({{"size", c.size},
                     {"criterion", c.criterion},
                     {"total", c.total},
                     {"successes", c.successes},
                     {"success_rate", c.success_rate()},
                     {"failed", c.failed},
                     {"budget_exhausted", c.budget_exhausted},
                     {"mean_time_s", number_or_null(c.mean_time_s)},
                     {"mean_iterations", number_or_null(c.mean_iterations)}});
  }
  return json{{"cells", cells}}.dump(2) + "\n";
}

std::string tpoint_json(const TPointReport& report) {
  json runs = json::array();
  for (const auto& r : report.runs) {
    runs.push_back({{"tpoint_iteration",
                     r.tpoint_iteration ? json(*r.tpoint_iteration) : json(nullptr)},
                    {"confirmed", r.confirmed},
                    {"time_to_tpoint_s", seconds(r.time_to_tpoint)},
                    {"iterations_executed", r.iterations_executed}});
  }
  return json{{"graph_id", report.graph_id},
              {"criterion", report.criterion},
              {"oracle_length", report.oracle_length},
              {"min_window", report.min_window},
              {"runs", runs}}
             .dump(2) +
         "\n";
}

void emit_report(const SuccessTable& table, ReportFormat format, const std::string& destination) {
  switch (format) {
    case ReportFormat::csv:
      return write_file_atomic(destination, success_table_csv(table));
    case ReportFormat::json:
      return write_file_atomic(destination, success_table_json(table));
    case ReportFormat::trace_jsonl:
      break;
  }
  throw std::invalid_argument("a success table has no trace-jsonl form");
}

void emit_report(const TPointReport& report, ReportFormat format, const std::string& destination) {
  switch (format) {
    case ReportFormat::csv:
      return write_file_atomic(destination, tpoint_csv(report));
    case ReportFormat::json:
      return write_file_atomic(destination, tpoint_json(report));
    case ReportFormat::trace_jsonl:
      if (report.runs.empty()) return write_file_atomic(destination, "");
      return write_file_atomic(destination, trace_jsonl(report.runs.front().trace));
  }
}

void emit_trace(std::span<const TraceEntry> trace, const std::string& destination) {
  write_file_atomic(destination, trace_jsonl(trace));
}

}  // namespace physarum
