#pragma once

#include <span>
#include <string>
#include <string_view>

#include "physarum/harness.hpp"
#include "physarum/trace.hpp"

namespace physarum {

enum class ReportFormat { csv, json, trace_jsonl };

/// "csv", "json" or "trace-jsonl"; std::invalid_argument otherwise.
ReportFormat parse_report_format(std::string_view name);

/// Header: size,criterion,success_rate,failed,budget_exhausted,mean_time_s,mean_iterations
/// Means are empty when a cell has no successful run.
std::string success_table_csv(const SuccessTable& table);

/// One row per run:
/// size,graph_index,graph_seed,criterion,terminated_by,iterations,final_length,oracle_length,success,time_s
std::string runs_csv(const SuccessTable& table);

/// One JSON object per iteration:
/// {"iteration","dpath_length","dpath_nodes","sum_abs_delta_D","elapsed_ns"}.
/// Node ids are one-based; a failed extraction has dpath_length null and no nodes.
std::string trace_jsonl(std::span<const TraceEntry> trace);

/// Header: repeat,tpoint_iteration,confirmed,time_to_tpoint_s,iterations_executed
std::string tpoint_csv(const TPointReport& report);

std::string success_table_json(const SuccessTable& table);
std::string tpoint_json(const TPointReport& report);

/// Renders `table` in `format` (csv or json) and writes it atomically to
/// `destination`. Throws IoError with the path.
void emit_report(const SuccessTable& table, ReportFormat format, const std::string& destination);
/// csv, json, or trace-jsonl (the trace of the first repeat).
void emit_report(const TPointReport& report, ReportFormat format, const std::string& destination);
/// trace-jsonl only.
void emit_trace(std::span<const TraceEntry> trace, const std::string& destination);

}  // namespace physarum
