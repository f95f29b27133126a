#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "physarum/dominant_path.hpp"
#include "physarum/engine.hpp"
#include "physarum/graph.hpp"
#include "physarum/trace.hpp"

namespace physarum {

enum class RunEnd { criterion, budget, solve_failed };

std::string to_string(RunEnd end);

/// One solver run inside a suite, scored against the Dijkstra length.
struct RunRecord {
  std::string graph_id;
  std::size_t graph_size = 0;
  std::size_t graph_index = 0;
  std::uint64_t graph_seed = 0;
  SolverConfig config;
  std::string criterion;
  std::size_t iterations_used = 0;
  RunEnd terminated_by = RunEnd::budget;
  std::optional<Path> final_path;
  double final_length = 0.0;  // NaN without a final path
  double oracle_length = 0.0;
  /// Criterion fired and final_length == oracle_length.
  bool success = false;
  std::chrono::nanoseconds wall_time{0};
  std::vector<TraceEntry> trace;  // only with SuiteOptions::keep_traces
  std::string error;              // solve failure message
};

/// Scores an engine run. Budget exhaustion is never a success.
RunRecord score_run(const RunResult& result, double oracle_length);

/// One (size, criterion) cell. Counts partition `total`.
struct SuccessCell {
  std::size_t size = 0;
  std::string criterion;
  std::size_t total = 0;
  std::size_t successes = 0;
  std::size_t failed = 0;            // criterion fired on a wrong path, or the solve failed
  std::size_t budget_exhausted = 0;  // criterion never fired
  /// Means over successful runs only; NaN when there are none.
  double mean_time_s = 0.0;
  double mean_iterations = 0.0;

  [[nodiscard]] double success_rate() const noexcept {
    return total == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(total);
  }
};

struct SuccessTable {
  /// Ordered by size, then criterion, in the order they were requested.
  std::vector<SuccessCell> cells;
  /// Ordered by size, graph index, then criterion.
  std::vector<RunRecord> runs;

  [[nodiscard]] const SuccessCell& cell(std::size_t size, const std::string& criterion) const;
};

struct SuiteOptions {
  std::vector<std::size_t> sizes;
  std::size_t graphs_per_size = 50;
  std::vector<TerminationCriterion> criteria;
  std::uint64_t seed = 1;
  /// max_iterations is the budget.
  SolverConfig config;
  std::int64_t w_min = 1;
  std::int64_t w_max = 10000;
  unsigned jobs = 1;
  bool keep_traces = false;
  /// Called after every iteration of every run, from worker threads when
  /// jobs > 1.
  std::function<void(const Graph&, const SolverState&, const TraceEntry&)> inspect;
};

/// Seed of graph `index` of size `size`: derive_seed(master, size, index).
std::uint64_t suite_graph_seed(std::uint64_t master, std::size_t size, std::size_t index);

/// Complete graphs of every size, every criterion on every graph. Output does
/// not depend on `jobs` apart from timing fields.
SuccessTable run_success_suite(const SuiteOptions& options);

std::vector<SuccessCell> aggregate(const std::vector<RunRecord>& runs,
                                   const std::vector<std::size_t>& sizes,
                                   const std::vector<std::string>& criteria);

struct TPointRun {
  std::optional<std::size_t> tpoint_iteration;
  /// Run time up to and including the T-Point iteration.
  std::chrono::nanoseconds time_to_tpoint{0};
  bool confirmed = false;
  std::size_t iterations_executed = 0;
  std::vector<TraceEntry> trace;
};

struct TPointReport {
  std::string graph_id;
  std::string criterion;
  double oracle_length = 0.0;
  std::size_t min_window = kDefaultTPointWindow;
  std::vector<TPointRun> runs;

  [[nodiscard]] bool confirmed() const noexcept;
  /// T-Point of the first repeat (every repeat is identical).
  [[nodiscard]] std::optional<std::size_t> tpoint_iteration() const noexcept;
  [[nodiscard]] double mean_time_to_tpoint_s() const noexcept;
};

/// Criterion-independent evaluation. Each repeat steps the engine, comparing
/// the D-Path length with the Dijkstra length after every iteration. The first
/// match opens a watch; a mismatch closes it again; the watch confirms once
/// `min_window` further iterations have all matched. `loop_criterion` is
/// updated every iteration like in a normal run but never stops it. A repeat
/// whose budget ends before confirmation reports confirmed = false.
TPointReport run_tpoint_eval(const Graph& g, const SolverConfig& config,
                             const TerminationCriterion& loop_criterion, std::size_t repeats,
                             std::size_t min_window = kDefaultTPointWindow);

}  // namespace physarum
