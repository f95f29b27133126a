#include "physarum/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "physarum/dijkstra.hpp"
#include "physarum/error.hpp"
#include "physarum/generators.hpp"
#include "physarum/random.hpp"

namespace physarum {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double seconds(std::chrono::nanoseconds ns) { return std::chrono::duration<double>(ns).count(); }

}  // namespace

std::string to_string(RunEnd end) {
  switch (end) {
    case RunEnd::criterion:
      return "criterion";
    case RunEnd::budget:
      return "budget";
    case RunEnd::solve_failed:
      return "solve_failed";
  }
  return "unknown";
}

RunRecord score_run(const RunResult& result, double oracle_length) {
  RunRecord r;
  r.iterations_used = result.iterations;
  r.terminated_by = result.terminated_by == TerminatedBy::criterion ? RunEnd::criterion : RunEnd::budget;
  r.final_path = result.final_dpath;
  r.final_length = result.final_dpath ? result.final_dpath->length : kNaN;
  r.oracle_length = oracle_length;
  r.success = r.terminated_by == RunEnd::criterion && r.final_length == oracle_length;
  r.wall_time = result.wall_time;
  return r;
}

const SuccessCell& SuccessTable::cell(std::size_t size, const std::string& criterion) const {
  for (const auto& c : cells) {
    if (c.size == size && c.criterion == criterion) return c;
  }
  throw std::out_of_range("no cell for size " + std::to_string(size) + " criterion " + criterion);
}

std::uint64_t suite_graph_seed(std::uint64_t master, std::size_t size, std::size_t index) {
  return derive_seed(master, size, index);
}

std::vector<SuccessCell> aggregate(const std::vector<RunRecord>& runs,
                                   const std::vector<std::size_t>& sizes,
                                   const std::vector<std::string>& criteria) {
  std::vector<SuccessCell> cells;
  for (std::size_t size : sizes) {
    for (const auto& crit : criteria) {
      SuccessCell cell{.size = size, .criterion = crit};
      double time_sum = 0.0;
      double iter_sum = 0.0;
      for (const auto& r : runs) {
        if (r.graph_size != size || r.criterion != crit) continue;
        ++cell.total;
        if (r.success) {
          ++cell.successes;
          time_sum += seconds(r.wall_time);
          iter_sum += static_cast<double>(r.iterations_used);
        } else if (r.terminated_by == RunEnd::budget) {
          ++cell.budget_exhausted;
        } else {
          ++cell.failed;
        }
      }
      const auto n = static_cast<double>(cell.successes);
      cell.mean_time_s = cell.successes ? time_sum / n : kNaN;
      cell.mean_iterations = cell.successes ? iter_sum / n : kNaN;
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

SuccessTable run_success_suite(const SuiteOptions& options) {
  if (options.sizes.empty()) throw std::invalid_argument("suite needs at least one size");
  if (options.graphs_per_size < 1) throw std::invalid_argument("suite needs at least one graph per size");
  if (options.criteria.empty()) throw std::invalid_argument("suite needs at least one criterion");
  options.config.validate();

  const std::size_t per_graph = options.criteria.size();
  const std::size_t graphs = options.sizes.size() * options.graphs_per_size;
  std::vector<RunRecord> runs(graphs * per_graph);

  // Task t covers graph (t / graphs_per_size, t % graphs_per_size) and writes
  // its own slots, so completion order cannot affect the result.
  auto work = [&](std::size_t task) {
    const std::size_t size = options.sizes[task / options.graphs_per_size];
    const std::size_t index = task % options.graphs_per_size;
    const std::uint64_t seed = suite_graph_seed(options.seed, size, index);
    const Graph g = gen_complete(size, options.w_min, options.w_max, seed);
    const double oracle = dijkstra(g).length;
    Engine engine(g, options.config);
    StepObserver observer;
    if (options.inspect) {
      observer = [&](const SolverState& state, const TraceEntry& entry) {
        options.inspect(g, state, entry);
        return true;
      };
    }
    for (std::size_t c = 0; c < per_graph; ++c) {
      RunRecord rec;
      try {
        const RunResult result = engine.run(options.criteria[c], observer);
        rec = score_run(result, oracle);
        if (options.keep_traces) rec.trace = result.trace;
      } catch (const SolveFailed& e) {
        rec.terminated_by = RunEnd::solve_failed;
        rec.final_length = kNaN;
        rec.oracle_length = oracle;
        rec.error = e.what();
      }
      rec.graph_id = "complete-n" + std::to_string(size) + "-g" + std::to_string(index);
      rec.graph_size = size;
      rec.graph_index = index;
      rec.graph_seed = seed;
      rec.config = options.config;
      rec.criterion = options.criteria[c].describe();
      runs[task * per_graph + c] = std::move(rec);
    }
  };

  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(graphs)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t t = next++; t < graphs; t = next++) {
      try {
        work(t);
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  std::vector<std::string> names;
  for (const auto& c : options.criteria) names.push_back(c.describe());
  SuccessTable table;
  table.cells = aggregate(runs, options.sizes, names);
  table.runs = std::move(runs);
  return table;
}

bool TPointReport::confirmed() const noexcept {
  return !runs.empty() && std::all_of(runs.begin(), runs.end(), [](const auto& r) { return r.confirmed; });
}

std::optional<std::size_t> TPointReport::tpoint_iteration() const noexcept {
  if (runs.empty()) return std::nullopt;
  return runs.front().tpoint_iteration;
}

double TPointReport::mean_time_to_tpoint_s() const noexcept {
  if (runs.empty()) return kNaN;
  double sum = 0.0;
  for (const auto& r : runs) sum += seconds(r.time_to_tpoint);
  return sum / static_cast<double>(runs.size());
}

TPointReport run_tpoint_eval(const Graph& g, const SolverConfig& config,
                             const TerminationCriterion& loop_criterion, std::size_t repeats,
                             std::size_t min_window) {
  if (repeats < 1) throw std::invalid_argument("repeats must be at least 1");
  if (min_window < 1) throw std::invalid_argument("window must be at least 1");
  using Clock = std::chrono::steady_clock;

  TPointReport report;
  report.criterion = loop_criterion.describe();
  report.oracle_length = dijkstra(g).length;
  report.min_window = min_window;

  Engine engine(g, config);
  for (std::size_t rep = 0; rep < repeats; ++rep) {
    TerminationCriterion criterion = loop_criterion;
    criterion.reset();
    TPointRun run;
    SolverState state = engine.initial_state();
    const auto start = Clock::now();
    std::optional<std::size_t> watch;
    std::chrono::nanoseconds watch_time{0};
    while (state.iteration < config.max_iterations) {
      TraceEntry entry = engine.step(state);
      entry.elapsed = Clock::now() - start;
      (void)criterion.observe(entry);
      const bool match = entry.dpath && entry.dpath->length == report.oracle_length;
      if (!match) {
        watch.reset();
      } else if (!watch) {
        watch = entry.iteration;
        watch_time = entry.elapsed;
      }
      run.trace.push_back(std::move(entry));
      if (watch && state.iteration - *watch >= min_window) {
        run.confirmed = true;
        break;
      }
    }
    run.iterations_executed = state.iteration;
    run.tpoint_iteration = watch;
    run.time_to_tpoint = watch ? watch_time : std::chrono::nanoseconds{0};
    report.runs.push_back(std::move(run));
  }
  return report;
}

}  // namespace physarum
