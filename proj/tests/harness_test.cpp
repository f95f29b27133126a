#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "physarum/dijkstra.hpp"
#include "physarum/error.hpp"
#include "physarum/generators.hpp"
#include "physarum/harness.hpp"
#include "physarum/io.hpp"
#include "physarum/report.hpp"

namespace physarum {
namespace {

RunRecord record(std::size_t size, const std::string& crit, RunEnd end, double length,
                 double oracle, std::size_t iterations, double seconds) {
  RunRecord r;
  r.graph_size = size;
  r.criterion = crit;
  r.terminated_by = end;
  r.final_length = length;
  r.oracle_length = oracle;
  r.success = end == RunEnd::criterion && length == oracle;
  r.iterations_used = iterations;
  r.wall_time = std::chrono::nanoseconds(static_cast<std::int64_t>(seconds * 1e9));
  return r;
}

TEST(Aggregate, CountsPartitionTotal) {
  const std::vector<RunRecord> runs{
      record(10, "k=5", RunEnd::criterion, 7, 7, 10, 1.0),
      record(10, "k=5", RunEnd::criterion, 8, 7, 20, 5.0),
      record(10, "k=5", RunEnd::budget, 7, 7, 99, 9.0),
      record(10, "k=5", RunEnd::solve_failed, std::nan(""), 7, 0, 0.0),
      record(10, "k=5", RunEnd::criterion, 7, 7, 30, 3.0),
      record(10, "eps=0.1", RunEnd::budget, 7, 7, 99, 1.0),
  };
  const auto cells = aggregate(runs, {10}, {"k=5", "eps=0.1"});
  ASSERT_EQ(cells.size(), 2u);
  const SuccessCell& k = cells[0];
  EXPECT_EQ(k.total, 5u);
  EXPECT_EQ(k.successes, 2u);
  EXPECT_EQ(k.failed, 2u);
  EXPECT_EQ(k.budget_exhausted, 1u);
  EXPECT_DOUBLE_EQ(k.success_rate(), 0.4);
  EXPECT_DOUBLE_EQ(k.mean_iterations, 20.0);
  EXPECT_NEAR(k.mean_time_s, 2.0, 1e-9);
  const SuccessCell& e = cells[1];
  EXPECT_EQ(e.successes, 0u);
  EXPECT_TRUE(std::isnan(e.mean_iterations));
  EXPECT_TRUE(std::isnan(e.mean_time_s));
}

TEST(ScoreRun, BudgetIsNeverSuccess) {
  RunResult r;
  r.final_dpath = make_path(testing::triangle(), {0, 2, 1});
  r.iterations = 10;
  r.terminated_by = TerminatedBy::budget;
  EXPECT_FALSE(score_run(r, 7.0).success);
  r.terminated_by = TerminatedBy::criterion;
  EXPECT_TRUE(score_run(r, 7.0).success);
  EXPECT_FALSE(score_run(r, 6.0).success);
  r.final_dpath.reset();
  const RunRecord none = score_run(r, 7.0);
  EXPECT_FALSE(none.success);
  EXPECT_TRUE(std::isnan(none.final_length));
}

TEST(Suite, TwoNodeGraphsAlwaysSucceed) {
  SuiteOptions opts;
  opts.sizes = {2};
  opts.graphs_per_size = 5;
  opts.criteria = {TerminationCriterion::dpath_stable(3), TerminationCriterion::epsilon(1e-2)};
  const SuccessTable t = run_success_suite(opts);
  ASSERT_EQ(t.runs.size(), 10u);
  for (const auto& cell : t.cells) {
    EXPECT_EQ(cell.total, 5u);
    EXPECT_EQ(cell.success_rate(), 1.0);
  }
  EXPECT_EQ(t.cell(2, "k=3").mean_iterations, 4.0);
}

TEST(Suite, GraphSeedsFollowDerivation) {
  SuiteOptions opts;
  opts.sizes = {5, 6};
  opts.graphs_per_size = 3;
  opts.seed = 11;
  opts.criteria = {TerminationCriterion::dpath_stable(2)};
  const SuccessTable t = run_success_suite(opts);
  ASSERT_EQ(t.runs.size(), 6u);
  for (const RunRecord& r : t.runs) {
    EXPECT_EQ(r.graph_seed, derive_seed(11, r.graph_size, r.graph_index));
    EXPECT_EQ(r.graph_seed, suite_graph_seed(11, r.graph_size, r.graph_index));
    const Graph g = gen_complete(r.graph_size, 1, 10000, r.graph_seed);
    EXPECT_EQ(r.oracle_length, dijkstra(g).length);
  }
  EXPECT_EQ(t.runs[0].graph_size, 5u);
  EXPECT_EQ(t.runs[3].graph_size, 6u);
  EXPECT_EQ(t.runs[4].graph_index, 1u);
}

std::string strip_times(SuccessTable t) {
  for (auto& c : t.cells) c.mean_time_s = 0;
  for (auto& r : t.runs) r.wall_time = {};
  return success_table_csv(t) + runs_csv(t);
}

TEST(Suite, ParallelRunsMatchSerial) {
  SuiteOptions opts;
  opts.sizes = {6, 12};
  opts.graphs_per_size = 8;
  opts.seed = 3;
  opts.criteria = {TerminationCriterion::dpath_stable(5), TerminationCriterion::epsilon(1e-2)};
  const std::string serial = strip_times(run_success_suite(opts));
  opts.jobs = 4;
  EXPECT_EQ(strip_times(run_success_suite(opts)), serial);
}

TEST(TPointEval, TriangleConvergesAtFirstIteration) {
  const TPointReport r =
      run_tpoint_eval(testing::triangle(), SolverConfig{}, TerminationCriterion::epsilon(1e-2), 3);
  EXPECT_EQ(r.oracle_length, 7.0);
  EXPECT_EQ(r.criterion, "eps=0.01");
  ASSERT_EQ(r.runs.size(), 3u);
  EXPECT_TRUE(r.confirmed());
  EXPECT_EQ(r.tpoint_iteration(), std::optional<std::size_t>(1));
  EXPECT_EQ(r.runs[0].iterations_executed, 51u);
  EXPECT_GE(r.mean_time_to_tpoint_s(), 0.0);
}

TEST(TPointEval, IndependentOfLoopCriterion) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = gen_complete(5, 1, 10000, seed);
    const auto a = run_tpoint_eval(g, SolverConfig{}, TerminationCriterion::epsilon(1e-3), 1);
    const auto b = run_tpoint_eval(g, SolverConfig{}, TerminationCriterion::dpath_stable(30), 1);
    ASSERT_TRUE(a.confirmed());
    EXPECT_EQ(a.tpoint_iteration(), b.tpoint_iteration());
    EXPECT_EQ(a.runs[0].iterations_executed, b.runs[0].iterations_executed);
    // Agrees with the offline detector on the recorded trace.
    const auto offline = detect_tpoint(a.runs[0].trace, a.oracle_length, a.min_window);
    EXPECT_EQ(offline.tpoint_iteration, a.tpoint_iteration());
    EXPECT_TRUE(offline.confirmed);
  }
}

TEST(TPointEval, UnconfirmedWhenBudgetEnds) {
  SolverConfig cfg;
  cfg.max_iterations = 20;
  const auto r = run_tpoint_eval(testing::triangle(), cfg, TerminationCriterion::dpath_stable(5), 1, 50);
  EXPECT_FALSE(r.confirmed());
  EXPECT_EQ(r.tpoint_iteration(), std::optional<std::size_t>(1));
  EXPECT_EQ(r.runs[0].iterations_executed, 20u);
  EXPECT_THROW(run_tpoint_eval(testing::triangle(), cfg, TerminationCriterion::epsilon(1), 0),
               std::invalid_argument);
}

TEST(Report, SuccessCsvSchema) {
  SuiteOptions opts;
  opts.sizes = {4};
  opts.graphs_per_size = 2;
  opts.criteria = {TerminationCriterion::dpath_stable(3)};
  const SuccessTable t = run_success_suite(opts);
  const std::string csv = success_table_csv(t);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "size,criterion,success_rate,failed,budget_exhausted,mean_time_s,mean_iterations");
  EXPECT_EQ(csv.substr(csv.find('\n') + 1, 12), "4,k=3,1,0,0,");
  const std::string runs = runs_csv(t);
  EXPECT_EQ(runs.substr(0, runs.find('\n')),
            "size,graph_index,graph_seed,criterion,terminated_by,iterations,final_length,"
            "oracle_length,success,time_s");
  EXPECT_EQ(std::count(runs.begin(), runs.end(), '\n'), 3);

  const auto j = nlohmann::json::parse(success_table_json(t));
  EXPECT_EQ(j["cells"][0]["criterion"], "k=3");
}

TEST(Report, EmptyMeansForCellsWithoutSuccess) {
  SuccessTable t;
  t.cells = aggregate({record(3, "k=1", RunEnd::budget, 1, 1, 5, 1)}, {3}, {"k=1"});
  EXPECT_EQ(success_table_csv(t),
            "size,criterion,success_rate,failed,budget_exhausted,mean_time_s,mean_iterations\n"
            "3,k=1,0,0,1,,\n");
}

TEST(Report, TraceJsonl) {
  const RunResult r = run(testing::triangle(), SolverConfig{}, TerminationCriterion::dpath_stable(2));
  std::vector<TraceEntry> trace = r.trace;
  trace.back().dpath.reset();
  const std::string text = trace_jsonl(trace);
  std::vector<nlohmann::ordered_json> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    lines.push_back(nlohmann::ordered_json::parse(text.substr(pos, nl - pos)));
    pos = nl + 1;
  }
  ASSERT_EQ(lines.size(), 3u);
  std::vector<std::string> keys;
  for (const auto& [k, v] : lines[0].items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"iteration", "dpath_length", "dpath_nodes",
                                            "sum_abs_delta_D", "elapsed_ns"}));
  EXPECT_EQ(lines[0]["iteration"], 1);
  EXPECT_EQ(lines[0]["dpath_length"], 7.0);
  EXPECT_EQ(lines[0]["dpath_nodes"], nlohmann::ordered_json::array({1, 3, 2}));
  EXPECT_NEAR(lines[0]["sum_abs_delta_D"].get<double>(), 9.0 / 68.0, 1e-12);
  EXPECT_TRUE(lines[2]["dpath_length"].is_null());
}

TEST(Report, TPointCsv) {
  const auto r = run_tpoint_eval(testing::triangle(), SolverConfig{}, TerminationCriterion::dpath_stable(5), 2);
  const std::string csv = tpoint_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "repeat,tpoint_iteration,confirmed,time_to_tpoint_s,iterations_executed");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  const auto j = nlohmann::json::parse(tpoint_json(r));
  EXPECT_EQ(j["criterion"], "k=5");
  EXPECT_EQ(parse_report_format("trace-jsonl"), ReportFormat::trace_jsonl);
  EXPECT_THROW(parse_report_format("xml"), std::invalid_argument);
}

TEST(Report, EmissionIsByteIdentical) {
  SuiteOptions opts;
  opts.sizes = {5};
  opts.graphs_per_size = 3;
  opts.criteria = {TerminationCriterion::dpath_stable(3)};
  SuccessTable t = run_success_suite(opts);
  for (auto& c : t.cells) c.mean_time_s = 0.5;
  const auto dir = std::filesystem::temp_directory_path() / "physarum_report_test";
  std::filesystem::create_directories(dir);
  const std::string a = (dir / "a.json").string(), b = (dir / "b.json").string();
  emit_report(t, ReportFormat::json, a);
  emit_report(t, ReportFormat::json, b);
  EXPECT_EQ(read_file(a), read_file(b));
  EXPECT_EQ(read_file(a), success_table_json(t));
  std::filesystem::remove_all(dir);
  EXPECT_THROW(emit_report(t, ReportFormat::csv, "/nonexistent/dir/out.csv"), IoError);
  EXPECT_THROW(emit_report(t, ReportFormat::trace_jsonl, (dir / "x").string()), std::invalid_argument);
}

}  // namespace
}  // namespace physarum
