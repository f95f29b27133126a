// physarum: command-line front end for the physarum shortest-path solver.
//
//   physarum gen complete --n 50 --seed 1 -o g.txt
//   physarum solve --graph g.txt --criterion k=30 --trace t.jsonl
//   physarum bench --sizes 10,100 --count 50 --criteria eps=1e-2,k=30 --seed 7 -o success.csv
//   physarum tpoint --graph g.txt --criterion k=30 --window 50
//
// Exit codes: 0 ok, 2 usage/validation, 3 I/O, 4 not terminated/unconfirmed,
// 5 numerical failure.

#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "physarum/dijkstra.hpp"
#include "physarum/engine.hpp"
#include "physarum/error.hpp"
#include "physarum/generators.hpp"
#include "physarum/harness.hpp"
#include "physarum/io.hpp"
#include "physarum/report.hpp"

namespace {

using namespace physarum;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNotTerminated = 4;
constexpr int kExitNumerical = 5;
constexpr const char* kStdoutFormat = "1";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads a JSON object whose keys mirror the long flag names. Nested objects
/// address subcommands, arrays supply repeated values.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return {}; }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json doc;
    try {
      input >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConversionError("config", e.what());
    }
    std::vector<CLI::ConfigItem> items;
    collect(doc, {}, items);
    return items;
  }

 private:
  static std::string scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  }

  static void collect(const nlohmann::json& obj, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    if (!obj.is_object()) throw CLI::ConversionError("config", "expected a JSON object");
    for (const auto& [key, value] : obj.items()) {
      if (value.is_object()) {
        auto nested = parents;
        nested.push_back(key);
        collect(value, nested, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }
};

struct Options {
  // Graph source.
  std::string graph_path;
  std::string tntp_path;
  std::string generator;
  std::string gen_kind;  // positional of `gen`
  std::size_t n = 0;
  std::size_t degree = 6;
  double beta = 0.15;
  std::int64_t w_min = 1;
  std::int64_t w_max = 10000;
  std::string weight_column = "length";
  std::optional<std::size_t> source;
  std::optional<std::size_t> sink;

  // Engine.
  SolverConfig config;
  std::uint64_t seed = 1;
  std::string out;

  // solve / tpoint.
  std::string criterion = "k=30";
  std::string trace_path;
  std::size_t repeats = 1;
  std::size_t window = kDefaultTPointWindow;

  // bench.
  std::vector<std::size_t> sizes;
  std::size_t count = 50;
  std::vector<std::string> criteria;
  unsigned jobs = 1;
  std::string format = "csv";
  std::string runs_out;
};

Graph generate(const Options& o, const std::string& kind) {
  if (o.n == 0) throw UsageError("--n is required for generated graphs");
  if (kind == "complete") return gen_complete(o.n, o.w_min, o.w_max, o.seed);
  if (kind == "sw") return gen_small_world(o.n, o.degree, o.beta, o.w_min, o.w_max, o.seed);
  throw UsageError("unknown generator '" + kind + "' (expected complete or sw)");
}

Graph apply_terminals(Graph g, const Options& o) {
  if (!o.source && !o.sink) return g;
  const std::size_t s = o.source.value_or(g.source() + 1);
  const std::size_t t = o.sink.value_or(g.sink() + 1);
  if (s == 0 || t == 0) throw InvalidTerminal("terminal ids are one-based");
  return g.with_terminals(static_cast<NodeId>(s - 1), static_cast<NodeId>(t - 1));
}

std::pair<Graph, std::string> load_graph(const Options& o) {
  const int sources = !o.graph_path.empty() + !o.tntp_path.empty() + !o.generator.empty();
  if (sources != 1) throw UsageError("give exactly one of --graph, --tntp, --gen");
  if (!o.graph_path.empty()) {
    return {apply_terminals(parse_edge_list(read_file(o.graph_path)), o), o.graph_path};
  }
  if (!o.tntp_path.empty()) {
    TntpOptions topt{.weight_column = o.weight_column, .source = o.source, .sink = o.sink};
    return {parse_tntp(read_file(o.tntp_path), topt).graph, o.tntp_path};
  }
  return {apply_terminals(generate(o, o.generator), o), o.generator + "-n" + std::to_string(o.n)};
}

TerminationCriterion criterion_from(const std::string& text) {
  try {
    return TerminationCriterion::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string join_path(const Path& p) {
  std::string out;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(p.nodes[i] + 1);
  }
  return out;
}

int cmd_gen(const Options& o) {
  const Graph g = apply_terminals(generate(o, o.gen_kind), o);
  const std::string text = format_edge_list(g);
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    std::cerr << "nodes: " << g.node_count() << "\nedges: " << g.edge_count() << "\n";
  } else {
    write_file_atomic(o.out, text);
    std::cout << "nodes: " << g.node_count() << "\nedges: " << g.edge_count() << "\n";
  }
  return kExitOk;
}

int cmd_solve(const Options& o) {
  const auto criterion = criterion_from(o.criterion);
  const auto [g, id] = load_graph(o);
  const RunResult result = run(g, o.config, criterion);
  if (!o.trace_path.empty()) emit_trace(result.trace, o.trace_path);

  std::cout << "format: " << kStdoutFormat << "\n"
            << "graph: " << id << "\n"
            << "nodes: " << g.node_count() << "\n"
            << "edges: " << g.edge_count() << "\n"
            << "criterion: " << criterion.describe() << "\n";
  if (result.final_dpath) {
    std::cout << "path: " << join_path(*result.final_dpath) << "\n"
              << "length: " << format_number(result.final_dpath->length) << "\n";
  } else {
    std::cout << "path: none\nlength: none\n";
  }
  std::cout << "dijkstra_length: " << format_number(dijkstra(g).length) << "\n"
            << "iterations: " << result.iterations << "\n"
            << "terminated_by: "
            << (result.terminated_by == TerminatedBy::criterion ? "criterion" : "budget") << "\n"
            << "time_s: " << std::chrono::duration<double>(result.wall_time).count() << "\n";
  return result.terminated_by == TerminatedBy::criterion ? kExitOk : kExitNotTerminated;
}

int cmd_bench(const Options& o) {
  SuiteOptions suite;
  suite.sizes = o.sizes;
  suite.graphs_per_size = o.count;
  suite.seed = o.seed;
  suite.config = o.config;
  suite.w_min = o.w_min;
  suite.w_max = o.w_max;
  suite.jobs = o.jobs;
  if (o.sizes.empty()) throw UsageError("--sizes is required");
  if (o.count < 1) throw UsageError("--count must be at least 1");
  for (std::size_t s : o.sizes) {
    if (s < 2) throw UsageError("graph sizes must be at least 2");
  }
  if (o.criteria.empty()) throw UsageError("--criteria is required");
  for (const auto& c : o.criteria) suite.criteria.push_back(criterion_from(c));
  const ReportFormat format = [&] {
    try {
      return parse_report_format(o.format);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  if (format == ReportFormat::trace_jsonl) throw UsageError("bench writes csv or json");

  const SuccessTable table = run_success_suite(suite);
  if (!o.out.empty()) emit_report(table, format, o.out);
  if (!o.runs_out.empty()) write_file_atomic(o.runs_out, runs_csv(table));
  std::cout << success_table_csv(table);
  return kExitOk;
}

int cmd_tpoint(const Options& o) {
  const auto criterion = criterion_from(o.criterion);
  if (o.repeats < 1) throw UsageError("--repeats must be at least 1");
  if (o.window < 1) throw UsageError("--window must be at least 1");
  const auto [g, id] = load_graph(o);
  TPointReport report = run_tpoint_eval(g, o.config, criterion, o.repeats, o.window);
  report.graph_id = id;
  if (!o.out.empty()) emit_report(report, ReportFormat::csv, o.out);
  if (!o.trace_path.empty()) emit_report(report, ReportFormat::trace_jsonl, o.trace_path);

  const auto& first = report.runs.front();
  std::cout << "format: " << kStdoutFormat << "\n"
            << "graph: " << id << "\n"
            << "criterion: " << report.criterion << "\n"
            << "dijkstra_length: " << format_number(report.oracle_length) << "\n"
            << "tpoint_iteration: "
            << (first.tpoint_iteration ? std::to_string(*first.tpoint_iteration) : "none") << "\n"
            << "confirmed: " << (report.confirmed() ? "true" : "false") << "\n"
            << "window: " << report.min_window << "\n"
            << "iterations: " << first.iterations_executed << "\n"
            << "time_to_tpoint_s: " << report.mean_time_to_tpoint_s() << "\n";
  return report.confirmed() ? kExitOk : kExitNotTerminated;
}

void add_graph_source(CLI::App* cmd, Options& o) {
  cmd->add_option("--graph", o.graph_path, "Edge-list file");
  cmd->add_option("--tntp", o.tntp_path, "TNTP network file");
  cmd->add_option("--gen", o.generator, "Generate a graph: complete or sw");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Physarum solver: shortest paths, dominant-path termination and T-Point evaluation"};
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file mirroring the command-line flags");

  app.add_option("--seed", o.seed, "Master seed")->capture_default_str();
  app.add_option("--in0", o.config.in0, "Inflow at the source")->capture_default_str();
  app.add_option("--dt", o.config.delta_t, "Adaptation time step")->capture_default_str();
  app.add_option("--init-d", o.config.initial_conductivity, "Initial conductivity")->capture_default_str();
  app.add_option("--budget", o.config.max_iterations, "Iteration budget")->capture_default_str();
  app.add_option("--tol", o.config.linear_tolerance, "Pressure-solve residual bound")->capture_default_str();
  app.add_option("--source", o.source, "Source node (one-based)");
  app.add_option("--sink", o.sink, "Sink node (one-based)");
  app.add_option("--weight-col", o.weight_column, "TNTP column used as edge length")->capture_default_str();
  app.add_option("-o,--out", o.out, "Output file");
  app.add_option("--n", o.n, "Generated graph size");
  app.add_option("--degree", o.degree, "Small-world mean degree")->capture_default_str();
  app.add_option("--beta", o.beta, "Small-world rewiring probability")->capture_default_str();
  app.add_option("--wmin", o.w_min, "Smallest generated weight")->capture_default_str();
  app.add_option("--wmax", o.w_max, "Largest generated weight")->capture_default_str();

  auto* gen = app.add_subcommand("gen", "Generate a graph in edge-list format");
  gen->add_option("kind", o.gen_kind, "complete or sw")->required();

  auto* solve = app.add_subcommand("solve", "Run the solver until the criterion fires");
  add_graph_source(solve, o);
  solve->add_option("--criterion", o.criterion, "eps=<real> or k=<int>")->capture_default_str();
  solve->add_option("--trace", o.trace_path, "Write the per-iteration trace as JSON lines");

  auto* bench = app.add_subcommand("bench", "Success-rate suite over random complete graphs");
  bench->add_option("--sizes", o.sizes, "Graph sizes")->delimiter(',');
  bench->add_option("--count", o.count, "Graphs per size")->capture_default_str();
  bench->add_option("--criteria", o.criteria, "Criteria, e.g. eps=1e-2,k=30")->delimiter(',');
  bench->add_option("--jobs", o.jobs, "Worker threads")->capture_default_str();
  bench->add_option("--format", o.format, "csv or json")->capture_default_str();
  bench->add_option("--runs", o.runs_out, "Write per-run records as CSV");

  auto* tpoint = app.add_subcommand("tpoint", "Criterion-independent T-Point evaluation");
  add_graph_source(tpoint, o);
  tpoint->add_option("--criterion", o.criterion, "Criterion kept in the loop")->capture_default_str();
  tpoint->add_option("--repeats", o.repeats, "Repeated runs")->capture_default_str();
  tpoint->add_option("--window", o.window, "Confirmation window in iterations")->capture_default_str();
  tpoint->add_option("--trace", o.trace_path, "Write the first repeat's trace as JSON lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    o.config.validate();
    if (*gen) return cmd_gen(o);
    if (*solve) return cmd_solve(o);
    if (*bench) return cmd_bench(o);
    if (*tpoint) return cmd_tpoint(o);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const SolveFailed& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const NonFiniteConductivity& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    // Parse, validation and usage errors.
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
