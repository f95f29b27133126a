#include <algorithm>
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "physarum/dijkstra.hpp"
#include "physarum/engine.hpp"
#include "physarum/error.hpp"
#include "physarum/generators.hpp"

namespace physarum {
namespace {

using testing::triangle;

TEST(SolverConfig, Validation) {
  EXPECT_NO_THROW(SolverConfig{}.validate());
  SolverConfig c;
  c.in0 = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.delta_t = -1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.initial_conductivity = std::nan("");
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.max_iterations = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  EXPECT_THROW(Engine(triangle(), c), std::invalid_argument);
}

TEST(InitState, UniformConductivity) {
  const SolverState s = init_state(triangle(), SolverConfig{});
  EXPECT_EQ(s.conductivity, std::vector<double>(3, 0.5));
  EXPECT_EQ(s.iteration, 0u);
}

TEST(Step, TriangleFirstIteration) {
  const Graph g = triangle();
  const SolverConfig cfg;
  const auto [next, entry] = step(g, init_state(g, cfg), cfg);
  EXPECT_EQ(next.iteration, 1u);
  EXPECT_EQ(entry.iteration, 1u);
  EXPECT_EQ(next.pressure[0], 0.0);
  EXPECT_NEAR(next.pressure[1], 140.0 / 17.0, 1e-12);
  EXPECT_NEAR(next.pressure[2], 60.0 / 17.0, 1e-12);
  EXPECT_NEAR(std::abs(next.flux[0]), 7.0 / 17.0, 1e-12);
  EXPECT_NEAR(std::abs(next.flux[1]), 10.0 / 17.0, 1e-12);
  EXPECT_NEAR(std::abs(next.flux[2]), 10.0 / 17.0, 1e-12);
  EXPECT_NEAR(next.conductivity[0], 31.0 / 68.0, 1e-12);
  EXPECT_NEAR(next.conductivity[1], 37.0 / 68.0, 1e-12);
  EXPECT_NEAR(next.conductivity[2], 37.0 / 68.0, 1e-12);
  EXPECT_NEAR(entry.sum_abs_delta_d, 9.0 / 68.0, 1e-12);
  ASSERT_TRUE(entry.dpath);
  EXPECT_EQ(testing::one_based(entry.dpath->nodes), (std::vector<NodeId>{1, 3, 2}));
  EXPECT_EQ(entry.dpath_length(), 7.0);
  EXPECT_LE(entry.linear_residual, 1e-10);
}

TEST(Step, IsStateless) {
  const Graph g = gen_complete(6, 1, 100, 9);
  const SolverConfig cfg;
  SolverState s = init_state(g, cfg);
  for (int i = 0; i < 5; ++i) s = step(g, s, cfg).first;
  const SolverState copy = s;
  const auto a = step(g, s, cfg);
  const auto b = step(g, s, cfg);
  EXPECT_EQ(s.conductivity, copy.conductivity);
  EXPECT_EQ(a.first.conductivity, b.first.conductivity);
  EXPECT_EQ(a.first.flux, b.first.flux);
  EXPECT_EQ(a.second.sum_abs_delta_d, b.second.sum_abs_delta_d);

  Engine engine(g, cfg);
  SolverState in_place = s;
  engine.step(in_place);
  EXPECT_EQ(in_place.conductivity, a.first.conductivity);
  EXPECT_EQ(in_place.iteration, a.first.iteration);
}

TEST(UpdateConductivity, GeneralTimeStep) {
  const std::vector<double> d{0.5, 2.0};
  const std::vector<double> q{-1.0, 0.0};
  EXPECT_EQ(update_conductivity(d, q, 1.0), (std::vector<double>{0.75, 1.0}));
  const auto half = update_conductivity(d, q, 0.5);
  EXPECT_NEAR(half[0], (0.5 + 0.5) / 1.5, 1e-15);
  EXPECT_NEAR(half[1], 2.0 / 1.5, 1e-15);
}

TEST(Step, InvariantsOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    SplitMix64 rng(seed);
    const auto n = static_cast<std::size_t>(rng.uniform_int(2, 30));
    const Graph g = testing::random_connected_graph(n, rng.uniform_real(), 10000, seed);
    SolverConfig cfg;
    cfg.in0 = seed % 2 == 0 ? 1.0 : 3.5;
    SolverState s = init_state(g, cfg);
    const auto targets = inflow_targets(g, cfg.in0);
    for (int it = 0; it < 40; ++it) {
      const auto [next, entry] = step(g, s, cfg);
      const auto inflow = net_inflow(g, next.flux);
      for (NodeId v = 0; v < n; ++v) {
        ASSERT_NEAR(inflow[v], targets[v], 1e-9 * cfg.in0) << "seed " << seed << " node " << v;
      }
      ASSERT_LE(entry.linear_residual, 1e-10 * cfg.in0);
      double delta = 0;
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const double q = std::abs(next.flux[e]);
        const double d = s.conductivity[e];
        ASSERT_GT(next.conductivity[e], 0.0);
        ASSERT_LE(q, cfg.in0 * (1 + 1e-9));
        ASSERT_GE(next.conductivity[e], std::min(d, q) - 1e-15);
        ASSERT_LE(next.conductivity[e], std::max(d, q) + 1e-15);
        delta += std::abs(next.conductivity[e] - d);
      }
      ASSERT_NEAR(entry.sum_abs_delta_d, delta, 1e-12);
      s = next;
    }
  }
}

TEST(Run, DeterministicTraces) {
  const Graph g = gen_complete(10, 1, 10000, 4);
  const SolverConfig cfg;
  const RunResult a = run(g, cfg, TerminationCriterion::epsilon(1e-3));
  const RunResult b = run(g, cfg, TerminationCriterion::epsilon(1e-3));
  ASSERT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.final_state.conductivity, b.final_state.conductivity);
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    EXPECT_EQ(a.trace[i].sum_abs_delta_d, b.trace[i].sum_abs_delta_d);
    EXPECT_EQ(a.trace[i].dpath_length(), b.trace[i].dpath_length());
  }
}

TEST(Run, BudgetAndObserverStops) {
  const Graph g = gen_complete(10, 1, 10000, 4);
  SolverConfig cfg;
  cfg.max_iterations = 7;
  const RunResult budget = run(g, cfg, TerminationCriterion::epsilon(1e-12));
  EXPECT_EQ(budget.terminated_by, TerminatedBy::budget);
  EXPECT_EQ(budget.iterations, 7u);
  EXPECT_EQ(budget.trace.size(), 7u);

  cfg.max_iterations = 100;
  Engine engine(g, cfg);
  const RunResult stopped = engine.run(TerminationCriterion::epsilon(1e-12),
                                       [](const SolverState& s, const TraceEntry&) {
                                         return s.iteration < 3;
                                       });
  EXPECT_EQ(stopped.terminated_by, TerminatedBy::observer);
  EXPECT_EQ(stopped.iterations, 3u);
  for (std::size_t i = 1; i < stopped.trace.size(); ++i) {
    EXPECT_GE(stopped.trace[i].elapsed, stopped.trace[i - 1].elapsed);
  }
}

TEST(Run, CriterionStopRecordsFinalPath) {
  const RunResult r = run(triangle(), SolverConfig{}, TerminationCriterion::dpath_stable(10));
  EXPECT_EQ(r.terminated_by, TerminatedBy::criterion);
  EXPECT_EQ(r.iterations, 11u);
  ASSERT_TRUE(r.final_dpath);
  EXPECT_EQ(r.final_dpath->length, 7.0);
}

TEST(Run, ConvergesToShortestPathOnFiveNodeGraphs) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = gen_complete(5, 1, 10000, seed);
    const RunResult r = run(g, SolverConfig{}, TerminationCriterion::epsilon(1e-6));
    ASSERT_EQ(r.terminated_by, TerminatedBy::criterion) << "seed " << seed;
    ASSERT_TRUE(r.final_dpath);
    EXPECT_EQ(r.final_dpath->length, testing::brute_force_shortest(g)) << "seed " << seed;
    // Conductivity concentrates on the shortest path.
    for (std::size_t i = 0; i + 1 < r.final_dpath->nodes.size(); ++i) {
      const EdgeId e = *g.find_edge(r.final_dpath->nodes[i], r.final_dpath->nodes[i + 1]);
      EXPECT_NEAR(r.final_state.conductivity[e], 1.0, 1e-3);
    }
  }
}

}  // namespace
}  // namespace physarum
