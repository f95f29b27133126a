#include "physarum/engine.hpp"

#include <cmath>
#include <stdexcept>

namespace physarum {

void SolverConfig::validate() const {
  if (!(in0 > 0.0) || !std::isfinite(in0)) throw std::invalid_argument("in0 must be positive");
  if (!(delta_t > 0.0) || !std::isfinite(delta_t)) {
    throw std::invalid_argument("delta_t must be positive");
  }
  if (!(initial_conductivity > 0.0) || !std::isfinite(initial_conductivity)) {
    throw std::invalid_argument("initial conductivity must be positive");
  }
  if (!(linear_tolerance > 0.0)) throw std::invalid_argument("linear tolerance must be positive");
  if (max_iterations < 1) throw std::invalid_argument("iteration budget must be at least 1");
}

SolverState init_state(const Graph& g, const SolverConfig& config) {
  SolverState s;
  s.conductivity.assign(g.edge_count(), config.initial_conductivity);
  s.flux.assign(g.edge_count(), 0.0);
  s.pressure.assign(g.node_count(), 0.0);
  return s;
}

std::vector<double> compute_flux(const Graph& g, std::span<const double> conductivity,
                                 std::span<const double> pressure) {
  std::vector<double> q(g.edge_count());
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    q[id] = conductivity[id] / e.weight * (pressure[e.u] - pressure[e.v]);
  }
  return q;
}

std::vector<double> update_conductivity(std::span<const double> conductivity,
                                        std::span<const double> flux, double delta_t) {
  std::vector<double> next(conductivity.size());
  for (std::size_t i = 0; i < conductivity.size(); ++i) {
    next[i] = (conductivity[i] + delta_t * std::abs(flux[i])) / (1.0 + delta_t);
  }
  return next;
}

std::vector<double> net_inflow(const Graph& g, std::span<const double> flux) {
  std::vector<double> in(g.node_count(), 0.0);
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    in[e.v] += flux[id];
    in[e.u] -= flux[id];
  }
  return in;
}

namespace {

TraceEntry advance(const Graph& g, const SolverConfig& config, PressureSolver& solver,
                   SolverState& state) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  state.pressure = solver.solve(state.conductivity, config.in0, config.linear_tolerance);
  state.flux = compute_flux(g, state.conductivity, state.pressure);
  auto next = update_conductivity(state.conductivity, state.flux, config.delta_t);

  TraceEntry entry;
  for (std::size_t i = 0; i < next.size(); ++i) {
    entry.sum_abs_delta_d += std::abs(next[i] - state.conductivity[i]);
  }
  state.conductivity = std::move(next);
  ++state.iteration;
  entry.iteration = state.iteration;
  entry.linear_residual = solver.last_residual();
  entry.dpath = try_extract_dpath(g, state.flux);
  entry.elapsed = Clock::now() - start;
  return entry;
}

}  // namespace

std::pair<SolverState, TraceEntry> step(const Graph& g, const SolverState& state,
                                        const SolverConfig& config) {
  PressureSolver solver(g, config.solve_method);
  SolverState next = state;
  TraceEntry entry = advance(g, config, solver, next);
  return {std::move(next), std::move(entry)};
}

Engine::Engine(const Graph& g, SolverConfig config)
    : graph_(&g), config_(config), solver_(g, config.solve_method) {
  config_.validate();
}

TraceEntry Engine::step(SolverState& state) { return advance(*graph_, config_, solver_, state); }

RunResult Engine::run(TerminationCriterion criterion, const StepObserver& observer) {
  using Clock = std::chrono::steady_clock;
  criterion.reset();
  RunResult result;
  result.final_state = initial_state();
  const auto start = Clock::now();
  while (result.iterations < config_.max_iterations) {
    TraceEntry entry = step(result.final_state);
    entry.elapsed = Clock::now() - start;
    result.iterations = entry.iteration;
    const bool fired = criterion.observe(entry);
    result.trace.push_back(std::move(entry));
    const bool keep_going = !observer || observer(result.final_state, result.trace.back());
    if (fired) {
      result.terminated_by = TerminatedBy::criterion;
      break;
    }
    if (!keep_going) {
      result.terminated_by = TerminatedBy::observer;
      break;
    }
  }
  result.wall_time = Clock::now() - start;
  if (!result.trace.empty()) result.final_dpath = result.trace.back().dpath;
  return result;
}

RunResult run(const Graph& g, const SolverConfig& config, const TerminationCriterion& criterion) {
  return Engine(g, config).run(criterion);
}

}  // namespace physarum
