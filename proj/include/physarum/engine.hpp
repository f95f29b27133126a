#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "physarum/dominant_path.hpp"
#include "physarum/graph.hpp"
#include "physarum/laplacian.hpp"
#include "physarum/trace.hpp"

namespace physarum {

/// Parameters of the adaptation dynamics dD/dt = |Q| - D, discretized as
/// D' = (D + dt |Q|) / (1 + dt). With dt = 1 this is D' = (|Q| + D) / 2.
struct SolverConfig {
  double in0 = 1.0;
  double delta_t = 1.0;
  double initial_conductivity = 0.5;
  double linear_tolerance = 1e-10;
  std::size_t max_iterations = 10000;
  SolveMethod solve_method = SolveMethod::automatic;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

/// Per-edge vectors are indexed by EdgeId. flux[e] is oriented from
/// edge(e).u to edge(e).v (u < v); the reverse flux is its negation.
struct SolverState {
  std::vector<double> conductivity;
  std::vector<double> flux;
  std::vector<double> pressure;
  std::size_t iteration = 0;
};

SolverState init_state(const Graph& g, const SolverConfig& config);

/// Q_uv = (D_uv / L_uv) (p_u - p_v).
std::vector<double> compute_flux(const Graph& g, std::span<const double> conductivity,
                                 std::span<const double> pressure);

/// D' = (D + dt |Q|) / (1 + dt), elementwise.
std::vector<double> update_conductivity(std::span<const double> conductivity,
                                        std::span<const double> flux, double delta_t);

/// Net signed flux entering each node: sum over neighbors i of Q_{i->j}.
std::vector<double> net_inflow(const Graph& g, std::span<const double> flux);

/// Stateless single iteration: pressures for the current conductivities,
/// fluxes, adapted conductivities, then the D-Path of the new fluxes.
/// Propagates SolveFailed.
std::pair<SolverState, TraceEntry> step(const Graph& g, const SolverState& state,
                                        const SolverConfig& config);

enum class TerminatedBy { criterion, budget, observer };

struct RunResult {
  std::vector<TraceEntry> trace;
  SolverState final_state;
  std::optional<Path> final_dpath;
  std::size_t iterations = 0;
  TerminatedBy terminated_by = TerminatedBy::budget;
  std::chrono::nanoseconds wall_time{0};
};

/// Called after every iteration with the post-step state and its trace entry.
/// Returning false stops the run early without marking it as terminated by the
/// criterion.
using StepObserver = std::function<bool(const SolverState&, const TraceEntry&)>;

/// Iterative solver for one graph. Owns the pressure-solve workspace, so each
/// instance belongs to one thread at a time.
class Engine {
 public:
  Engine(const Graph& g, SolverConfig config);

  [[nodiscard]] const Graph& graph() const noexcept { return *graph_; }
  [[nodiscard]] const SolverConfig& config() const noexcept { return config_; }

  [[nodiscard]] SolverState initial_state() const { return init_state(*graph_, config_); }

  /// Advances `state` by one iteration in place. `elapsed` in the entry is the
  /// duration of this step alone.
  TraceEntry step(SolverState& state);

  /// Steps until `criterion` fires, the observer declines, or max_iterations.
  RunResult run(TerminationCriterion criterion, const StepObserver& observer = {});

 private:
  const Graph* graph_;
  SolverConfig config_;
  PressureSolver solver_;
};

/// Engine(g, config).run(criterion).
RunResult run(const Graph& g, const SolverConfig& config, const TerminationCriterion& criterion);

}  // namespace physarum
