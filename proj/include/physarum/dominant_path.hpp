#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "physarum/graph.hpp"
#include "physarum/trace.hpp"

namespace physarum {

/// Greedy maximum-flux walk from the source.
///
/// Starting at the source, repeatedly follow the incident edge with the
/// largest |flux| into a node not yet on the walk (ties go to the smaller
/// neighbor id), removing each node left behind together with its edges, until
/// the sink is reached. `flux` is indexed by EdgeId.
///
/// Throws DPathExtractionFailed when the walk gets stuck.
Path extract_dpath(const Graph& g, std::span<const double> flux);

/// Non-throwing form of extract_dpath.
std::optional<Path> try_extract_dpath(const Graph& g, std::span<const double> flux);

/// Fires once the summed per-iteration conductivity change is at most epsilon.
bool criterion_epsilon_delta_d(const TraceEntry& entry, double epsilon);

/// Number of consecutive trailing iterations whose D-Path repeats the one
/// before it (COUNT). A failed extraction contributes 0.
std::size_t dpath_stable_count(std::span<const TraceEntry> trace);

/// Fires once the D-Path node sequence has repeated for K comparisons.
bool criterion_dpath_stable(std::span<const TraceEntry> trace, std::size_t k);

/// Stopping rule consulted once per iteration. Holds the stability counter, so
/// each run needs its own copy.
class TerminationCriterion {
 public:
  enum class Kind { epsilon_delta_d, dpath_stable };

  /// epsilon > 0, else std::invalid_argument.
  static TerminationCriterion epsilon(double epsilon);
  /// k >= 1, else std::invalid_argument.
  static TerminationCriterion dpath_stable(std::size_t k);
  /// "eps=<real>" or "k=<int>"; std::invalid_argument on anything else.
  static TerminationCriterion parse(std::string_view text);

  /// Feeds the newest trace entry; true when the run should stop.
  bool observe(const TraceEntry& entry);
  void reset() noexcept;

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] double epsilon_value() const noexcept { return epsilon_; }
  [[nodiscard]] std::size_t k_value() const noexcept { return k_; }
  [[nodiscard]] std::size_t count() const noexcept { return count_; }
  /// Canonical "eps=..." / "k=..." spelling, parseable by parse().
  [[nodiscard]] std::string describe() const;

 private:
  TerminationCriterion(Kind kind, double epsilon, std::size_t k)
      : kind_(kind), epsilon_(epsilon), k_(k) {}

  Kind kind_;
  double epsilon_ = 0.0;
  std::size_t k_ = 0;
  std::size_t count_ = 0;
  std::optional<Path> previous_;
};

struct TPointResult {
  std::optional<std::size_t> tpoint_iteration;
  /// The trace runs at least min_window iterations past the T-Point.
  bool confirmed = false;
};

inline constexpr std::size_t kDefaultTPointWindow = 50;

/// Earliest iteration from which the D-Path length equals `optimal_length`
/// at every later recorded iteration. Lengths compare exactly.
TPointResult detect_tpoint(std::span<const TraceEntry> trace, double optimal_length,
                           std::size_t min_window = kDefaultTPointWindow);

}  // namespace physarum
