#pragma once

#include <chrono>
#include <cstddef>
#include <limits>
#include <optional>

#include "physarum/graph.hpp"

namespace physarum {

/// What one solver iteration left behind.
struct TraceEntry {
  /// 1 for the first step.
  std::size_t iteration = 0;
  /// D-Path of the fluxes computed in this step; empty when extraction failed.
  std::optional<Path> dpath;
  /// Sum over edges of |D_new - D_old|.
  double sum_abs_delta_d = 0.0;
  /// Poisson-equation residual of the pressure solve in this step.
  double linear_residual = 0.0;
  /// Wall time since the start of the run (informational).
  std::chrono::nanoseconds elapsed{0};

  [[nodiscard]] double dpath_length() const noexcept {
    return dpath ? dpath->length : std::numeric_limits<double>::quiet_NaN();
  }
};

}  // namespace physarum
