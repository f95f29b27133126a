#pragma once

#include "physarum/graph.hpp"

namespace physarum {

/// Shortest source-to-sink path. Among equal-length paths the one found first
/// in (distance, node id) heap order is returned; only the length is unique.
Path dijkstra(const Graph& g);

}  // namespace physarum
