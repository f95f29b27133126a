#pragma once

#include <cstddef>
#include <cstdint>

#include "physarum/graph.hpp"

namespace physarum {

/// Complete graph on n nodes with uniform integer weights in [w_min, w_max].
/// Edges are drawn in (u, v) lexicographic order from one SplitMix64 stream
/// seeded with `seed`. Source is node 1 and sink node 2 (one-based).
Graph gen_complete(std::size_t n, std::int64_t w_min, std::int64_t w_max, std::uint64_t seed);

/// Watts-Strogatz small-world graph.
///
/// Starts from a ring lattice where every node links to mean_degree/2
/// successors. Each node in turn then rewires each of its successor links with
/// probability beta to a uniformly chosen node that is neither itself nor
/// already adjacent to it. Disconnected draws are regenerated with seed + 1,
/// seed + 2, ... and GenerationFailed is thrown after `max_attempts`.
Graph gen_small_world(std::size_t n, std::size_t mean_degree, double beta, std::int64_t w_min,
                      std::int64_t w_max, std::uint64_t seed, std::size_t max_attempts = 100);

}  // namespace physarum
