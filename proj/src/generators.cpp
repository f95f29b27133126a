#include "physarum/generators.hpp"

#include <string>
#include <utility>
#include <vector>

#include "physarum/error.hpp"
#include "physarum/random.hpp"

namespace physarum {

namespace {

void check_weights(std::int64_t w_min, std::int64_t w_max) {
  if (w_min <= 0 || w_min > w_max) {
    throw GenerationFailed("weight range must satisfy 0 < w_min <= w_max, got [" +
                           std::to_string(w_min) + ", " + std::to_string(w_max) + "]");
  }
}

// Lattice plus rewiring, unweighted. Returns successor lists.
std::vector<std::vector<NodeId>> small_world_targets(std::size_t n, std::size_t half,
                                                     double beta, SplitMix64& rng) {
  std::vector<std::vector<NodeId>> targets(n);
  std::vector<std::vector<bool>> adjacent(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t k = 1; k <= half; ++k) {
      const auto t = static_cast<NodeId>((s + k) % n);
      targets[s].push_back(t);
      adjacent[s][t] = adjacent[t][s] = true;
    }
  }

  std::vector<NodeId> candidates;
  candidates.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> rewired;
    for (std::size_t k = 0; k < half; ++k) {
      if (rng.uniform_real() < beta) rewired.push_back(k);
    }
    if (rewired.empty()) continue;

    // Old endpoints of rewired links become free before drawing replacements.
    for (std::size_t k : rewired) {
      const NodeId t = targets[s][k];
      adjacent[s][t] = adjacent[t][s] = false;
    }
    candidates.clear();
    for (std::size_t t = 0; t < n; ++t) {
      if (t != s && !adjacent[s][t]) candidates.push_back(static_cast<NodeId>(t));
    }
    // Partial Fisher-Yates: the first |rewired| slots are a uniform sample.
    for (std::size_t i = 0; i < rewired.size(); ++i) {
      const NodeId fresh = [&] {
        if (i >= candidates.size()) return targets[s][rewired[i]];
        const auto j = static_cast<std::size_t>(
            rng.uniform_int(static_cast<std::int64_t>(i),
                            static_cast<std::int64_t>(candidates.size() - 1)));
        std::swap(candidates[i], candidates[j]);
        return candidates[i];
      }();
      targets[s][rewired[i]] = fresh;
      adjacent[s][fresh] = adjacent[fresh][s] = true;
    }
  }
  return targets;
}

}  // namespace

Graph gen_complete(std::size_t n, std::int64_t w_min, std::int64_t w_max, std::uint64_t seed) {
  if (n < 2) throw GenerationFailed("complete graph needs n >= 2, got " + std::to_string(n));
  check_weights(w_min, w_max);
  SplitMix64 rng(seed);
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v),
                       static_cast<double>(rng.uniform_int(w_min, w_max))});
    }
  }
  return Graph::build(n, std::move(edges), 0, 1);
}

Graph gen_small_world(std::size_t n, std::size_t mean_degree, double beta, std::int64_t w_min,
                      std::int64_t w_max, std::uint64_t seed, std::size_t max_attempts) {
  if (n < 3 || mean_degree < 2 || mean_degree % 2 != 0 || mean_degree >= n) {
    throw GenerationFailed("small-world graph needs an even mean degree in [2, n), got n=" +
                           std::to_string(n) + " degree=" + std::to_string(mean_degree));
  }
  if (!(beta >= 0.0 && beta <= 1.0)) throw GenerationFailed("beta must lie in [0, 1]");
  check_weights(w_min, w_max);

  const std::size_t half = mean_degree / 2;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    SplitMix64 rng(seed + attempt);
    const auto targets = small_world_targets(n, half, beta, rng);
    std::vector<Edge> edges;
    edges.reserve(n * half);
    for (std::size_t s = 0; s < n; ++s) {
      for (NodeId t : targets[s]) {
        edges.push_back({static_cast<NodeId>(s), t, static_cast<double>(rng.uniform_int(w_min, w_max))});
      }
    }
    if (!is_connected(n, edges)) continue;
    return Graph::build(n, std::move(edges), 0, 1);
  }
  throw GenerationFailed("no connected small-world graph after " + std::to_string(max_attempts) +
                         " attempts");
}

}  // namespace physarum
