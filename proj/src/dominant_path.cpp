#include "physarum/dominant_path.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "physarum/error.hpp"
#include "physarum/io.hpp"

namespace physarum {

namespace {

struct Walk {
  std::vector<NodeId> nodes;
  const char* failure = nullptr;
};

Walk walk_max_flux(const Graph& g, std::span<const double> flux) {
  Walk walk;
  if (flux.size() != g.edge_count()) {
    walk.failure = "flux vector does not match the edge count";
    return walk;
  }
  std::vector<bool> removed(g.node_count(), false);
  NodeId current = g.source();
  walk.nodes.push_back(current);
  while (current != g.sink()) {
    if (walk.nodes.size() > g.node_count() - 1) {
      walk.failure = "walk exceeded n-1 steps";
      return walk;
    }
    bool found = false;
    NodeId next = 0;
    double best = 0.0;
    // Adjacency is sorted by neighbor id, so the strict comparison keeps the
    // smallest id among equal fluxes.
    for (const Incidence& inc : g.neighbors(current)) {
      if (removed[inc.neighbor]) continue;
      const double f = std::abs(flux[inc.edge]);
      if (!found || f > best) {
        found = true;
        best = f;
        next = inc.neighbor;
      }
    }
    if (!found) {
      walk.failure = "walk reached a node with no remaining edges";
      return walk;
    }
    removed[current] = true;
    walk.nodes.push_back(next);
    current = next;
  }
  return walk;
}

}  // namespace

Path extract_dpath(const Graph& g, std::span<const double> flux) {
  Walk walk = walk_max_flux(g, flux);
  if (walk.failure) throw DPathExtractionFailed(walk.failure);
  return make_path(g, std::move(walk.nodes));
}

std::optional<Path> try_extract_dpath(const Graph& g, std::span<const double> flux) {
  Walk walk = walk_max_flux(g, flux);
  if (walk.failure) return std::nullopt;
  return make_path(g, std::move(walk.nodes));
}

bool criterion_epsilon_delta_d(const TraceEntry& entry, double epsilon) {
  return entry.sum_abs_delta_d <= epsilon;
}

std::size_t dpath_stable_count(std::span<const TraceEntry> trace) {
  std::size_t count = 0;
  for (std::size_t i = trace.size(); i-- > 1;) {
    const auto& cur = trace[i].dpath;
    const auto& prev = trace[i - 1].dpath;
    if (!cur || !prev || cur->nodes != prev->nodes) break;
    ++count;
  }
  return count;
}

bool criterion_dpath_stable(std::span<const TraceEntry> trace, std::size_t k) {
  return dpath_stable_count(trace) >= k;
}

TerminationCriterion TerminationCriterion::epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be a positive real");
  }
  return {Kind::epsilon_delta_d, epsilon, 0};
}

TerminationCriterion TerminationCriterion::dpath_stable(std::size_t k) {
  if (k < 1) throw std::invalid_argument("K must be at least 1");
  return {Kind::dpath_stable, 0.0, k};
}

TerminationCriterion TerminationCriterion::parse(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw std::invalid_argument("criterion must look like eps=<real> or k=<int>");
  }
  const auto key = text.substr(0, eq);
  const auto value = text.substr(eq + 1);
  const char* first = value.data();
  const char* last = value.data() + value.size();
  if (key == "eps") {
    double eps = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, eps);
    if (ec != std::errc{} || ptr != last) throw std::invalid_argument("bad epsilon in '" + std::string(text) + "'");
    return epsilon(eps);
  }
  if (key == "k" || key == "K") {
    long long k = 0;
    const auto [ptr, ec] = std::from_chars(first, last, k);
    if (ec != std::errc{} || ptr != last || k < 1) {
      throw std::invalid_argument("K must be a positive integer in '" + std::string(text) + "'");
    }
    return dpath_stable(static_cast<std::size_t>(k));
  }
  throw std::invalid_argument("unknown criterion '" + std::string(text) + "'");
}

bool TerminationCriterion::observe(const TraceEntry& entry) {
  if (kind_ == Kind::epsilon_delta_d) return criterion_epsilon_delta_d(entry, epsilon_);
  if (entry.dpath && previous_ && entry.dpath->nodes == previous_->nodes) {
    ++count_;
  } else {
    count_ = 0;
  }
  previous_ = entry.dpath;
  return count_ >= k_;
}

void TerminationCriterion::reset() noexcept {
  count_ = 0;
  previous_.reset();
}

std::string TerminationCriterion::describe() const {
  if (kind_ == Kind::epsilon_delta_d) return "eps=" + format_number(epsilon_);
  return "k=" + std::to_string(k_);
}

TPointResult detect_tpoint(std::span<const TraceEntry> trace, double optimal_length,
                           std::size_t min_window) {
  TPointResult result;
  std::size_t start = trace.size();
  while (start > 0 && trace[start - 1].dpath && trace[start - 1].dpath->length == optimal_length) {
    --start;
  }
  if (start == trace.size()) return result;
  result.tpoint_iteration = trace[start].iteration;
  result.confirmed = trace.back().iteration - trace[start].iteration >= min_window;
  return result;
}

}  // namespace physarum
