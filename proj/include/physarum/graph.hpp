#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace physarum {

/// Zero-based node index. Text formats and printed paths are one-based.
using NodeId = std::uint32_t;
using EdgeId = std::size_t;

/// Undirected edge stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  NodeId neighbor = 0;
  EdgeId edge = 0;
};

/// Immutable, validated, connected simple graph with a source and a sink.
///
/// Edges are kept sorted by (u, v) and each adjacency list by neighbor id, so
/// two graphs built from the same edge set are identical regardless of input
/// order. Safe to share between threads once built.
class Graph {
 public:
  /// Throws InvalidEdge, DuplicateEdge, NonPositiveWeight, InvalidTerminal or
  /// DisconnectedGraph.
  static Graph build(std::size_t node_count, std::vector<Edge> edges, NodeId source,
                     NodeId sink);

  [[nodiscard]] std::size_t node_count() const noexcept { return node_count_; }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
  [[nodiscard]] NodeId source() const noexcept { return source_; }
  [[nodiscard]] NodeId sink() const noexcept { return sink_; }

  [[nodiscard]] std::span<const Edge> edges() const noexcept { return edges_; }
  [[nodiscard]] const Edge& edge(EdgeId e) const { return edges_.at(e); }

  [[nodiscard]] std::span<const Incidence> neighbors(NodeId n) const {
    return {incidences_.data() + offsets_.at(n), incidences_.data() + offsets_.at(n + 1)};
  }
  [[nodiscard]] std::size_t degree(NodeId n) const { return offsets_.at(n + 1) - offsets_.at(n); }

  [[nodiscard]] std::optional<EdgeId> find_edge(NodeId a, NodeId b) const;

  /// Same edges and weights, different terminals. Revalidates the terminals.
  [[nodiscard]] Graph with_terminals(NodeId source, NodeId sink) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.node_count_ == b.node_count_ && a.source_ == b.source_ && a.sink_ == b.sink_ &&
           a.edges_ == b.edges_;
  }

 private:
  Graph() = default;

  std::size_t node_count_ = 0;
  NodeId source_ = 0;
  NodeId sink_ = 0;
  std::vector<Edge> edges_;
  // CSR adjacency.
  std::vector<std::size_t> offsets_;
  std::vector<Incidence> incidences_;
};

/// Simple path with its exact length.
struct Path {
  std::vector<NodeId> nodes;
  double length = 0.0;

  friend bool operator==(const Path&, const Path&) = default;
};

/// Validates that `nodes` is a simple path in `g` and sums its edge weights.
/// Throws InvalidEdge otherwise.
Path make_path(const Graph& g, std::vector<NodeId> nodes);

/// Sum of edge weights along `nodes`, in traversal order.
double path_length(const Graph& g, std::span<const NodeId> nodes);

bool is_connected(std::size_t node_count, std::span<const Edge> edges);

}  // namespace physarum
