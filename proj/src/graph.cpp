#include "physarum/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "physarum/error.hpp"

namespace physarum {

namespace {

std::string edge_name(NodeId u, NodeId v) {
  return "(" + std::to_string(u + 1) + "," + std::to_string(v + 1) + ")";
}

void check_terminals(std::size_t node_count, NodeId source, NodeId sink) {
  if (source >= node_count || sink >= node_count) {
    throw InvalidTerminal("terminal out of range: source " + std::to_string(source + 1) +
                          ", sink " + std::to_string(sink + 1) + ", node count " +
                          std::to_string(node_count));
  }
  if (source == sink) throw InvalidTerminal("source and sink are the same node");
}

}  // namespace

bool is_connected(std::size_t node_count, std::span<const Edge> edges) {
  if (node_count == 0) return false;
  // Union-find with path halving.
  std::vector<std::size_t> parent(node_count);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::size_t components = node_count;
  for (const Edge& e : edges) {
    const auto a = find(e.u);
    const auto b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

Graph Graph::build(std::size_t node_count, std::vector<Edge> edges, NodeId source, NodeId sink) {
  if (node_count < 2) throw InvalidTerminal("graph needs at least two nodes");
  check_terminals(node_count, source, sink);

  for (Edge& e : edges) {
    if (e.u >= node_count || e.v >= node_count) {
      throw InvalidEdge("edge " + edge_name(e.u, e.v) + " references a node outside 1.." +
                        std::to_string(node_count));
    }
    if (e.u == e.v) throw InvalidEdge("self-loop at node " + std::to_string(e.u + 1));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw NonPositiveWeight("edge " + edge_name(e.u, e.v) + " has weight " +
                              std::to_string(e.weight));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  const auto dup = std::adjacent_find(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u == b.u && a.v == b.v;
  });
  if (dup != edges.end()) throw DuplicateEdge("duplicate edge " + edge_name(dup->u, dup->v));

  if (!is_connected(node_count, edges)) throw DisconnectedGraph("graph is not connected");

  Graph g;
  g.node_count_ = node_count;
  g.source_ = source;
  g.sink_ = sink;
  g.edges_ = std::move(edges);

  g.offsets_.assign(node_count + 1, 0);
  for (const Edge& e : g.edges_) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.incidences_.resize(2 * g.edges_.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (EdgeId id = 0; id < g.edges_.size(); ++id) {
    const Edge& e = g.edges_[id];
    g.incidences_[cursor[e.u]++] = {e.v, id};
    g.incidences_[cursor[e.v]++] = {e.u, id};
  }
  for (std::size_t n = 0; n < node_count; ++n) {
    std::sort(g.incidences_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[n]),
              g.incidences_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[n + 1]),
              [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
  }
  return g;
}

std::optional<EdgeId> Graph::find_edge(NodeId a, NodeId b) const {
  if (a >= node_count_ || b >= node_count_) return std::nullopt;
  const auto adj = neighbors(a);
  const auto it = std::lower_bound(adj.begin(), adj.end(), b, [](const Incidence& inc, NodeId id) {
    return inc.neighbor < id;
  });
  if (it == adj.end() || it->neighbor != b) return std::nullopt;
  return it->edge;
}

Graph Graph::with_terminals(NodeId source, NodeId sink) const {
  check_terminals(node_count_, source, sink);
  Graph g = *this;
  g.source_ = source;
  g.sink_ = sink;
  return g;
}

double path_length(const Graph& g, std::span<const NodeId> nodes) {
  double total = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const auto e = g.find_edge(nodes[i - 1], nodes[i]);
    if (!e) throw InvalidEdge("no edge " + edge_name(nodes[i - 1], nodes[i]));
    total += g.edge(*e).weight;
  }
  return total;
}

Path make_path(const Graph& g, std::vector<NodeId> nodes) {
  std::vector<bool> seen(g.node_count(), false);
  for (NodeId n : nodes) {
    if (n >= g.node_count()) throw InvalidEdge("path node out of range");
    if (seen[n]) throw InvalidEdge("path revisits node " + std::to_string(n + 1));
    seen[n] = true;
  }
  const double length = path_length(g, nodes);
  return Path{std::move(nodes), length};
}

}  // namespace physarum
