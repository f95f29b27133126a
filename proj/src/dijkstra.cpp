#include "physarum/dijkstra.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace physarum {

Path dijkstra(const Graph& g) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr NodeId kNone = std::numeric_limits<NodeId>::max();
  std::vector<double> dist(g.node_count(), kInf);
  std::vector<NodeId> prev(g.node_count(), kNone);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;

  dist[g.source()] = 0.0;
  heap.emplace(0.0, g.source());
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    if (u == g.sink()) break;
    for (const Incidence& inc : g.neighbors(u)) {
      const double nd = d + g.edge(inc.edge).weight;
      if (nd < dist[inc.neighbor]) {
        dist[inc.neighbor] = nd;
        prev[inc.neighbor] = u;
        heap.emplace(nd, inc.neighbor);
      }
    }
  }

  std::vector<NodeId> nodes;
  for (NodeId n = g.sink(); n != kNone; n = prev[n]) nodes.push_back(n);
  std::reverse(nodes.begin(), nodes.end());
  return make_path(g, std::move(nodes));
}

}  // namespace physarum
