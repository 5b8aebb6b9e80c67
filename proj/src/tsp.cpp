#include "mule/tsp.hpp"

#include <algorithm>

#include "mule/graph.hpp"

namespace mule {

double tour_length(std::span<const NodeId> order, const Matrix<double>& metric) {
  if (order.size() < 2) return 0.0;
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) len += metric(order[i], order[i + 1]);
  return len + metric(order.back(), order.front());
}

namespace {

// Hierholzer's algorithm on a multigraph, always leaving a vertex along the
// unused edge with the lowest neighbour id.
std::vector<NodeId> euler_circuit(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges,
                                  NodeId start) {
  std::vector<std::vector<std::pair<NodeId, std::size_t>>> inc(n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    inc[edges[e].first].push_back({edges[e].second, e});
    inc[edges[e].second].push_back({edges[e].first, e});
  }
  for (auto& list : inc) std::sort(list.begin(), list.end());

  std::vector<char> used(edges.size(), 0);
  std::vector<std::size_t> next(n, 0);
  std::vector<NodeId> stack{start};
  std::vector<NodeId> circuit;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    auto& cursor = next[v];
    while (cursor < inc[v].size() && used[inc[v][cursor].second]) ++cursor;
    if (cursor == inc[v].size()) {
      circuit.push_back(v);
      stack.pop_back();
    } else {
      const auto [w, e] = inc[v][cursor];
      used[e] = 1;
      stack.push_back(w);
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  return circuit;
}

}  // namespace

Tour christofides(const Matrix<double>& metric, std::span<const NodeId> waypoints, NodeId anchor) {
  std::vector<NodeId> pts(waypoints.begin(), waypoints.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (!std::binary_search(pts.begin(), pts.end(), anchor))
    throw std::invalid_argument("tour anchor must be one of the waypoints");

  Tour tour;
  if (pts.size() == 1) {
    tour.order = {anchor};
    return tour;
  }
  if (pts.size() == 2) {
    tour.order = {anchor, pts[0] == anchor ? pts[1] : pts[0]};
    tour.length = tour_length(tour.order, metric);
    return tour;
  }

  const Tree t = mst(pts, metric, anchor);
  std::vector<std::pair<NodeId, NodeId>> multi;
  std::vector<int> degree(metric.size(), 0);
  for (const auto& e : t.edges()) {
    multi.emplace_back(e.u, e.v);
    ++degree[e.u];
    ++degree[e.v];
  }
  std::vector<NodeId> odd;
  for (NodeId v : pts) {
    if (degree[v] % 2 != 0) odd.push_back(v);
  }

  Pairing pairing;
  if (odd.size() <= kExactMatchingLimit) {
    pairing = exact_matching(odd, metric);
    tour.matching = MatchingMode::Exact;
  } else {
    pairing = greedy_matching(odd, metric);
    tour.matching = MatchingMode::Greedy;
  }
  for (auto [a, b] : pairing) multi.emplace_back(a, b);

  const std::vector<NodeId> circuit = euler_circuit(metric.size(), multi, anchor);
  std::vector<char> seen(metric.size(), 0);
  for (NodeId v : circuit) {
    if (!seen[v]) {
      seen[v] = 1;
      tour.order.push_back(v);
    }
  }
  tour.length = tour_length(tour.order, metric);
  return tour;
}

}  // namespace mule
