#include "mule/rdvt.hpp"

#include <algorithm>
#include <numeric>

namespace mule {

std::vector<NodeId> preorder(const Tree& tree) {
  std::vector<NodeId> out;
  if (tree.root == kNoNode) return out;
  const auto children = tree.children();
  std::vector<NodeId> stack{tree.root};
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    out.push_back(u);
    const auto& ch = children[u];
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

Plan rdvt_plan(const Network& net, const PlanConfig& config) {
  if (!is_connected(net.adj)) throw Disconnected("communication graph is not connected");
  const std::size_t n = net.size();
  const NodeId sink = net.topology.sink;
  std::vector<NodeId> all(n);
  std::iota(all.begin(), all.end(), 0);

  const Tree smt = steiner_tree(net.metric, all, sink);
  const std::vector<NodeId> visit = preorder(smt);

  std::vector<NodeId> visited{sink};
  Tour tour = christofides(net.metric, visited, sink);
  for (std::size_t i = 1; i < visit.size(); ++i) {
    visited.push_back(visit[i]);
    Tour trial = christofides(net.metric, visited, sink);
    if (trial.length > config.budget) {
      visited.pop_back();
      break;
    }
    tour = std::move(trial);
  }

  Plan plan;
  plan.anchor = sink;
  plan.scope = all;
  plan.forest = build_routing(net.adj, net.hops, net.topology.positions, visited,
                              static_cast<int>(n), RoutingMode::Bfs);
  plan.caching_points = std::move(visited);
  plan.tour = std::move(tour);
  plan.achieved_k = plan.forest.max_depth();
  return plan;
}

Plan rdvt_plan(const Topology& t, const PlanConfig& config) {
  return rdvt_plan(Network::build(t, config.speed), config);
}

}  // namespace mule
