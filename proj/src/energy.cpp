#include "mule/energy.hpp"

#include <algorithm>
#include <cmath>

namespace mule {

void RadioParams::validate() const {
  if (!(bandwidth > 0.0) || !(tx_power > 0.0) || !(rx_power > 0.0) || !(packet_bytes > 0.0))
    throw std::invalid_argument("radio bandwidth, powers and packet size must be positive");
  if (!(battery >= 0.0)) throw std::invalid_argument("battery must be non-negative");
}

PacketEnergy per_packet_energy(const RadioParams& r) {
  const double airtime = r.packet_bytes * 8.0 / r.bandwidth;
  return {r.tx_power * airtime, r.rx_power * airtime};
}

std::int64_t to_femtojoules(double joules) { return std::llround(joules * 1e15); }

std::vector<int> subtree_sizes(const Plan& plan) {
  const auto& parent = plan.forest.parent;
  std::vector<int> size(parent.size(), 0);
  for (NodeId v : plan.scope) {
    std::size_t guard = 0;
    for (NodeId u = v; u != kNoNode && guard <= plan.scope.size(); u = parent[u], ++guard) ++size[u];
  }
  return size;
}

namespace {

struct RoundCost {
  std::vector<NodeId> nodes;         // ascending
  std::vector<int> subtree;          // parallel to nodes
  std::vector<std::int64_t> cost;    // fJ per round
};

RoundCost round_costs(const Plan& plan, const RadioParams& radio) {
  radio.validate();
  const PacketEnergy e = per_packet_energy(radio);
  const std::int64_t tx = to_femtojoules(e.tx);
  const std::int64_t rx = to_femtojoules(e.rx);
  const std::vector<int> sizes = subtree_sizes(plan);
  RoundCost rc;
  rc.nodes = plan.scope;
  std::sort(rc.nodes.begin(), rc.nodes.end());
  for (NodeId v : rc.nodes) {
    const int s = sizes[v];
    rc.subtree.push_back(s);
    rc.cost.push_back(s * tx + (s - 1) * rx);
  }
  return rc;
}

}  // namespace

SimReport lifetime(const Plan& plan, const RadioParams& radio) {
  const RoundCost rc = round_costs(plan, radio);
  const std::int64_t battery = to_femtojoules(radio.battery);
  SimReport rep;
  rep.lifetime_rounds = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < rc.nodes.size(); ++i) {
    const std::int64_t rounds = battery / rc.cost[i];
    rep.per_node.push_back({rc.nodes[i], rc.subtree[i], static_cast<double>(rc.cost[i]) * 1e-15, rounds});
    if (rounds < rep.lifetime_rounds) {
      rep.lifetime_rounds = rounds;
      rep.first_dead = rc.nodes[i];
    }
  }
  if (rc.nodes.empty()) rep.lifetime_rounds = 0;
  return rep;
}

SimReport lifetime(std::span<const Plan> plans, const RadioParams& radio) {
  SimReport all;
  all.lifetime_rounds = std::numeric_limits<std::int64_t>::max();
  for (const Plan& p : plans) {
    SimReport r = lifetime(p, radio);
    if (r.lifetime_rounds < all.lifetime_rounds ||
        (r.lifetime_rounds == all.lifetime_rounds && r.first_dead < all.first_dead)) {
      all.lifetime_rounds = r.lifetime_rounds;
      all.first_dead = r.first_dead;
    }
    all.per_node.insert(all.per_node.end(), r.per_node.begin(), r.per_node.end());
  }
  std::sort(all.per_node.begin(), all.per_node.end(),
            [](const NodeEnergy& a, const NodeEnergy& b) { return a.node < b.node; });
  if (plans.empty()) all.lifetime_rounds = 0;
  return all;
}

SimReport simulate_rounds(const Plan& plan, const RadioParams& radio, std::int64_t max_rounds) {
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
  const RoundCost rc = round_costs(plan, radio);
  const std::int64_t battery = to_femtojoules(radio.battery);
  const std::size_t m = rc.nodes.size();

  // Leaf-to-root: deeper nodes forward before their parents relay.
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return plan.forest.depth[rc.nodes[a]] > plan.forest.depth[rc.nodes[b]];
  });

  std::vector<std::int64_t> residual(m, battery);
  SimReport rep;
  std::int64_t completed = 0;
  NodeId dead = kNoNode;
  while (completed < max_rounds && dead == kNoNode) {
    for (std::size_t i : order) {
      if (residual[i] < rc.cost[i]) {
        if (dead == kNoNode || rc.nodes[i] < dead) dead = rc.nodes[i];
      }
    }
    if (dead != kNoNode) break;
    for (std::size_t i : order) residual[i] -= rc.cost[i];
    ++completed;
  }
  rep.lifetime_rounds = completed;
  rep.first_dead = dead;
  rep.truncated = dead == kNoNode;
  for (std::size_t i = 0; i < m; ++i) {
    rep.per_node.push_back({rc.nodes[i], rc.subtree[i], static_cast<double>(rc.cost[i]) * 1e-15,
                            completed + residual[i] / rc.cost[i]});
  }
  return rep;
}

double tour_budget(const Topology& t, const MobilityParams& m) {
  if (!(m.speed > 0.0)) throw std::invalid_argument("speed must be positive");
  if (!(m.budget_fraction > 0.0 && m.budget_fraction <= 1.0))
    throw std::invalid_argument("budget fraction must lie in (0, 1]");
  const double mst_length = comm_mst(t, comm_graph(t)).total_weight();
  return m.budget_fraction * mst_length / m.speed;
}

}  // namespace mule
