#include "mule/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "mule/kernels.hpp"

namespace mule {

Network Network::build(const Topology& t, double speed) {
  Network net;
  net.topology = t;
  net.speed = speed;
  net.adj = comm_graph(t);
  net.hops = hop_distances(net.adj);
  net.metric = metric_closure(t, speed);
  return net;
}

int RoutingForest::max_depth() const {
  int d = 0;
  for (int x : depth) d = std::max(d, x);
  return d;
}

std::vector<NodeId> find_cps(const HopMatrix& hops, const std::vector<Point>& positions, int k,
                             NodeId sink) {
  const std::vector<DomGroup> groups = k_dom_set(hops, k);

  struct Candidate {
    NodeId node;
    std::size_t group;
  };
  std::vector<Candidate> pool;
  std::size_t sink_group = 0;
  bool sink_qualifies = false;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& members = groups[g].members;
    std::vector<NodeId> qualified;
    for (NodeId m : members) {
      const bool reaches_all =
          std::all_of(members.begin(), members.end(), [&](NodeId x) { return hops(m, x) <= k; });
      if (reaches_all) qualified.push_back(m);
    }
    // The head reaches its whole group in G_k by construction.
    if (qualified.empty()) qualified.push_back(groups[g].head);
    if (std::binary_search(members.begin(), members.end(), sink)) {
      sink_group = g;
      sink_qualifies = std::find(qualified.begin(), qualified.end(), sink) != qualified.end();
    }
    for (NodeId q : qualified) pool.push_back({q, g});
  }
  if (sink_qualifies) {
    std::erase_if(pool, [&](const Candidate& c) { return c.group == sink_group; });
  }
  std::sort(pool.begin(), pool.end(),
            [](const Candidate& a, const Candidate& b) { return a.node < b.node; });

  std::vector<double> xs(pool.size()), ys(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    xs[i] = positions[pool[i].node].x;
    ys[i] = positions[pool[i].node].y;
  }
  std::vector<double> nearest(pool.size(), std::numeric_limits<double>::infinity());
  std::vector<char> open(pool.size(), 1);
  const auto& kern = kernels::active();
  kern.relax_min_distance(xs, ys, positions[sink].x, positions[sink].y, nearest);

  std::vector<NodeId> cps{sink};
  std::size_t remaining = pool.size();
  while (remaining > 0) {
    std::size_t pick = pool.size();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (open[i] && (pick == pool.size() || nearest[i] < nearest[pick])) pick = i;
    }
    const std::size_t group = pool[pick].group;
    cps.push_back(pool[pick].node);
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (open[i] && pool[i].group == group) {
        open[i] = 0;
        --remaining;
      }
    }
    const Point p = positions[pool[pick].node];
    kern.relax_min_distance(xs, ys, p.x, p.y, nearest);
  }
  return cps;
}

void recompute_depths(RoutingForest& forest, const std::vector<NodeId>& scope) {
  std::fill(forest.depth.begin(), forest.depth.end(), -1);
  const std::size_t limit = scope.size();
  for (NodeId v : scope) {
    int steps = 0;
    NodeId u = v;
    while (u != kNoNode && forest.parent[u] != kNoNode && static_cast<std::size_t>(steps) <= limit) {
      u = forest.parent[u];
      ++steps;
    }
    const bool reached_cp = u != kNoNode && forest.cp[u] == u;
    forest.depth[v] = reached_cp && static_cast<std::size_t>(steps) <= limit ? steps : -1;
  }
}

namespace {

std::vector<NodeId> all_nodes(std::size_t n) {
  std::vector<NodeId> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// Replaces the parents of one group by the MST of its induced subgraph, if
// that tree exists and respects the depth bound.
bool try_mst_group(const Adjacency& adj, const std::vector<Point>& positions, NodeId center,
                   const std::vector<NodeId>& members, int k, RoutingForest& forest) {
  std::vector<char> inside(adj.size(), 0);
  for (NodeId m : members) inside[m] = 1;
  std::vector<WeightedEdge> edges;
  for (NodeId u : members) {
    for (NodeId v : adj[u]) {
      if (inside[v] && u < v) edges.push_back({u, v, distance(positions[u], positions[v])});
    }
  }
  Tree t;
  try {
    t = spanning_tree(adj.size(), members, std::move(edges), center);
  } catch (const Disconnected&) {
    return false;
  }
  const auto depth = t.depths();
  for (NodeId m : members) {
    if (depth[m] > k) return false;
  }
  for (NodeId m : members) {
    if (m != center) forest.parent[m] = t.parent[m];
  }
  return true;
}

}  // namespace

RoutingForest build_routing(const Adjacency& adj, const HopMatrix& hops,
                            const std::vector<Point>& positions, const std::vector<NodeId>& cps,
                            int k, RoutingMode mode) {
  const std::size_t n = adj.size();
  RoutingForest f;
  f.parent.assign(n, kNoNode);
  f.cp.assign(n, kNoNode);
  f.depth.assign(n, -1);
  std::vector<NodeId> sorted_cps = cps;
  std::sort(sorted_cps.begin(), sorted_cps.end());
  for (NodeId c : sorted_cps) f.cp[c] = c;

  for (std::size_t v = 0; v < n; ++v) {
    if (f.cp[v] != kNoNode) continue;
    NodeId best = kNoNode;
    double best_dist = 0.0;
    for (NodeId c : sorted_cps) {
      const double dc = distance(positions[v], positions[c]);
      if (best == kNoNode || hops(v, c) < hops(v, best) ||
          (hops(v, c) == hops(v, best) && dc < best_dist)) {
        best = c;
        best_dist = dc;
      }
    }
    if (best == kNoNode || hops(v, best) > k) throw Uncoverable(static_cast<NodeId>(v));
    f.cp[v] = best;
  }

  for (std::size_t v = 0; v < n; ++v) {
    if (f.cp[v] == static_cast<NodeId>(v)) continue;
    const NodeId c = f.cp[v];
    const int want = hops(v, c) - 1;
    NodeId same = kNoNode, any = kNoNode;
    for (NodeId u : adj[v]) {
      if (hops(u, c) != want) continue;
      if (any == kNoNode) any = u;
      if (same == kNoNode && f.cp[u] == c) same = u;
    }
    f.parent[v] = same != kNoNode ? same : any;
  }

  if (mode == RoutingMode::Mst) {
    // Foreign nodes may relay through a group, so a swap is kept only if the
    // whole forest still respects k afterwards.
    const auto everyone = all_nodes(n);
    for (NodeId c : sorted_cps) {
      std::vector<NodeId> members;
      for (std::size_t v = 0; v < n; ++v) {
        if (f.cp[v] == c) members.push_back(static_cast<NodeId>(v));
      }
      const std::vector<NodeId> saved = f.parent;
      if (!try_mst_group(adj, positions, c, members, k, f)) continue;
      recompute_depths(f, everyone);
      const bool ok = std::all_of(everyone.begin(), everyone.end(),
                                  [&](NodeId v) { return f.depth[v] >= 0 && f.depth[v] <= k; });
      if (!ok) f.parent = saved;
    }
  }

  recompute_depths(f, all_nodes(n));
  return f;
}

RoutingGraph routing_graph(const Network& net, PartitionGraph kind) {
  RoutingGraph g;
  if (kind == PartitionGraph::Full) {
    g.adj = net.adj;
    g.hops = net.hops;
  } else {
    g.adj = comm_mst(net.topology, net.adj).as_adjacency();
    g.hops = hop_distances(g.adj);
  }
  return g;
}

PipelineStep pipeline_step(const Network& net, const RoutingGraph& g, int k) {
  PipelineStep step;
  step.caching_points = find_cps(g.hops, net.topology.positions, k, net.topology.sink);
  step.tour = christofides(net.metric, step.caching_points, net.topology.sink);
  return step;
}

namespace {

Plan partition_plan(const Network& net, const PlanConfig& config, PartitionGraph kind) {
  if (!is_connected(net.adj)) throw Disconnected("communication graph is not connected");
  const RoutingGraph g = routing_graph(net, kind);
  const int n = static_cast<int>(net.size());
  const int last_k = std::min(config.k_max, std::max(1, n));
  for (int k = 1; k <= last_k; ++k) {
    PipelineStep step = pipeline_step(net, g, k);
    if (step.tour.length > config.budget) continue;
    Plan plan;
    plan.anchor = net.topology.sink;
    plan.scope = all_nodes(net.size());
    plan.forest = build_routing(g.adj, g.hops, net.topology.positions, step.caching_points, k,
                                config.routing);
    plan.caching_points = std::move(step.caching_points);
    plan.tour = std::move(step.tour);
    plan.achieved_k = k;
    return plan;
  }
  throw Infeasible("no k in 1.." + std::to_string(last_k) + " yields a tour within the budget");
}

}  // namespace

Plan gp_plan(const Network& net, const PlanConfig& config) {
  return partition_plan(net, config, PartitionGraph::Full);
}

Plan gp_plan(const Topology& t, const PlanConfig& config) {
  return gp_plan(Network::build(t, config.speed), config);
}

Plan tp_plan(const Network& net, const PlanConfig& config) {
  return partition_plan(net, config, PartitionGraph::Mst);
}

Plan tp_plan(const Topology& t, const PlanConfig& config) {
  return tp_plan(Network::build(t, config.speed), config);
}

const char* violation_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::TourNotAnchored:
      return "TourNotAnchored";
    case ViolationKind::TourMismatch:
      return "TourMismatch";
    case ViolationKind::DuplicateWaypoint:
      return "DuplicateWaypoint";
    case ViolationKind::LengthMismatch:
      return "LengthMismatch";
    case ViolationKind::BudgetViolation:
      return "BudgetViolation";
    case ViolationKind::CoverageViolation:
      return "CoverageViolation";
    case ViolationKind::ForestViolation:
      return "ForestViolation";
    case ViolationKind::DepthViolation:
      return "DepthViolation";
  }
  return "Unknown";
}

bool has_violation(const std::vector<Violation>& v, ViolationKind kind) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == kind; });
}

std::vector<Violation> validate_plan(const Plan& plan, const Network& net, double budget) {
  std::vector<Violation> out;
  const std::size_t n = net.size();
  auto add = [&](ViolationKind k, NodeId v, std::string detail) {
    out.push_back({k, v, std::move(detail)});
  };
  auto valid_id = [&](NodeId v) { return v >= 0 && static_cast<std::size_t>(v) < n; };

  std::vector<char> in_scope(n, 0);
  for (NodeId v : plan.scope) {
    if (valid_id(v)) in_scope[v] = 1;
  }
  std::vector<char> is_cp(n, 0);
  for (NodeId c : plan.caching_points) {
    if (!valid_id(c) || !in_scope[c]) {
      add(ViolationKind::TourMismatch, c, "caching point outside the plan scope");
      continue;
    }
    is_cp[c] = 1;
  }

  // Tour: anchored, closed, one cycle over exactly the caching points.
  const auto& order = plan.tour.order;
  if (order.empty() || order.front() != plan.anchor)
    add(ViolationKind::TourNotAnchored, plan.anchor, "tour does not start at the anchor");
  std::vector<char> on_tour(n, 0);
  bool ids_ok = true;
  for (NodeId v : order) {
    if (!valid_id(v)) {
      add(ViolationKind::TourMismatch, v, "tour waypoint is not a node");
      ids_ok = false;
      continue;
    }
    if (on_tour[v]) add(ViolationKind::DuplicateWaypoint, v, "waypoint visited twice");
    on_tour[v] = 1;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (on_tour[v] != is_cp[v])
      add(ViolationKind::TourMismatch, static_cast<NodeId>(v),
          on_tour[v] ? "tour visits a non-caching point" : "caching point missing from tour");
  }
  if (ids_ok) {
    const double len = tour_length(order, net.metric);
    if (std::abs(len - plan.tour.length) > 1e-9 * std::max(1.0, len))
      add(ViolationKind::LengthMismatch, kNoNode, "recorded tour length differs from the metric");
    if (len > budget + 1e-9 * std::max(1.0, budget))
      add(ViolationKind::BudgetViolation, kNoNode,
          "tour length " + format_double(len) + " exceeds budget " + format_double(budget));
  }

  // Forest: every scoped node is a caching point or reaches one along communication edges.
  const auto& f = plan.forest;
  if (f.parent.size() != n || f.cp.size() != n) {
    add(ViolationKind::ForestViolation, kNoNode, "forest arrays do not match the topology size");
    return out;
  }
  for (NodeId v : plan.scope) {
    if (!valid_id(v)) continue;
    if (is_cp[v]) {
      if (f.parent[v] != kNoNode)
        add(ViolationKind::ForestViolation, v, "caching point forwards to a parent");
      continue;
    }
    if (f.parent[v] == kNoNode || f.cp[v] == kNoNode) {
      add(ViolationKind::CoverageViolation, v, "node is neither on the tour nor assigned");
      continue;
    }
    const NodeId p = f.parent[v];
    if (!valid_id(p) || !in_scope[p] ||
        !std::binary_search(net.adj[v].begin(), net.adj[v].end(), p)) {
      add(ViolationKind::ForestViolation, v, "parent is not a communication neighbour in scope");
      continue;
    }
    if (!valid_id(f.cp[v]) || !is_cp[f.cp[v]])
      add(ViolationKind::CoverageViolation, v, "assigned to a node that is not a caching point");
  }
  if (!out.empty() && has_violation(out, ViolationKind::ForestViolation)) return out;

  for (NodeId v : plan.scope) {
    if (!valid_id(v) || is_cp[v] || f.parent[v] == kNoNode) continue;
    NodeId u = v;
    int steps = 0;
    while (!is_cp[u] && steps <= static_cast<int>(plan.scope.size())) {
      u = f.parent[u];
      if (u == kNoNode) break;
      ++steps;
    }
    if (u == kNoNode || !is_cp[u]) {
      add(ViolationKind::ForestViolation, v, "parent chain does not reach a caching point");
    } else if (steps > plan.achieved_k) {
      add(ViolationKind::DepthViolation, v,
          "depth " + std::to_string(steps) + " exceeds k = " + std::to_string(plan.achieved_k));
    }
  }
  return out;
}

std::vector<Violation> validate_plan(const Plan& plan, const Topology& t, const PlanConfig& config) {
  return validate_plan(plan, Network::build(t, config.speed), config.budget);
}

long long assignment_hops(const Plan& plan, const HopMatrix& hops) {
  long long total = 0;
  for (NodeId v : plan.scope) {
    const NodeId c = plan.forest.cp[v];
    if (c != v) total += hops(v, c);
  }
  return total;
}

}  // namespace mule
