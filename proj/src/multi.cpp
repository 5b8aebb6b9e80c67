#include "mule/multi.hpp"

#include <algorithm>
#include <numeric>

#include "mule/rdvt.hpp"
#include "mule/rng.hpp"

namespace mule {

std::vector<NodeId> Clustering::members(int cluster) const {
  std::vector<NodeId> out;
  for (std::size_t v = 0; v < membership.size(); ++v) {
    if (membership[v] == cluster) out.push_back(static_cast<NodeId>(v));
  }
  return out;
}

namespace {

void assign_to_centers(const Network& net, Clustering& cl) {
  const std::size_t n = net.size();
  const auto& pos = net.topology.positions;
  cl.membership.assign(n, -1);
  cl.cost = 0;
  for (std::size_t v = 0; v < n; ++v) {
    int best = -1;
    double best_dist = 0.0;
    for (std::size_t i = 0; i < cl.centers.size(); ++i) {
      const NodeId c = cl.centers[i];
      const double dc = distance(pos[v], pos[c]);
      if (best < 0 || net.hops(v, c) < net.hops(v, cl.centers[best]) ||
          (net.hops(v, c) == net.hops(v, cl.centers[best]) && dc < best_dist)) {
        best = static_cast<int>(i);
        best_dist = dc;
      }
    }
    cl.membership[v] = best;
    cl.cost += net.hops(v, cl.centers[best]);
  }
}

std::vector<NodeId> medoids(const Network& net, const Clustering& cl) {
  std::vector<NodeId> out(cl.centers.size(), kNoNode);
  for (std::size_t i = 0; i < cl.centers.size(); ++i) {
    const auto members = cl.members(static_cast<int>(i));
    long long best_sum = 0;
    for (NodeId m : members) {
      long long sum = 0;
      for (NodeId x : members) sum += net.hops(m, x);
      if (out[i] == kNoNode || sum < best_sum) {
        out[i] = m;
        best_sum = sum;
      }
    }
  }
  return out;
}

}  // namespace

Clustering find_clusters_from(const Network& net, std::vector<NodeId> centers) {
  Clustering current;
  current.centers = std::move(centers);
  Clustering best;
  bool have_best = false;
  for (int it = 1; it <= kMaxClusterIterations; ++it) {
    assign_to_centers(net, current);
    current.iterations = it;
    if (!have_best || current.cost < best.cost) {
      best = current;
      have_best = true;
    }
    std::vector<NodeId> next = medoids(net, current);
    if (next == current.centers) {
      current.converged = true;
      return current;
    }
    current.centers = std::move(next);
  }
  best.iterations = kMaxClusterIterations;
  best.converged = false;
  return best;
}

Clustering find_clusters(const Network& net, int c, std::uint64_t seed) {
  const auto n = static_cast<int>(net.size());
  if (c < 1 || c > n) throw std::invalid_argument("cluster count must lie in [1, n]");
  Rng rng(seed);
  std::vector<NodeId> ids(static_cast<std::size_t>(n));
  std::iota(ids.begin(), ids.end(), 0);
  for (int i = 0; i < c; ++i) {
    const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(ids[i], ids[j]);
  }
  ids.resize(static_cast<std::size_t>(c));
  return find_clusters_from(net, std::move(ids));
}

Plan lift_plan(const Plan& local, const std::vector<NodeId>& members, std::size_t global_size) {
  auto g = [&](NodeId v) { return v == kNoNode ? kNoNode : members[v]; };
  Plan out;
  out.anchor = g(local.anchor);
  for (NodeId v : local.scope) out.scope.push_back(g(v));
  std::sort(out.scope.begin(), out.scope.end());
  for (NodeId v : local.caching_points) out.caching_points.push_back(g(v));
  out.tour.length = local.tour.length;
  out.tour.matching = local.tour.matching;
  for (NodeId v : local.tour.order) out.tour.order.push_back(g(v));
  out.forest.parent.assign(global_size, kNoNode);
  out.forest.cp.assign(global_size, kNoNode);
  out.forest.depth.assign(global_size, -1);
  for (std::size_t v = 0; v < members.size(); ++v) {
    out.forest.parent[members[v]] = g(local.forest.parent[v]);
    out.forest.cp[members[v]] = g(local.forest.cp[v]);
    out.forest.depth[members[v]] = local.forest.depth[v];
  }
  out.achieved_k = local.achieved_k;
  return out;
}

MultiPlan mp_plan(const Network& net, const MultiConfig& config, PartitionPlanner planner) {
  if (config.elements < 1) throw std::invalid_argument("need at least one mobile element");
  if (!is_connected(net.adj)) throw Disconnected("communication graph is not connected");
  constexpr int kAttempts = 10;

  Clustering cl;
  std::size_t bad_partition = 0;
  bool ok = false;
  for (int attempt = 0; attempt < kAttempts && !ok; ++attempt) {
    cl = find_clusters(net, config.elements,
                       derive_seed(config.seed, {static_cast<std::uint64_t>(attempt)}));
    ok = true;
    for (std::size_t i = 0; i < cl.centers.size(); ++i) {
      const auto members = cl.members(static_cast<int>(i));
      const Topology sub = induced(net.topology, members, 0);
      if (!is_connected(comm_graph(sub))) {
        ok = false;
        bad_partition = i;
        break;
      }
    }
  }
  if (!ok) throw PartitionDisconnected(bad_partition);

  MultiPlan out;
  PlanConfig pc;
  pc.budget = config.budget;
  pc.k_max = config.k_max;
  pc.speed = net.speed;
  for (std::size_t i = 0; i < cl.centers.size(); ++i) {
    const auto members = cl.members(static_cast<int>(i));
    const auto center_local = static_cast<NodeId>(
        std::find(members.begin(), members.end(), cl.centers[i]) - members.begin());
    const Network sub = Network::build(induced(net.topology, members, center_local), net.speed);
    const Plan local = planner == PartitionPlanner::Gp ? gp_plan(sub, pc) : rdvt_plan(sub, pc);
    out.plans.push_back(lift_plan(local, members, net.size()));
  }
  out.clustering = std::move(cl);
  return out;
}

MultiPlan mp_plan(const Topology& t, const MultiConfig& config, PartitionPlanner planner) {
  return mp_plan(Network::build(t, config.speed), config, planner);
}

}  // namespace mule
