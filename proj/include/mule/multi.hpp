#pragma once

#include <cstdint>
#include <vector>

#include "mule/planner.hpp"

namespace mule {

struct Clustering {
  std::vector<NodeId> centers;  // centers[i] is the medoid of cluster i
  std::vector<int> membership;  // node -> cluster index
  long long cost = 0;           // sum of hop distances from nodes to their centers
  int iterations = 0;
  bool converged = false;

  std::vector<NodeId> members(int cluster) const;
};

inline constexpr int kMaxClusterIterations = 100;

/// Medoid clustering on hop distance with `c` seeded random initial centers.
Clustering find_clusters(const Network& net, int c, std::uint64_t seed);

/// Same iteration from explicit initial centers. Stops when the center set
/// repeats or after kMaxClusterIterations; in the latter case the lowest-cost
/// configuration seen is returned.
Clustering find_clusters_from(const Network& net, std::vector<NodeId> centers);

enum class PartitionPlanner { Gp, Rdvt };

struct MultiConfig {
  int elements = 1;  // M
  double budget = 0.0;  // per-element L, seconds
  int k_max = std::numeric_limits<int>::max();
  double speed = 1.0;
  std::uint64_t seed = 1;
};

struct MultiPlan {
  Clustering clustering;
  std::vector<Plan> plans;  // one per cluster, global ids, anchored at the cluster center
};

/// Multi-partitioning heuristic. Throws PartitionDisconnected when ten
/// clusterings in a row contain a partition whose induced subgraph is split.
MultiPlan mp_plan(const Network& net, const MultiConfig& config, PartitionPlanner planner);
MultiPlan mp_plan(const Topology& t, const MultiConfig& config, PartitionPlanner planner);

/// Maps a plan computed on induced(t, members, ...) back to global ids.
Plan lift_plan(const Plan& local, const std::vector<NodeId>& members, std::size_t global_size);

}  // namespace mule
