#pragma once

#include <string>
#include <vector>

#include "mule/graph.hpp"
#include "mule/topology.hpp"
#include "mule/tsp.hpp"

namespace mule {

/// A topology plus the derived structures every planner needs.
struct Network {
  Topology topology;
  double speed = 1.0;
  Adjacency adj;
  HopMatrix hops;
  Matrix<double> metric;  // travel times at `speed`

  static Network build(const Topology& t, double speed);
  std::size_t size() const { return topology.size(); }
};

enum class RoutingMode { Bfs, Mst };

struct PlanConfig {
  double budget = 0.0;  // L, seconds
  int k_max = std::numeric_limits<int>::max();
  double speed = 1.0;  // m/s
  RoutingMode routing = RoutingMode::Bfs;
};

/// Parent pointers along communication edges. Arrays are indexed by global
/// node id; entries outside the plan's scope hold kNoNode / -1.
struct RoutingForest {
  std::vector<NodeId> parent;  // kNoNode for caching points
  std::vector<NodeId> cp;      // assigned caching point (itself for a caching point)
  std::vector<int> depth;      // hops along parent pointers to the first caching point

  int max_depth() const;
};

struct Plan {
  NodeId anchor = kNoNode;
  std::vector<NodeId> scope;  // sorted node ids this plan is responsible for
  std::vector<NodeId> caching_points;
  Tour tour;
  RoutingForest forest;
  int achieved_k = 0;
};

/// Caching-point identification on `graph` (the communication graph for GP,
/// its MST for TP). The returned list starts with the sink, then confirmed
/// candidates in confirmation order.
std::vector<NodeId> find_cps(const HopMatrix& hops, const std::vector<Point>& positions, int k,
                             NodeId sink);

/// Assigns every non-CP node to its hop-nearest CP and links it along a
/// shortest path in `adj`. Throws Uncoverable when a node is more than k hops
/// from every CP.
RoutingForest build_routing(const Adjacency& adj, const HopMatrix& hops,
                            const std::vector<Point>& positions, const std::vector<NodeId>& cps,
                            int k, RoutingMode mode = RoutingMode::Bfs);

/// Result of one pass of the select/tour/route pipeline at a fixed k.
struct PipelineStep {
  std::vector<NodeId> caching_points;
  Tour tour;
};

enum class PartitionGraph { Full, Mst };

/// The graph the dominating-set and routing steps operate on.
struct RoutingGraph {
  Adjacency adj;
  HopMatrix hops;
};
RoutingGraph routing_graph(const Network& net, PartitionGraph kind);

PipelineStep pipeline_step(const Network& net, const RoutingGraph& g, int k);

/// Graph-partitioning heuristic: smallest k whose tour fits the budget.
Plan gp_plan(const Network& net, const PlanConfig& config);
Plan gp_plan(const Topology& t, const PlanConfig& config);

/// Tree-partitioning heuristic: the same pipeline over the Euclidean MST.
Plan tp_plan(const Network& net, const PlanConfig& config);
Plan tp_plan(const Topology& t, const PlanConfig& config);

enum class ViolationKind {
  TourNotAnchored,
  TourMismatch,
  DuplicateWaypoint,
  LengthMismatch,
  BudgetViolation,
  CoverageViolation,
  ForestViolation,
  DepthViolation,
};

const char* violation_name(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  NodeId node = kNoNode;
  std::string detail;
};

/// Checks the tour and forest against the problem constraints. Empty iff feasible.
std::vector<Violation> validate_plan(const Plan& plan, const Network& net, double budget);
std::vector<Violation> validate_plan(const Plan& plan, const Topology& t, const PlanConfig& config);

bool has_violation(const std::vector<Violation>& v, ViolationKind kind);

/// Sum over non-CP nodes of the hop distance to the assigned caching point.
long long assignment_hops(const Plan& plan, const HopMatrix& hops);

/// Fills the forest's depth array by following parent pointers.
void recompute_depths(RoutingForest& forest, const std::vector<NodeId>& scope);

}  // namespace mule
