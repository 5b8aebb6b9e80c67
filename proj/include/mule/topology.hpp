#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mule/common.hpp"

namespace mule {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

double distance(Point a, Point b);

/// A sensor deployment. Node ids are dense indices into `positions`.
struct Topology {
  std::vector<Point> positions;
  NodeId sink = 0;
  double comm_range = 100.0;

  std::size_t size() const { return positions.size(); }
  bool operator==(const Topology&) const = default;
};

enum class DeploymentKind { Uniform, Variable };

struct DeploymentSpec {
  DeploymentKind kind = DeploymentKind::Uniform;
  int n = 100;
  double area_side = 500.0;
  // Variable-density fields.
  int grid_dim = 10;
  int dense_cell_count = 30;
  double density_multiplier = 5.0;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// Deterministic deployment. Retries with derived sub-seeds until the unit-disk
/// graph is connected; throws ConnectivityFailure after 100 attempts.
Topology generate(const DeploymentSpec& spec, double comm_range);

/// One placement attempt, with no connectivity check.
std::vector<Point> place_nodes(const DeploymentSpec& spec, std::uint64_t attempt_seed);

/// Node nearest to the area center; lowest id wins ties.
NodeId central_node(const std::vector<Point>& positions, double area_side);

/// Unit-disk graph: edge iff distance <= comm_range. Neighbor lists are sorted by id.
Adjacency comm_graph(const Topology& t);

/// Travel times r[i][j] = distance(i, j) / speed, in seconds.
Matrix<double> metric_closure(const Topology& t, double speed);

bool is_connected(const Adjacency& adj);

/// Induced sub-topology over `members` (global ids), relabelled 0..m-1 in the given order.
Topology induced(const Topology& t, const std::vector<NodeId>& members, NodeId new_sink);

void save_topology(std::ostream& os, const Topology& t);
std::string topology_to_string(const Topology& t);
/// Throws ParseError (with a 1-based line number) on malformed input.
Topology load_topology(std::istream& is);
Topology topology_from_string(const std::string& text);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace mule
