#pragma once

#include <span>
#include <vector>

#include "mule/common.hpp"
#include "mule/topology.hpp"

namespace mule {

inline constexpr int kInfHops = std::numeric_limits<int>::max();

/// All-pairs hop counts; kInfHops marks unreachable pairs.
using HopMatrix = Matrix<int>;

HopMatrix hop_distances(const Adjacency& adj);

/// Edge (i, j) iff 1 <= hops(i, j) <= k.
Adjacency power_graph(const HopMatrix& hops, int k);
Adjacency power_graph(const Adjacency& adj, int k);

/// One group of the k-hop dominating-set partition.
struct DomGroup {
  NodeId head = kNoNode;
  std::vector<NodeId> members;  // sorted, includes head
  bool operator==(const DomGroup&) const = default;
};

/// Greedy partition: repeatedly take the node of highest remaining degree in
/// G_k (lowest id on ties) together with its remaining G_k neighbours.
std::vector<DomGroup> k_dom_set(const HopMatrix& hops, int k);
std::vector<DomGroup> k_dom_set(const Adjacency& adj, int k);

struct WeightedEdge {
  NodeId u = kNoNode;
  NodeId v = kNoNode;
  double weight = 0.0;
};

/// Rooted tree over a subset of node ids. Arrays are indexed by global id;
/// nodes outside the tree have parent == kNoNode and in_tree == false.
struct Tree {
  NodeId root = kNoNode;
  std::vector<NodeId> parent;
  std::vector<double> parent_weight;
  std::vector<char> in_tree;

  double total_weight() const;
  std::vector<WeightedEdge> edges() const;
  /// Children lists, each sorted by (edge weight, id).
  std::vector<std::vector<NodeId>> children() const;
  /// Hop depth from the root; -1 outside the tree.
  std::vector<int> depths() const;
  /// Tree edges as an undirected adjacency over all `parent.size()` ids.
  Adjacency as_adjacency() const;
  std::vector<NodeId> vertices() const;
};

/// Kruskal over the given candidate edges, ties broken by (min id, max id).
/// `n` is the id-space size. Throws Disconnected if `vertices` are not spanned.
Tree spanning_tree(std::size_t n, std::span<const NodeId> vertices, std::vector<WeightedEdge> edges,
                   NodeId root);

/// Minimum spanning tree over a dense weight matrix restricted to `vertices`
/// (infinite weights are treated as missing edges).
Tree mst(std::span<const NodeId> vertices, const Matrix<double>& weights, NodeId root);
Tree mst(std::span<const NodeId> vertices, const Matrix<double>& weights);

/// Euclidean MST of the communication graph, rooted at the sink.
Tree comm_mst(const Topology& t, const Adjacency& adj);

/// Terminal-MST 2-approximation of the Steiner minimum tree.
Tree steiner_tree(const Matrix<double>& metric, std::span<const NodeId> terminals, NodeId root);

/// BFS shortest-path tree; each node's parent is its lowest-id neighbour one level up.
Tree bfs_tree(const Adjacency& adj, NodeId root);

}  // namespace mule
