#include "mule/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <tuple>

namespace mule {

HopMatrix hop_distances(const Adjacency& adj) {
  const std::size_t n = adj.size();
  HopMatrix d(n, kInfHops);
  std::vector<NodeId> queue(n);
  for (std::size_t s = 0; s < n; ++s) {
    auto row = d.row(s);
    row[s] = 0;
    std::size_t head = 0, tail = 0;
    queue[tail++] = static_cast<NodeId>(s);
    while (head < tail) {
      const NodeId u = queue[head++];
      for (NodeId v : adj[u]) {
        if (row[v] == kInfHops) {
          row[v] = row[u] + 1;
          queue[tail++] = v;
        }
      }
    }
  }
  return d;
}

Adjacency power_graph(const HopMatrix& hops, int k) {
  if (k < 1) throw std::invalid_argument("power graph needs k >= 1");
  const std::size_t n = hops.size();
  Adjacency g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const int h = hops(i, j);
      if (h >= 1 && h <= k) g[i].push_back(static_cast<NodeId>(j));
    }
  }
  return g;
}

Adjacency power_graph(const Adjacency& adj, int k) { return power_graph(hop_distances(adj), k); }

std::vector<DomGroup> k_dom_set(const HopMatrix& hops, int k) {
  const Adjacency gk = power_graph(hops, k);
  const std::size_t n = gk.size();
  std::vector<char> alive(n, 1);
  std::vector<int> degree(n);
  for (std::size_t i = 0; i < n; ++i) degree[i] = static_cast<int>(gk[i].size());

  std::vector<DomGroup> groups;
  std::size_t remaining = n;
  while (remaining > 0) {
    NodeId best = kNoNode;
    for (std::size_t i = 0; i < n; ++i) {
      if (alive[i] && (best == kNoNode || degree[i] > degree[best])) best = static_cast<NodeId>(i);
    }
    DomGroup g;
    g.head = best;
    g.members.push_back(best);
    for (NodeId v : gk[best]) {
      if (alive[v]) g.members.push_back(v);
    }
    for (NodeId r : g.members) alive[r] = 0;
    for (NodeId r : g.members) {
      for (NodeId u : gk[r]) {
        if (alive[u]) --degree[u];
      }
    }
    remaining -= g.members.size();
    std::sort(g.members.begin(), g.members.end());
    groups.push_back(std::move(g));
  }
  return groups;
}

std::vector<DomGroup> k_dom_set(const Adjacency& adj, int k) {
  return k_dom_set(hop_distances(adj), k);
}

double Tree::total_weight() const {
  double w = 0.0;
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (parent[v] != kNoNode) w += parent_weight[v];
  }
  return w;
}

std::vector<WeightedEdge> Tree::edges() const {
  std::vector<WeightedEdge> out;
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (parent[v] != kNoNode) out.push_back({parent[v], static_cast<NodeId>(v), parent_weight[v]});
  }
  return out;
}

std::vector<std::vector<NodeId>> Tree::children() const {
  std::vector<std::vector<NodeId>> ch(parent.size());
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (parent[v] != kNoNode) ch[parent[v]].push_back(static_cast<NodeId>(v));
  }
  for (auto& c : ch) {
    std::sort(c.begin(), c.end(), [&](NodeId a, NodeId b) {
      return std::tie(parent_weight[a], a) < std::tie(parent_weight[b], b);
    });
  }
  return ch;
}

std::vector<int> Tree::depths() const {
  std::vector<int> depth(parent.size(), -1);
  if (root == kNoNode) return depth;
  const auto ch = children();
  std::vector<NodeId> stack{root};
  depth[root] = 0;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId c : ch[u]) {
      depth[c] = depth[u] + 1;
      stack.push_back(c);
    }
  }
  return depth;
}

Adjacency Tree::as_adjacency() const {
  Adjacency adj(parent.size());
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (parent[v] != kNoNode) {
      adj[v].push_back(parent[v]);
      adj[parent[v]].push_back(static_cast<NodeId>(v));
    }
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

std::vector<NodeId> Tree::vertices() const {
  std::vector<NodeId> out;
  for (std::size_t v = 0; v < in_tree.size(); ++v) {
    if (in_tree[v]) out.push_back(static_cast<NodeId>(v));
  }
  return out;
}

namespace {

struct DisjointSets {
  std::vector<NodeId> up;
  explicit DisjointSets(std::size_t n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  NodeId find(NodeId x) {
    while (up[x] != x) {
      up[x] = up[up[x]];
      x = up[x];
    }
    return x;
  }
  bool unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    up[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

Tree spanning_tree(std::size_t n, std::span<const NodeId> vertices, std::vector<WeightedEdge> edges,
                   NodeId root) {
  for (auto& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return std::tie(a.weight, a.u, a.v) < std::tie(b.weight, b.u, b.v);
  });

  DisjointSets dsu(n);
  std::size_t joined = 0;
  std::vector<std::vector<std::pair<NodeId, double>>> nbr(n);
  for (const auto& e : edges) {
    if (dsu.unite(e.u, e.v)) {
      nbr[e.u].push_back({e.v, e.weight});
      nbr[e.v].push_back({e.u, e.weight});
      ++joined;
      if (joined + 1 == vertices.size()) break;
    }
  }
  if (!vertices.empty() && joined + 1 != vertices.size())
    throw Disconnected("vertex set is not connected by the candidate edges");

  Tree t;
  t.root = root;
  t.parent.assign(n, kNoNode);
  t.parent_weight.assign(n, 0.0);
  t.in_tree.assign(n, 0);
  if (vertices.empty()) return t;
  std::vector<NodeId> stack{root};
  t.in_tree[root] = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (auto [v, w] : nbr[u]) {
      if (!t.in_tree[v]) {
        t.in_tree[v] = 1;
        t.parent[v] = u;
        t.parent_weight[v] = w;
        stack.push_back(v);
      }
    }
  }
  return t;
}

Tree mst(std::span<const NodeId> vertices, const Matrix<double>& weights, NodeId root) {
  std::vector<WeightedEdge> edges;
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      const double w = weights(vertices[a], vertices[b]);
      if (std::isfinite(w)) edges.push_back({vertices[a], vertices[b], w});
    }
  }
  return spanning_tree(weights.size(), vertices, std::move(edges), root);
}

Tree mst(std::span<const NodeId> vertices, const Matrix<double>& weights) {
  if (vertices.empty()) return spanning_tree(weights.size(), vertices, {}, kNoNode);
  return mst(vertices, weights, vertices.front());
}

Tree comm_mst(const Topology& t, const Adjacency& adj) {
  std::vector<WeightedEdge> edges;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    for (NodeId v : adj[u]) {
      if (static_cast<NodeId>(u) < v)
        edges.push_back({static_cast<NodeId>(u), v, distance(t.positions[u], t.positions[v])});
    }
  }
  std::vector<NodeId> all(t.size());
  std::iota(all.begin(), all.end(), 0);
  return spanning_tree(t.size(), all, std::move(edges), t.sink);
}

Tree steiner_tree(const Matrix<double>& metric, std::span<const NodeId> terminals, NodeId root) {
  if (terminals.empty()) throw std::invalid_argument("steiner tree needs at least one terminal");
  return mst(terminals, metric, root);
}

Tree bfs_tree(const Adjacency& adj, NodeId root) {
  const std::size_t n = adj.size();
  Tree t;
  t.root = root;
  t.parent.assign(n, kNoNode);
  t.parent_weight.assign(n, 1.0);
  t.in_tree.assign(n, 0);
  std::vector<int> depth(n, -1);
  std::queue<NodeId> q;
  q.push(root);
  depth[root] = 0;
  t.in_tree[root] = 1;
  // Discovery order is not id order, so the lowest-id parent is tracked explicitly.
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop();
    for (NodeId v : adj[u]) {
      if (depth[v] == -1) {
        depth[v] = depth[u] + 1;
        t.in_tree[v] = 1;
        t.parent[v] = u;
        q.push(v);
      } else if (depth[v] == depth[u] + 1 && u < t.parent[v]) {
        t.parent[v] = u;
      }
    }
  }
  return t;
}

}  // namespace mule
