#include "mule/topology.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "mule/kernels.hpp"
#include "mule/rng.hpp"

namespace mule {

double distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

void DeploymentSpec::validate() const {
  if (n < 2) throw std::invalid_argument("deployment needs n >= 2");
  if (!(area_side > 0.0) || !std::isfinite(area_side))
    throw std::invalid_argument("area side must be positive");
  if (kind == DeploymentKind::Variable) {
    if (grid_dim < 1) throw std::invalid_argument("grid_dim must be >= 1");
    if (dense_cell_count < 0 || dense_cell_count > grid_dim * grid_dim)
      throw std::invalid_argument("dense_cell_count must lie in [0, grid_dim^2]");
    if (!(density_multiplier >= 1.0)) throw std::invalid_argument("density multiplier must be >= 1");
  }
}

std::vector<Point> place_nodes(const DeploymentSpec& spec, std::uint64_t attempt_seed) {
  Rng rng(attempt_seed);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(spec.n));

  if (spec.kind == DeploymentKind::Uniform) {
    for (int i = 0; i < spec.n; ++i) {
      const double x = rng.uniform() * spec.area_side;
      const double y = rng.uniform() * spec.area_side;
      pts.push_back({x, y});
    }
    return pts;
  }

  const int cells = spec.grid_dim * spec.grid_dim;
  const double cell_side = spec.area_side / spec.grid_dim;

  // Partial Fisher-Yates: the first dense_cell_count entries are the dense cells.
  std::vector<int> order(static_cast<std::size_t>(cells));
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i < spec.dense_cell_count; ++i) {
    const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(cells - i)));
    std::swap(order[i], order[j]);
  }
  std::vector<double> weight(static_cast<std::size_t>(cells), 1.0);
  for (int i = 0; i < spec.dense_cell_count; ++i) weight[order[i]] = spec.density_multiplier;
  const double total = std::accumulate(weight.begin(), weight.end(), 0.0);

  for (int i = 0; i < spec.n; ++i) {
    double u = rng.uniform() * total;
    int cell = cells - 1;
    for (int c = 0; c < cells; ++c) {
      if (u < weight[c]) {
        cell = c;
        break;
      }
      u -= weight[c];
    }
    const int cx = cell % spec.grid_dim;
    const int cy = cell / spec.grid_dim;
    const double x = (cx + rng.uniform()) * cell_side;
    const double y = (cy + rng.uniform()) * cell_side;
    pts.push_back({x, y});
  }
  return pts;
}

NodeId central_node(const std::vector<Point>& positions, double area_side) {
  const Point center{area_side / 2.0, area_side / 2.0};
  NodeId best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const double d = distance(positions[i], center);
    if (d < best_d) {
      best_d = d;
      best = static_cast<NodeId>(i);
    }
  }
  return best;
}

Topology generate(const DeploymentSpec& spec, double comm_range) {
  spec.validate();
  if (!(comm_range > 0.0)) throw std::invalid_argument("communication range must be positive");
  constexpr int kAttempts = 100;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Topology t;
    t.positions = place_nodes(spec, derive_seed(spec.seed, {static_cast<std::uint64_t>(attempt)}));
    t.sink = central_node(t.positions, spec.area_side);
    t.comm_range = comm_range;
    if (is_connected(comm_graph(t))) return t;
  }
  throw ConnectivityFailure("no connected deployment after 100 attempts; communication range " +
                            format_double(comm_range) + " m is too small for this density");
}

Adjacency comm_graph(const Topology& t) {
  const std::size_t n = t.size();
  Adjacency adj(n);
  if (n == 0) return adj;
  const Matrix<double> dist = metric_closure(t, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && dist(i, j) <= t.comm_range) adj[i].push_back(static_cast<NodeId>(j));
    }
  }
  return adj;
}

Matrix<double> metric_closure(const Topology& t, double speed) {
  if (!(speed > 0.0)) throw std::invalid_argument("speed must be positive");
  const std::size_t n = t.size();
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = t.positions[i].x;
    ys[i] = t.positions[i].y;
  }
  Matrix<double> r(n);
  kernels::active().pairwise_travel_times(xs, ys, speed, r.flat());
  return r;
}

bool is_connected(const Adjacency& adj) {
  if (adj.empty()) return true;
  std::vector<char> seen(adj.size(), 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == adj.size();
}

Topology induced(const Topology& t, const std::vector<NodeId>& members, NodeId new_sink) {
  Topology sub;
  sub.comm_range = t.comm_range;
  sub.positions.reserve(members.size());
  for (NodeId g : members) sub.positions.push_back(t.positions[g]);
  sub.sink = new_sink;
  return sub;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void save_topology(std::ostream& os, const Topology& t) {
  os << "n " << t.size() << " sink " << t.sink << " range " << format_double(t.comm_range) << '\n';
  for (std::size_t i = 0; i < t.size(); ++i) {
    os << i << ' ' << format_double(t.positions[i].x) << ' ' << format_double(t.positions[i].y)
       << '\n';
  }
}

std::string topology_to_string(const Topology& t) {
  std::ostringstream os;
  save_topology(os, t);
  return os.str();
}

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  const std::string body = line.substr(0, line.find('#'));
  std::istringstream is(body);
  std::vector<std::string> tokens;
  std::string tok;
  while (is >> tok) tokens.push_back(tok);
  return tokens;
}

double parse_real(const std::string& tok, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected a number, got '" + tok + "'");
  if (!std::isfinite(v)) throw ParseError(line, "non-finite value '" + tok + "'");
  return v;
}

long long parse_int(const std::string& tok, std::size_t line) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected an integer, got '" + tok + "'");
  return v;
}

}  // namespace

Topology load_topology(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  long long count = 0;
  Topology t;
  std::vector<char> seen;
  std::size_t filled = 0;

  while (std::getline(is, line)) {
    ++lineno;
    const auto tok = split_tokens(line);
    if (tok.empty()) continue;
    if (!have_header) {
      if (tok.size() != 6 || tok[0] != "n" || tok[2] != "sink" || tok[4] != "range")
        throw ParseError(lineno, "expected header 'n <count> sink <id> range <meters>'");
      count = parse_int(tok[1], lineno);
      if (count < 1) throw ParseError(lineno, "node count must be positive");
      const long long sink = parse_int(tok[3], lineno);
      if (sink < 0 || sink >= count) throw ParseError(lineno, "sink id out of range");
      t.sink = static_cast<NodeId>(sink);
      t.comm_range = parse_real(tok[5], lineno);
      if (!(t.comm_range > 0.0)) throw ParseError(lineno, "range must be positive");
      t.positions.assign(static_cast<std::size_t>(count), Point{});
      seen.assign(static_cast<std::size_t>(count), 0);
      have_header = true;
      continue;
    }
    if (tok.size() != 3) throw ParseError(lineno, "expected '<id> <x> <y>'");
    const long long id = parse_int(tok[0], lineno);
    if (id < 0 || id >= count) throw ParseError(lineno, "node id out of range");
    if (seen[id]) throw ParseError(lineno, "duplicate node id " + tok[0]);
    seen[id] = 1;
    t.positions[id] = {parse_real(tok[1], lineno), parse_real(tok[2], lineno)};
    ++filled;
  }
  if (!have_header) throw ParseError(lineno + 1, "missing header");
  if (filled != static_cast<std::size_t>(count))
    throw ParseError(lineno + 1, "expected " + std::to_string(count) + " nodes, found " +
                                     std::to_string(filled));
  return t;
}

Topology topology_from_string(const std::string& text) {
  std::istringstream is(text);
  return load_topology(is);
}

}  // namespace mule
