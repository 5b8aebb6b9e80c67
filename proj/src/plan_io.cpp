#include "mule/plan_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace mule {

void write_plans(std::ostream& os, const PlanSet& set) {
  os << "# " << set.plans.size() << " plan block(s)\n";
  for (std::size_t i = 0; i < set.plans.size(); ++i) {
    const Plan& p = set.plans[i];
    os << "plan " << i << " nodes " << set.node_count << " algo " << set.algo << " anchor "
       << p.anchor << " k " << p.achieved_k << " budget " << format_double(set.budget)
       << " length " << format_double(p.tour.length) << " matching "
       << matching_mode_name(p.tour.matching) << '\n';
    os << "cps " << p.caching_points.size();
    for (NodeId c : p.caching_points) os << ' ' << c;
    os << "\ntour " << p.tour.order.size();
    for (NodeId v : p.tour.order) os << ' ' << v;
    std::vector<NodeId> routed;
    for (NodeId v : p.scope) {
      if (p.forest.parent[v] != kNoNode) routed.push_back(v);
    }
    os << "\nroutes " << routed.size() << '\n';
    for (NodeId v : routed) {
      os << v << ' ' << p.forest.parent[v] << ' ' << p.forest.cp[v] << ' ' << p.forest.depth[v]
         << '\n';
    }
    os << "end\n";
  }
}

std::string plans_to_string(const PlanSet& set) {
  std::ostringstream os;
  write_plans(os, set);
  return os.str();
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& is) : is_(is) {}

  // Next non-empty line, tokenized; false at end of input.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(is_, line)) {
      ++line_;
      line = line.substr(0, line.find('#'));
      std::istringstream ls(line);
      tokens.clear();
      std::string t;
      while (ls >> t) tokens.push_back(t);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  void expect(std::vector<std::string>& tokens, const std::string& what) {
    if (!next(tokens)) fail("unexpected end of file, expected " + what);
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

  long long integer(const std::string& tok) const {
    long long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size()) fail("expected an integer, got '" + tok + "'");
    return v;
  }

  double real(const std::string& tok) const {
    double v = 0.0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size() || !std::isfinite(v))
      fail("expected a finite number, got '" + tok + "'");
    return v;
  }

  NodeId node(const std::string& tok, std::size_t n) const {
    const long long v = integer(tok);
    if (v < 0 || static_cast<std::size_t>(v) >= n) fail("node id " + tok + " out of range");
    return static_cast<NodeId>(v);
  }

 private:
  std::istream& is_;
  std::size_t line_ = 0;
};

std::vector<NodeId> id_list(LineReader& r, const std::vector<std::string>& tok,
                            const std::string& key, std::size_t n) {
  if (tok.size() < 2 || tok[0] != key) r.fail("expected '" + key + " <count> <ids...>'");
  const long long count = r.integer(tok[1]);
  if (count < 0 || static_cast<std::size_t>(count) != tok.size() - 2)
    r.fail("'" + key + "' count does not match the listed ids");
  std::vector<NodeId> ids;
  for (std::size_t i = 2; i < tok.size(); ++i) ids.push_back(r.node(tok[i], n));
  return ids;
}

MatchingMode parse_mode(LineReader& r, const std::string& s) {
  if (s == "none") return MatchingMode::None;
  if (s == "exact") return MatchingMode::Exact;
  if (s == "greedy") return MatchingMode::Greedy;
  r.fail("unknown matching mode '" + s + "'");
}

}  // namespace

PlanSet read_plans(std::istream& is) {
  LineReader r(is);
  PlanSet set;
  std::vector<std::string> tok;
  while (r.next(tok)) {
    if (tok.size() != 16 || tok[0] != "plan" || tok[2] != "nodes" || tok[4] != "algo" ||
        tok[6] != "anchor" || tok[8] != "k" || tok[10] != "budget" || tok[12] != "length" ||
        tok[14] != "matching")
      r.fail("malformed plan header");
    if (static_cast<std::size_t>(r.integer(tok[1])) != set.plans.size())
      r.fail("plan blocks must be numbered consecutively from 0");
    const long long n_raw = r.integer(tok[3]);
    if (n_raw < 1) r.fail("node count must be positive");
    const auto n = static_cast<std::size_t>(n_raw);
    if (set.plans.empty()) {
      set.node_count = n;
      set.algo = tok[5];
      set.budget = r.real(tok[11]);
    } else if (n != set.node_count || tok[5] != set.algo) {
      r.fail("plan blocks disagree on node count or algorithm");
    }

    Plan p;
    p.anchor = r.node(tok[7], n);
    p.achieved_k = static_cast<int>(r.integer(tok[9]));
    p.tour.length = r.real(tok[13]);
    p.tour.matching = parse_mode(r, tok[15]);
    p.forest.parent.assign(n, kNoNode);
    p.forest.cp.assign(n, kNoNode);
    p.forest.depth.assign(n, -1);

    r.expect(tok, "cps");
    p.caching_points = id_list(r, tok, "cps", n);
    r.expect(tok, "tour");
    p.tour.order = id_list(r, tok, "tour", n);
    r.expect(tok, "routes");
    if (tok.size() != 2 || tok[0] != "routes") r.fail("expected 'routes <count>'");
    const long long rows = r.integer(tok[1]);
    if (rows < 0) r.fail("negative route count");

    std::vector<char> seen(n, 0);
    for (NodeId c : p.caching_points) {
      if (seen[c]) r.fail("caching point listed twice");
      seen[c] = 1;
      p.forest.cp[c] = c;
      p.forest.depth[c] = 0;
      p.scope.push_back(c);
    }
    for (long long i = 0; i < rows; ++i) {
      r.expect(tok, "a route row");
      if (tok.size() != 4) r.fail("expected '<child> <parent> <cp> <depth>'");
      const NodeId child = r.node(tok[0], n);
      if (seen[child]) r.fail("node " + tok[0] + " appears twice");
      seen[child] = 1;
      p.forest.parent[child] = r.node(tok[1], n);
      p.forest.cp[child] = r.node(tok[2], n);
      p.forest.depth[child] = static_cast<int>(r.integer(tok[3]));
      p.scope.push_back(child);
    }
    r.expect(tok, "end");
    if (tok.size() != 1 || tok[0] != "end") r.fail("expected 'end'");
    std::sort(p.scope.begin(), p.scope.end());
    set.plans.push_back(std::move(p));
  }
  if (set.plans.empty()) r.fail("no plan blocks found");
  return set;
}

PlanSet plans_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_plans(is);
}

}  // namespace mule
