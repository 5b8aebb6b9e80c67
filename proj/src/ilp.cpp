#include "mule/ilp.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace mule {

IlpInstance make_ilp_instance(const Network& net, double budget, int k, double big_m) {
  IlpInstance inst;
  inst.n = net.size();
  inst.sink = net.topology.sink;
  inst.travel = net.metric;
  inst.hops = net.hops;
  inst.budget = budget;
  inst.k = k;
  double max_r = 0.0;
  for (double r : net.metric.flat()) max_r = std::max(max_r, r);
  if (big_m <= 0.0) big_m = max_r + 1.0;
  if (!(big_m > max_r))
    throw std::invalid_argument("assignment weight must exceed the largest travel time " +
                                format_double(max_r));
  inst.big_m = big_m;
  return inst;
}

namespace {

std::string var(char kind, std::size_t i, std::size_t j) {
  return std::string(1, kind) + "_" + std::to_string(i) + "_" + std::to_string(j);
}
std::string zvar(std::size_t i) { return "z_" + std::to_string(i); }

// Accumulates one LP row, wrapping long expressions onto continuation lines.
class RowWriter {
 public:
  RowWriter(std::ostringstream& os, const std::string& name) : os_(os) { os_ << ' ' << name << ':'; }

  void term(double coef, const std::string& name) {
    if (terms_ > 0 && terms_ % 8 == 0) os_ << "\n   ";
    os_ << (coef < 0.0 || std::signbit(coef) ? " - " : (terms_ == 0 ? " " : " + "));
    const double mag = std::abs(coef);
    if (mag != 1.0) os_ << format_double(mag) << ' ';
    os_ << name;
    ++terms_;
  }

  void finish(const char* relop, double rhs) {
    os_ << ' ' << relop << ' ' << format_double(rhs) << '\n';
  }

 private:
  std::ostringstream& os_;
  std::size_t terms_ = 0;
};

}  // namespace

std::string export_lp(const IlpInstance& inst) {
  const std::size_t n = inst.n;
  const auto s = static_cast<std::size_t>(inst.sink);
  std::ostringstream os;
  os << "\\ Mobile-element tour with k-hop caching-point assignment\n";
  os << "\\ n = " << n << ", sink = " << s << ", L = " << format_double(inst.budget)
     << ", k = " << inst.k << ", M = " << format_double(inst.big_m) << "\n";

  os << "Minimize\n";
  {
    RowWriter obj(os, "obj");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) obj.term(inst.travel(i, j), var('y', i, j));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) obj.term(inst.big_m * inst.hops(i, j), var('x', i, j));
    os << '\n';
  }

  os << "Subject To\n";
  // Flow balance.
  for (std::size_t j = 0; j < n; ++j) {
    RowWriter row(os, "c2_" + std::to_string(j));
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) row.term(1.0, var('y', i, j));
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) row.term(-1.0, var('y', j, i));
    row.finish("=", 0.0);
  }
  // The tour leaves and re-enters the sink once.
  {
    RowWriter out(os, "c3");
    for (std::size_t i = 0; i < n; ++i)
      if (i != s) out.term(1.0, var('y', s, i));
    out.finish("=", 1.0);
    RowWriter in(os, "c4");
    for (std::size_t i = 0; i < n; ++i)
      if (i != s) in.term(1.0, var('y', i, s));
    in.finish("=", 1.0);
  }
  // Travel budget.
  {
    RowWriter row(os, "c5");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) row.term(inst.travel(i, j), var('y', i, j));
    row.finish("<=", inst.budget);
  }
  // Tour/assignment exclusivity, exported as printed (x_i_i does not exist).
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      RowWriter row(os, "c6_" + std::to_string(i) + "_" + std::to_string(j));
      if (i != j) row.term(1.0, var('x', i, j));
      for (std::size_t l = 0; l < n; ++l)
        if (l != i) row.term(1.0, var('y', i, l));
      row.finish("<=", 1.0);
    }
  }
  // Every node is on the tour or assigned; "> 0" over binaries becomes ">= 1".
  for (std::size_t i = 0; i < n; ++i) {
    RowWriter row(os, "c7_" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) row.term(1.0, var('y', i, j));
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) row.term(1.0, var('x', i, j));
    row.finish(">=", 1.0);
  }
  // MTZ subtour elimination.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || j == s) continue;
      RowWriter row(os, "c8_" + std::to_string(i) + "_" + std::to_string(j));
      row.term(1.0, zvar(i));
      row.term(-1.0, zvar(j));
      row.term(static_cast<double>(n), var('y', i, j));
      row.finish("<=", static_cast<double>(n) - 1.0);
    }
  }
  // Depth bound. Diagonal rows are vacuous and carry a zero coefficient.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      RowWriter row(os, "c9_" + std::to_string(i) + "_" + std::to_string(j));
      if (i == j) {
        row.term(0.0, zvar(i));
      } else {
        row.term(static_cast<double>(inst.hops(i, j)), var('x', i, j));
      }
      row.finish("<=", static_cast<double>(inst.k));
    }
  }

  os << "Bounds\n";
  for (std::size_t i = 0; i < n; ++i)
    os << " 0 <= " << zvar(i) << " <= " << (n == 0 ? 0 : n - 1) << '\n';

  os << "Binaries\n";
  for (char kind : {'y', 'x'}) {
    std::size_t on_line = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        os << ' ' << var(kind, i, j);
        if (++on_line % 10 == 0) os << '\n';
      }
    if (on_line % 10 != 0) os << '\n';
  }

  os << "Generals\n";
  for (std::size_t i = 0; i < n; ++i) os << ' ' << zvar(i);
  os << "\nEnd\n";
  return os.str();
}

namespace {

struct Token {
  std::string text;
  std::size_t line;
};

enum class Section { None, Objective, Constraints, Bounds, Binaries, Generals, End };

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool is_number(const std::string& s) {
  double v;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc{} && p == s.data() + s.size();
}

bool is_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
  });
}

bool is_relop(const std::string& s) {
  return s == "<=" || s == ">=" || s == "=" || s == "<" || s == ">" || s == "=<" || s == "=>";
}

// Parses "[+|-] [coef] var ..." and returns the variables in order.
std::vector<std::string> parse_linear(const std::vector<Token>& toks, std::size_t begin,
                                      std::size_t end) {
  std::vector<std::string> vars;
  std::size_t i = begin;
  bool first = true;
  while (i < end) {
    if (toks[i].text == "+" || toks[i].text == "-") {
      ++i;
    } else if (!first) {
      throw ParseError(toks[i].line, "expected '+' or '-' before '" + toks[i].text + "'");
    }
    if (i < end && is_number(toks[i].text)) ++i;
    if (i >= end || !is_name(toks[i].text))
      throw ParseError(i < end ? toks[i].line : toks[end - 1].line, "expected a variable name");
    vars.push_back(toks[i].text);
    ++i;
    first = false;
  }
  return vars;
}

}  // namespace

LpSummary read_lp(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  Section section = Section::None;
  std::vector<Token> objective, constraints, bounds;
  std::set<std::string> declared, used;
  LpSummary sum;

  auto strip = [](const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return std::string{};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
  };

  while (std::getline(is, line)) {
    ++lineno;
    const auto bs = line.find('\\');
    if (bs != std::string::npos) line = line.substr(0, bs);
    const std::string body = strip(line);
    if (body.empty()) continue;
    const std::string key = lower(body);
    if (key == "minimize" || key == "maximize" || key == "min" || key == "max") {
      section = Section::Objective;
      continue;
    }
    if (key == "subject to" || key == "st" || key == "s.t." || key == "such that") {
      section = Section::Constraints;
      continue;
    }
    if (key == "bounds") {
      section = Section::Bounds;
      continue;
    }
    if (key == "binaries" || key == "binary" || key == "bin") {
      section = Section::Binaries;
      continue;
    }
    if (key == "generals" || key == "general" || key == "gen") {
      section = Section::Generals;
      continue;
    }
    if (key == "end") {
      section = Section::End;
      continue;
    }
    std::istringstream ls(body);
    std::string tok;
    std::vector<Token> toks;
    while (ls >> tok) toks.push_back({tok, lineno});
    switch (section) {
      case Section::None:
        throw ParseError(lineno, "content before the objective section");
      case Section::End:
        throw ParseError(lineno, "content after End");
      case Section::Objective:
        objective.insert(objective.end(), toks.begin(), toks.end());
        break;
      case Section::Constraints:
        constraints.insert(constraints.end(), toks.begin(), toks.end());
        break;
      case Section::Bounds:
        bounds.insert(bounds.end(), toks.begin(), toks.end());
        bounds.push_back({"\n", lineno});
        break;
      case Section::Binaries:
      case Section::Generals:
        for (const auto& t : toks) {
          if (!is_name(t.text)) throw ParseError(t.line, "bad variable name '" + t.text + "'");
          declared.insert(t.text);
          ++(section == Section::Binaries ? sum.binaries : sum.generals);
        }
        break;
    }
  }
  if (section != Section::End) throw ParseError(lineno + 1, "missing End");

  // Objective: optional "name:" then a linear expression.
  std::size_t start = 0;
  if (!objective.empty() && objective[0].text.back() == ':') start = 1;
  const auto objective_vars = parse_linear(objective, start, objective.size());
  sum.objective_terms = objective_vars.size();
  used.insert(objective_vars.begin(), objective_vars.end());

  // Constraints: "name: expr relop rhs", rows delimited by the next name.
  std::size_t i = 0;
  while (i < constraints.size()) {
    const Token& head = constraints[i];
    if (head.text.size() < 2 || head.text.back() != ':')
      throw ParseError(head.line, "expected a row name, got '" + head.text + "'");
    const std::string name = head.text.substr(0, head.text.size() - 1);
    std::size_t j = i + 1;
    while (j < constraints.size() && !is_relop(constraints[j].text)) ++j;
    if (j + 1 >= constraints.size()) throw ParseError(head.line, "row '" + name + "' has no rhs");
    for (const auto& v : parse_linear(constraints, i + 1, j)) used.insert(v);
    std::size_t rhs = j + 1;
    if (constraints[rhs].text == "-" || constraints[rhs].text == "+") ++rhs;
    if (rhs >= constraints.size() || !is_number(constraints[rhs].text))
      throw ParseError(constraints[j].line, "row '" + name + "' needs a numeric right-hand side");
    ++sum.constraint_count;
    ++sum.rows_by_family[name.substr(0, name.find('_'))];
    i = rhs + 1;
  }

  // Bounds: "lo <= v <= hi" or "v relop value", one per line.
  std::vector<Token> cur;
  for (const auto& t : bounds) {
    if (t.text != "\n") {
      cur.push_back(t);
      continue;
    }
    const bool two_sided = cur.size() == 5 && is_number(cur[0].text) && is_relop(cur[1].text) &&
                           is_name(cur[2].text) && is_relop(cur[3].text) && is_number(cur[4].text);
    const bool one_sided =
        cur.size() == 3 && is_name(cur[0].text) && is_relop(cur[1].text) && is_number(cur[2].text);
    if (!two_sided && !one_sided) throw ParseError(t.line, "malformed bound");
    declared.insert(two_sided ? cur[2].text : cur[0].text);
    ++sum.bounded;
    cur.clear();
  }

  for (const auto& v : used) {
    if (!declared.count(v)) throw ParseError(0, "variable '" + v + "' is never declared");
  }
  return sum;
}

OracleSolution brute_oracle(const IlpInstance& inst) {
  const std::size_t n = inst.n;
  if (n > kOracleMaxNodes) throw std::invalid_argument("oracle is limited to 9 nodes");
  const NodeId sink = inst.sink;
  std::vector<NodeId> others;
  for (std::size_t v = 0; v < n; ++v)
    if (static_cast<NodeId>(v) != sink) others.push_back(static_cast<NodeId>(v));

  bool found = false;
  OracleSolution best;
  const std::uint32_t subsets = 1u << others.size();
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    std::vector<NodeId> chosen;
    std::vector<char> on(n, 0);
    on[sink] = 1;
    for (std::size_t b = 0; b < others.size(); ++b) {
      if (mask & (1u << b)) {
        chosen.push_back(others[b]);
        on[others[b]] = 1;
      }
    }

    long long hops = 0;
    bool covered = true;
    for (std::size_t v = 0; v < n && covered; ++v) {
      if (on[v]) continue;
      int nearest = kInfHops;
      for (std::size_t c = 0; c < n; ++c)
        if (on[c]) nearest = std::min(nearest, inst.hops(v, c));
      if (nearest > inst.k) covered = false;
      hops += nearest;
    }
    if (!covered || (found && hops > best.assignment_hops)) continue;

    // Cheapest closed tour over the subset, sink fixed first.
    double tour_best = std::numeric_limits<double>::infinity();
    std::vector<NodeId> order_best;
    std::vector<NodeId> perm = chosen;
    do {
      double len = 0.0;
      NodeId prev = sink;
      for (NodeId v : perm) {
        len += inst.travel(prev, v);
        prev = v;
      }
      len += inst.travel(prev, sink);
      if (len < tour_best) {
        tour_best = len;
        order_best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (chosen.empty()) tour_best = 0.0;
    if (tour_best > inst.budget) continue;

    if (!found || hops < best.assignment_hops ||
        (hops == best.assignment_hops && tour_best < best.travel)) {
      found = true;
      best.assignment_hops = hops;
      best.travel = tour_best;
      best.tour = {sink};
      best.tour.insert(best.tour.end(), order_best.begin(), order_best.end());
    }
  }
  if (!found) throw Infeasible("no sink-containing subset satisfies both L and k");

  // Report the hop-nearest tour node for each node (ties: shorter travel, then id).
  std::vector<char> on(n, 0);
  for (NodeId v : best.tour) on[v] = 1;
  best.assignment.assign(n, kNoNode);
  for (std::size_t v = 0; v < n; ++v) {
    if (on[v]) {
      best.assignment[v] = static_cast<NodeId>(v);
      continue;
    }
    NodeId pick = kNoNode;
    for (NodeId c : best.tour) {
      if (pick == kNoNode) {
        pick = c;
        continue;
      }
      const auto key = [&](NodeId x) { return std::make_tuple(inst.hops(v, x), inst.travel(v, x), x); };
      if (key(c) < key(pick)) pick = c;
    }
    best.assignment[v] = pick;
  }
  return best;
}

Plan oracle_plan(const OracleSolution& sol, const Network& net, int k) {
  Plan plan;
  plan.anchor = net.topology.sink;
  plan.scope.resize(net.size());
  for (std::size_t v = 0; v < net.size(); ++v) plan.scope[v] = static_cast<NodeId>(v);
  plan.caching_points = sol.tour;
  plan.tour.order = sol.tour;
  plan.tour.length = tour_length(sol.tour, net.metric);
  plan.forest = build_routing(net.adj, net.hops, net.topology.positions, sol.tour, k);
  plan.achieved_k = k;
  return plan;
}

}  // namespace mule
