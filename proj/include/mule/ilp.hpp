#pragma once

#include <map>
#include <string>
#include <vector>

#include "mule/planner.hpp"

namespace mule {

/// Parameters of the exact tour/assignment model.
///
/// Variables: y_i_j (tour edge i->j), x_i_j (non-tour node i stores its data
/// at tour node j), z_i (MTZ order, integer in [0, n-1]).
struct IlpInstance {
  std::size_t n = 0;
  NodeId sink = 0;
  Matrix<double> travel;  // r, seconds
  HopMatrix hops;         // d
  double budget = 0.0;    // L
  int k = 1;
  double big_m = 0.0;     // weight of the assignment term, > max r
};

/// Throws std::invalid_argument when big_m <= max r. A non-positive big_m
/// selects max r + 1.
IlpInstance make_ilp_instance(const Network& net, double budget, int k, double big_m = 0.0);

/// CPLEX-LP text of the model. Rows are named c<eq>_<indices> after the
/// constraint family they belong to (c2 flow balance ... c9 depth bound).
std::string export_lp(const IlpInstance& inst);

/// Section and row tally of an LP file, produced by a strict reader.
struct LpSummary {
  std::size_t objective_terms = 0;
  std::map<std::string, std::size_t> rows_by_family;  // "c2" -> count
  std::size_t constraint_count = 0;
  std::size_t binaries = 0;
  std::size_t generals = 0;
  std::size_t bounded = 0;
};

/// Re-reads LP text; throws ParseError on malformed rows or undeclared variables.
LpSummary read_lp(const std::string& text);

struct OracleSolution {
  std::vector<NodeId> tour;        // starts at the sink
  std::vector<NodeId> assignment;  // tour node each node reports to (itself when on tour)
  long long assignment_hops = 0;
  double travel = 0.0;
};

inline constexpr std::size_t kOracleMaxNodes = 9;

/// Exhaustive optimum: minimises (assignment hops, travel time)
/// lexicographically over every sink-containing subset and tour order.
/// Throws Infeasible when no subset fits (L, k); std::invalid_argument when n > 9.
OracleSolution brute_oracle(const IlpInstance& inst);

/// Turns an oracle solution into a Plan routed with BFS forests.
Plan oracle_plan(const OracleSolution& sol, const Network& net, int k);

}  // namespace mule
