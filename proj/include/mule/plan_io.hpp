#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mule/planner.hpp"

namespace mule {

/// Plans written by one `plan` invocation: a single block for gp/tp/rdvt,
/// one block per partition for multi-element runs.
struct PlanSet {
  std::string algo;
  double budget = 0.0;
  std::size_t node_count = 0;
  std::vector<Plan> plans;
};

// Text layout, one block per plan:
//
//   plan <index> nodes <n> algo <name> anchor <id> k <k> budget <L> length <T> matching <mode>
//   cps <count> <id>...
//   tour <count> <id>...
//   routes <count>
//   <child> <parent> <cp> <depth>      (one row per non-caching-point node)
//   end
//
// '#' starts a comment. Real numbers use the shortest round-trip form.
void write_plans(std::ostream& os, const PlanSet& set);
std::string plans_to_string(const PlanSet& set);

/// Throws ParseError with the offending line.
PlanSet read_plans(std::istream& is);
PlanSet plans_from_string(const std::string& text);

}  // namespace mule
