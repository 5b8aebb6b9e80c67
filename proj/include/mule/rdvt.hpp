#pragma once

#include "mule/planner.hpp"

namespace mule {

/// RD-VT baseline: walk the Steiner tree in pre-order (cheapest child edge
/// first), growing the visited set while its Christofides tour fits the
/// budget. Remaining nodes route to the hop-nearest visited node, so the
/// depth is unbounded; achieved_k records the deepest route.
Plan rdvt_plan(const Network& net, const PlanConfig& config);
Plan rdvt_plan(const Topology& t, const PlanConfig& config);

/// Pre-order of `tree` from its root, children by (edge weight, id).
std::vector<NodeId> preorder(const Tree& tree);

}  // namespace mule
