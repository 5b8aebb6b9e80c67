#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mule/common.hpp"

namespace mule {

enum class MatchingMode { None, Exact, Greedy };

const char* matching_mode_name(MatchingMode m);

/// Largest odd-vertex set matched exactly inside christofides().
inline constexpr std::size_t kExactMatchingLimit = 16;

using Pairing = std::vector<std::pair<NodeId, NodeId>>;

/// Minimum-weight perfect matching by subset dynamic programming; |vertices| must be even and <= 20.
Pairing exact_matching(std::span<const NodeId> vertices, const Matrix<double>& weights);

/// Repeatedly pairs the globally closest unmatched pair (ties by ids).
Pairing greedy_matching(std::span<const NodeId> vertices, const Matrix<double>& weights);

double pairing_weight(const Pairing& p, const Matrix<double>& weights);

/// Closed tour. `order` starts at the anchor and does not repeat it at the end;
/// the closing edge back to the anchor is implied.
struct Tour {
  std::vector<NodeId> order;
  double length = 0.0;
  MatchingMode matching = MatchingMode::None;
};

/// Sum of travel times between consecutive waypoints, including the closing edge.
double tour_length(std::span<const NodeId> order, const Matrix<double>& metric);

/// Christofides tour over `waypoints` (must contain `anchor`, duplicates ignored).
Tour christofides(const Matrix<double>& metric, std::span<const NodeId> waypoints, NodeId anchor);

}  // namespace mule
