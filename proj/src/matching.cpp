#include <algorithm>
#include <limits>
#include <tuple>

#include "mule/tsp.hpp"

namespace mule {

const char* matching_mode_name(MatchingMode m) {
  switch (m) {
    case MatchingMode::None:
      return "none";
    case MatchingMode::Exact:
      return "exact";
    case MatchingMode::Greedy:
      return "greedy";
  }
  return "unknown";
}

Pairing exact_matching(std::span<const NodeId> vertices, const Matrix<double>& weights) {
  const std::size_t m = vertices.size();
  if (m % 2 != 0) throw std::invalid_argument("perfect matching needs an even vertex count");
  if (m > 20) throw std::invalid_argument("exact matching is limited to 20 vertices");
  if (m == 0) return {};

  const std::uint32_t full = (1u << m) - 1;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // best[mask]: cheapest way to match every vertex whose bit is set in mask.
  std::vector<double> best(std::size_t{1} << m, kInf);
  std::vector<std::uint8_t> partner(std::size_t{1} << m, 0);
  best[0] = 0.0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (__builtin_popcount(mask) % 2 != 0) continue;
    const int i = __builtin_ctz(mask);
    const std::uint32_t rest = mask & ~(1u << i);
    for (std::uint32_t bits = rest; bits != 0; bits &= bits - 1) {
      const int j = __builtin_ctz(bits);
      const double c = best[rest & ~(1u << j)] + weights(vertices[i], vertices[j]);
      if (c < best[mask]) {
        best[mask] = c;
        partner[mask] = static_cast<std::uint8_t>(j);
      }
    }
  }

  Pairing out;
  for (std::uint32_t mask = full; mask != 0;) {
    const int i = __builtin_ctz(mask);
    const int j = partner[mask];
    out.emplace_back(vertices[i], vertices[j]);
    mask &= ~((1u << i) | (1u << j));
  }
  return out;
}

Pairing greedy_matching(std::span<const NodeId> vertices, const Matrix<double>& weights) {
  if (vertices.size() % 2 != 0)
    throw std::invalid_argument("perfect matching needs an even vertex count");
  struct Cand {
    double w;
    NodeId a, b;
  };
  std::vector<Cand> cands;
  cands.reserve(vertices.size() * vertices.size() / 2);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      NodeId a = vertices[i], b = vertices[j];
      if (a > b) std::swap(a, b);
      cands.push_back({weights(a, b), a, b});
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
    return std::tie(x.w, x.a, x.b) < std::tie(y.w, y.a, y.b);
  });
  std::vector<char> used(weights.size(), 0);
  Pairing out;
  for (const auto& c : cands) {
    if (out.size() * 2 == vertices.size()) break;
    if (used[c.a] || used[c.b]) continue;
    used[c.a] = used[c.b] = 1;
    out.emplace_back(c.a, c.b);
  }
  return out;
}

double pairing_weight(const Pairing& p, const Matrix<double>& weights) {
  double w = 0.0;
  for (auto [a, b] : p) w += weights(a, b);
  return w;
}

}  // namespace mule
