#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mule/planner.hpp"

namespace mule {

/// MICAz-class radio defaults.
struct RadioParams {
  double bandwidth = 250'000.0;  // bits/s
  double tx_power = 0.021;       // W
  double rx_power = 0.015;       // W
  double battery = 10.0;         // J
  double packet_bytes = 100.0;

  void validate() const;
};

struct MobilityParams {
  double speed = 1.0;             // m/s
  double budget_fraction = 0.15;  // share of the MST length the tour may take
};

struct PacketEnergy {
  double tx = 0.0;  // J per packet sent
  double rx = 0.0;  // J per packet received
};

PacketEnergy per_packet_energy(const RadioParams& r);

/// Energy is accounted in integer femtojoules so that the closed form and the
/// round-by-round simulation agree exactly.
std::int64_t to_femtojoules(double joules);

struct NodeEnergy {
  NodeId node = kNoNode;
  int subtree_size = 0;
  double energy_per_round = 0.0;  // J
  std::int64_t rounds_survivable = 0;
  bool operator==(const NodeEnergy&) const = default;
};

struct SimReport {
  std::int64_t lifetime_rounds = 0;
  NodeId first_dead = kNoNode;
  std::vector<NodeEnergy> per_node;  // in ascending node order
  bool truncated = false;            // simulation hit max_rounds with every node alive
  bool operator==(const SimReport&) const = default;
};

/// 1 + descendants along parent pointers, indexed by global id (0 outside scope).
std::vector<int> subtree_sizes(const Plan& plan);

/// Closed-form first-node-death lifetime.
SimReport lifetime(const Plan& plan, const RadioParams& radio);
/// Lifetime of several independent partitions: the earliest death wins.
SimReport lifetime(std::span<const Plan> plans, const RadioParams& radio);

/// Explicit per-round energy bookkeeping, leaf to root, stopping at the first
/// node that cannot pay for its round.
SimReport simulate_rounds(const Plan& plan, const RadioParams& radio, std::int64_t max_rounds);

/// L = fraction * T_L / speed, where T_L is the Euclidean MST length of the communication graph.
double tour_budget(const Topology& t, const MobilityParams& m);

}  // namespace mule
