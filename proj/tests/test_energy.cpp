#include <doctest.h>

#include "mule/energy.hpp"
#include "mule/rdvt.hpp"
#include "test_util.hpp"

using namespace mule;

namespace {

// Plan where every node in `parent` (kNoNode marks a CP) is in scope.
Plan forest_plan(const std::vector<NodeId>& parent) {
  Plan p;
  const std::size_t n = parent.size();
  p.forest.parent = parent;
  p.forest.cp.assign(n, kNoNode);
  p.forest.depth.assign(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    p.scope.push_back(static_cast<NodeId>(v));
    if (parent[v] == kNoNode) {
      p.caching_points.push_back(static_cast<NodeId>(v));
      p.forest.cp[v] = static_cast<NodeId>(v);
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    NodeId u = static_cast<NodeId>(v);
    while (parent[u] != kNoNode) u = parent[u];
    p.forest.cp[v] = u;
  }
  recompute_depths(p.forest, p.scope);
  p.anchor = p.caching_points.front();
  p.tour.order = p.caching_points;
  return p;
}

// Random forest: node v > 0 picks a parent among lower ids or becomes a CP.
Plan random_forest_plan(Rng& rng, int n) {
  std::vector<NodeId> parent(n, kNoNode);
  for (int v = 1; v < n; ++v)
    if (rng.uniform() < 0.8) parent[v] = static_cast<NodeId>(rng.below(v));
  return forest_plan(parent);
}

}  // namespace

TEST_CASE("per-packet energy from the MICAz defaults") {
  const PacketEnergy e = per_packet_energy(RadioParams{});
  CHECK(e.tx == doctest::Approx(6.72e-5).epsilon(1e-12));
  CHECK(e.rx == doctest::Approx(4.8e-5).epsilon(1e-12));
  RadioParams sym;
  sym.rx_power = sym.tx_power;
  CHECK(per_packet_energy(sym).tx == per_packet_energy(sym).rx);
  RadioParams big;
  big.packet_bytes = 200.0;
  CHECK(per_packet_energy(big).tx == doctest::Approx(2.0 * e.tx));
  CHECK(per_packet_energy(big).rx == doctest::Approx(2.0 * e.rx));
}

TEST_CASE("hand-derived lifetimes") {
  const Plan single = forest_plan({kNoNode});
  const SimReport s = lifetime(single, RadioParams{});
  CHECK(s.lifetime_rounds == 148'809);
  CHECK(s.first_dead == 0);
  CHECK(s.per_node[0].energy_per_round == doctest::Approx(6.72e-5));

  const Plan chain = forest_plan({kNoNode, 0});
  const SimReport c = lifetime(chain, RadioParams{});
  CHECK(c.lifetime_rounds == 54'824);
  CHECK(c.first_dead == 0);
  CHECK(c.per_node[0].subtree_size == 2);
  CHECK(c.per_node[0].energy_per_round == doctest::Approx(1.824e-4));
  CHECK(c.per_node[1].rounds_survivable == 148'809);

  CHECK(simulate_rounds(chain, RadioParams{}, 1'000'000) == c);
  CHECK(simulate_rounds(single, RadioParams{}, 1'000'000) == s);
}

TEST_CASE("the planners produce the hand-derived lifetimes too") {
  const Topology one = testutil::make_topology({{0, 0}}, 10.0);
  PlanConfig pc;
  CHECK(lifetime(gp_plan(one, pc), RadioParams{}).lifetime_rounds == 148'809);
  CHECK(lifetime(rdvt_plan(testutil::path_topology(2), pc), RadioParams{}).lifetime_rounds == 54'824);
}

TEST_CASE("round simulation truncation and empty batteries") {
  const Plan chain = forest_plan({kNoNode, 0});
  const SimReport one = simulate_rounds(chain, RadioParams{}, 1);
  CHECK(one.truncated);
  CHECK(one.lifetime_rounds >= 1);
  RadioParams flat;
  flat.battery = 0.0;
  CHECK(lifetime(chain, flat).lifetime_rounds == 0);
  CHECK(simulate_rounds(chain, flat, 10).lifetime_rounds == 0);
  CHECK_FALSE(simulate_rounds(chain, flat, 10).truncated);
}

TEST_CASE("simulation matches the closed form on random forests") {
  Rng rng(1234);
  for (int trial = 0; trial < 40; ++trial) {
    const Plan p = random_forest_plan(rng, 2 + static_cast<int>(rng.below(30)));
    RadioParams r;
    r.battery = 0.01 + rng.uniform() * 0.5;
    const SimReport closed = lifetime(p, r);
    CHECK(simulate_rounds(p, r, 1'000'000'000) == closed);
  }
}

TEST_CASE("subtree sizes sum to total depth plus one per node") {
  Rng rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    const Plan p = random_forest_plan(rng, 3 + static_cast<int>(rng.below(40)));
    const auto sizes = subtree_sizes(p);
    long long lhs = 0, rhs = 0;
    for (NodeId v : p.scope) {
      lhs += sizes[v];
      rhs += p.forest.depth[v] + 1;
    }
    CHECK(lhs == rhs);
  }
}

TEST_CASE("adding a leaf never extends the lifetime") {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(20));
    std::vector<NodeId> parent(n, kNoNode);
    for (int v = 1; v < n; ++v) parent[v] = static_cast<NodeId>(rng.below(v));
    const auto before = lifetime(forest_plan(parent), RadioParams{}).lifetime_rounds;
    parent.push_back(static_cast<NodeId>(rng.below(n)));
    const auto after = lifetime(forest_plan(parent), RadioParams{}).lifetime_rounds;
    CHECK(after <= before);
  }
}

TEST_CASE("multi-partition lifetime is the earliest death") {
  const Plan a = forest_plan({kNoNode});
  const Plan b = forest_plan({kNoNode, 0});
  const std::vector<Plan> both{a, b};
  CHECK(lifetime(both, RadioParams{}).lifetime_rounds == 54'824);
}

TEST_CASE("tour budget") {
  const Topology line = testutil::path_topology(3);
  CHECK(tour_budget(line, {1.0, 0.15}) == doctest::Approx(0.3));
  CHECK(tour_budget(line, {1.0, 1.0}) == doctest::Approx(2.0));
  CHECK(tour_budget(line, {2.0, 0.15}) == doctest::Approx(0.15));
  CHECK_THROWS_AS(tour_budget(line, {0.0, 0.15}), std::invalid_argument);
  CHECK_THROWS_AS(tour_budget(line, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("radio validation") {
  RadioParams r;
  r.bandwidth = 0.0;
  CHECK_THROWS_AS(r.validate(), std::invalid_argument);
  CHECK(to_femtojoules(6.72e-5) == 67'200'000'000LL);
}
