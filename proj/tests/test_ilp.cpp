#include <doctest.h>

#include "mule/ilp.hpp"
#include "test_util.hpp"

using namespace mule;

namespace {

Topology triangle() {
  return testutil::make_topology({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}}, 1.0 + 1e-9);
}

}  // namespace

TEST_CASE("two-node model tallies") {
  const Network net = Network::build(testutil::path_topology(2), 1.0);
  const IlpInstance inst = make_ilp_instance(net, 5.0, 1);
  const std::string lp = export_lp(inst);
  const LpSummary s = read_lp(lp);
  CHECK(s.binaries == 4);   // y_0_1, y_1_0, x_0_1, x_1_0
  CHECK(s.generals == 2);   // z_0, z_1
  CHECK(s.bounded == 2);
  CHECK(s.objective_terms == 4);
  CHECK(s.rows_by_family.at("c2") == 2);
  CHECK(s.rows_by_family.at("c3") == 1);
  CHECK(s.rows_by_family.at("c4") == 1);
  CHECK(s.rows_by_family.at("c5") == 1);
  CHECK(s.rows_by_family.at("c6") == 4);
  CHECK(s.rows_by_family.at("c7") == 2);
  CHECK(s.rows_by_family.at("c8") == 1);
  CHECK(s.rows_by_family.at("c9") == 4);
  CHECK(s.constraint_count == 16);
  CHECK(lp.find("y_0_1") != std::string::npos);
  CHECK(lp.find("x_1_0") != std::string::npos);
  CHECK(lp.find("z_1") != std::string::npos);
}

TEST_CASE("row families scale with n") {
  Rng rng(3);
  for (int n : {3, 5, 8}) {
    const Network net = Network::build(testutil::random_connected(rng, n, 50.0, 40.0), 1.0);
    const LpSummary s = read_lp(export_lp(make_ilp_instance(net, 100.0, 2)));
    const auto nn = static_cast<std::size_t>(n);
    CHECK(s.rows_by_family.at("c2") == nn);
    CHECK(s.rows_by_family.at("c6") == nn * nn);
    CHECK(s.rows_by_family.at("c7") == nn);
    CHECK(s.rows_by_family.at("c8") == (nn - 1) * (nn - 1));
    CHECK(s.rows_by_family.at("c9") == nn * nn);
    CHECK(s.binaries == 2 * nn * (nn - 1));
    CHECK(s.generals == nn);
  }
}

TEST_CASE("objective weight must exceed every travel time") {
  const Network net = Network::build(testutil::path_topology(3), 1.0);
  CHECK_THROWS_AS(make_ilp_instance(net, 1.0, 1, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(make_ilp_instance(net, 1.0, 1, 1.5), std::invalid_argument);
  CHECK(make_ilp_instance(net, 1.0, 1, 2.5).big_m == 2.5);
  CHECK(make_ilp_instance(net, 1.0, 1).big_m > 2.0);
}

TEST_CASE("strict reader rejects malformed models") {
  const Network net = Network::build(testutil::path_topology(2), 1.0);
  const std::string lp = export_lp(make_ilp_instance(net, 5.0, 1));
  CHECK_NOTHROW(read_lp(lp));
  std::string undeclared = lp;
  undeclared.replace(undeclared.find("c5:"), 3, "c5: 1 w_9 +");
  CHECK_THROWS_AS(read_lp(undeclared), ParseError);
  CHECK_THROWS_AS(read_lp(lp.substr(0, lp.find("End"))), ParseError);
  CHECK_THROWS_AS(read_lp("Minimize\n obj: 1 y_0_1\nSubject To\n c1: 1 y_0_1 <=\nEnd\n"), ParseError);
}

TEST_CASE("triangle oracle examples") {
  const Network net = Network::build(triangle(), 1.0);
  REQUIRE(net.adj[0].size() == 2);

  const OracleSolution full = brute_oracle(make_ilp_instance(net, 3.0 + 1e-9, 1));
  CHECK(full.assignment_hops == 0);
  CHECK(full.travel == doctest::Approx(3.0));
  CHECK(full.tour.size() == 3);

  const OracleSolution two = brute_oracle(make_ilp_instance(net, 2.0 + 1e-9, 1));
  CHECK(two.assignment_hops == 1);
  CHECK(two.travel == doctest::Approx(2.0));
  CHECK(two.tour.size() == 2);
  CHECK(two.tour.front() == 0);
}

TEST_CASE("zero budget leaves the sink alone on the tour") {
  const Network net = Network::build(testutil::path_topology(4), 1.0);
  const OracleSolution s = brute_oracle(make_ilp_instance(net, 0.0, 3));
  CHECK(s.tour == std::vector<NodeId>{0});
  CHECK(s.assignment_hops == 1 + 2 + 3);
  CHECK(s.travel == 0.0);
  CHECK_THROWS_AS(brute_oracle(make_ilp_instance(net, 0.0, 2)), Infeasible);
}

TEST_CASE("oracle objective is invariant under relabelling") {
  Rng rng(41);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(4));
    const Topology t = testutil::random_connected(rng, n, 60.0, 35.0);
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    Topology shuffled = t;
    for (int v = 0; v < n; ++v) shuffled.positions[perm[v]] = t.positions[v];
    shuffled.sink = perm[t.sink];
    const double L = 60.0;
    const int k = 2;
    try {
      const auto a = brute_oracle(make_ilp_instance(Network::build(t, 1.0), L, k));
      const auto b = brute_oracle(make_ilp_instance(Network::build(shuffled, 1.0), L, k));
      CHECK(a.assignment_hops == b.assignment_hops);
      CHECK(a.travel == doctest::Approx(b.travel));
    } catch (const Infeasible&) {
      CHECK_THROWS_AS(brute_oracle(make_ilp_instance(Network::build(shuffled, 1.0), L, k)), Infeasible);
    }
  }
}

TEST_CASE("oracle refuses large instances and its plans validate") {
  const Network big = Network::build(testutil::path_topology(10), 1.0);
  CHECK_THROWS_AS(brute_oracle(make_ilp_instance(big, 5.0, 9)), std::invalid_argument);

  const Network net = Network::build(testutil::path_topology(6), 1.0);
  const OracleSolution s = brute_oracle(make_ilp_instance(net, 6.0, 2));
  const Plan p = oracle_plan(s, net, 2);
  CHECK(validate_plan(p, net, 6.0).empty());
  CHECK(assignment_hops(p, net.hops) == s.assignment_hops);
}
