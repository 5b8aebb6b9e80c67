// Command-line front end: generate deployments, plan tours, simulate
// lifetimes, run batch experiments and export the exact model.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mule/energy.hpp"
#include "mule/experiment.hpp"
#include "mule/ilp.hpp"
#include "mule/multi.hpp"
#include "mule/plan_io.hpp"
#include "mule/rdvt.hpp"

namespace {

constexpr int kExitConnectivity = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitBadPlan = 4;
constexpr int kExitOracleTooLarge = 5;
constexpr int kExitViolations = 6;
constexpr int kExitInput = 7;

// Explicit path wins; otherwise MULE_OUT_DIR/<fallback>; otherwise stdout.
std::string resolve_output(const std::string& given, const std::string& fallback) {
  if (!given.empty()) return given;
  if (const char* dir = std::getenv("MULE_OUT_DIR"); dir != nullptr && *dir != '\0')
    return (std::filesystem::path(dir) / fallback).string();
  return "-";
}

void emit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << text;
}

mule::Topology read_topology_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  return mule::load_topology(is);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_budget(const std::string& text, const mule::Topology& t, const mule::MobilityParams& m) {
  if (text == "auto") return mule::tour_budget(t, m);
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size() || !(v >= 0.0)) throw std::invalid_argument("--L must be 'auto' or seconds >= 0");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mobile-element tour planning for wireless sensor networks"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a random deployment");
  std::string kind = "uniform";
  int gen_n = 100;
  std::uint64_t gen_seed = 1;
  double area = 500.0, range = 100.0, density = 5.0;
  int grid = 10, dense_cells = 30;
  std::string gen_out;
  gen->add_option("--kind", kind, "uniform or variable")->check(CLI::IsMember({"uniform", "variable"}));
  gen->add_option("--n", gen_n, "Node count")->check(CLI::Range(2, 1'000'000));
  gen->add_option("--seed", gen_seed, "Root seed");
  gen->add_option("--area", area, "Side of the square area, meters");
  gen->add_option("--range", range, "Communication range, meters");
  gen->add_option("--grid", grid, "Cells per side (variable)");
  gen->add_option("--dense-cells", dense_cells, "Dense cell count (variable)");
  gen->add_option("--x", density, "Density multiplier of dense cells (variable)");
  gen->add_option("--out", gen_out, "Output topology file (default: stdout or $MULE_OUT_DIR)");

  // plan
  auto* plan = app.add_subcommand("plan", "Plan caching points, tour and routing");
  std::string topo_path, algo = "gp", budget_text = "auto", plan_out, routing = "bfs";
  int k_max = 0, elements = 3;
  double speed = 1.0, fraction = 0.15;
  std::uint64_t plan_seed = 1;
  plan->add_option("--topology", topo_path, "Topology file")->required();
  plan->add_option("--algo", algo, "gp, tp, rdvt, mp or rdvt-mp")
      ->check(CLI::IsMember({"gp", "tp", "rdvt", "mp", "rdvt-mp"}));
  plan->add_option("--L", budget_text, "Tour budget in seconds, or 'auto'");
  plan->add_option("--k-max", k_max, "Cap on the hop bound (0 = node count)");
  plan->add_option("--m", elements, "Mobile elements (mp, rdvt-mp)")->check(CLI::PositiveNumber);
  plan->add_option("--speed", speed, "Mobile element speed, m/s")->check(CLI::PositiveNumber);
  plan->add_option("--fraction", fraction, "Budget fraction used by --L auto");
  plan->add_option("--routing", routing, "bfs or mst")->check(CLI::IsMember({"bfs", "mst"}));
  plan->add_option("--seed", plan_seed, "Clustering seed (mp, rdvt-mp)");
  plan->add_option("--out", plan_out, "Output plan file");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Compute network lifetime of a plan file");
  std::string sim_plan;
  mule::RadioParams radio;
  std::int64_t max_rounds = 0;
  bool per_node = false;
  sim->add_option("--plan", sim_plan, "Plan file")->required();
  sim->add_option("--bandwidth", radio.bandwidth, "bits/s");
  sim->add_option("--tx-power", radio.tx_power, "W");
  sim->add_option("--rx-power", radio.rx_power, "W");
  sim->add_option("--battery", radio.battery, "J");
  sim->add_option("--packet-bytes", radio.packet_bytes, "bytes");
  sim->add_option("--max-rounds", max_rounds, "Run the explicit round simulation up to this many rounds");
  sim->add_flag("--per-node", per_node, "Print the per-node table");

  // validate
  auto* val = app.add_subcommand("validate", "Check a plan file against its topology");
  std::string val_topo, val_plan;
  double val_speed = 1.0;
  val->add_option("--topology", val_topo, "Topology file")->required();
  val->add_option("--plan", val_plan, "Plan file")->required();
  val->add_option("--speed", val_speed, "Mobile element speed, m/s")->check(CLI::PositiveNumber);

  // experiment
  auto* exp = app.add_subcommand("experiment", "Batch generate/plan/simulate runs to CSV");
  mule::ExperimentConfig ecfg;
  std::string scenario = "uniform", n_list = "50,100,150", algos = "gp,tp,rdvt", out_csv, agg_csv;
  exp->add_option("--scenario", scenario, "uniform or variable")
      ->check(CLI::IsMember({"uniform", "variable"}));
  exp->add_option("--n-list", n_list, "Comma-separated node counts");
  exp->add_option("--algos", algos, "Comma-separated algorithms");
  exp->add_option("--trials", ecfg.trials, "Topologies per node count")->check(CLI::PositiveNumber);
  exp->add_option("--seed", ecfg.seed, "Root seed");
  exp->add_option("--m", ecfg.elements, "Mobile elements for mp / rdvt-mp")->check(CLI::PositiveNumber);
  exp->add_option("--threads", ecfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  exp->add_option("--range", ecfg.comm_range, "Communication range, meters");
  exp->add_option("--x", ecfg.density_multiplier, "Density multiplier (variable)");
  exp->add_option("--dense-cells", ecfg.dense_cells, "Dense cell count (variable)");
  exp->add_option("--out-csv", out_csv, "Per-trial CSV (default: stdout or $MULE_OUT_DIR)");
  exp->add_option("--aggregate-csv", agg_csv, "Aggregate CSV of means (default: <out-csv stem>_mean.csv)");

  // export-lp
  auto* lp = app.add_subcommand("export-lp", "Write the exact model in LP format");
  std::string lp_topo, lp_out;
  double lp_budget = 0.0, big_m = 0.0, lp_speed = 1.0;
  int lp_k = 1;
  bool oracle = false;
  lp->add_option("--topology", lp_topo, "Topology file")->required();
  lp->add_option("--L", lp_budget, "Tour budget, seconds")->required();
  lp->add_option("--k", lp_k, "Hop bound")->required()->check(CLI::PositiveNumber);
  lp->add_option("--big-m", big_m, "Assignment weight (default: max travel time + 1)");
  lp->add_option("--speed", lp_speed, "Mobile element speed, m/s")->check(CLI::PositiveNumber);
  lp->add_option("--out", lp_out, "Output LP file");
  lp->add_flag("--oracle", oracle, "Also print the exhaustive optimum (n <= 9)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      mule::DeploymentSpec spec;
      spec.kind = kind == "uniform" ? mule::DeploymentKind::Uniform : mule::DeploymentKind::Variable;
      spec.n = gen_n;
      spec.area_side = area;
      spec.grid_dim = grid;
      spec.dense_cell_count = dense_cells;
      spec.density_multiplier = density;
      spec.seed = gen_seed;
      try {
        const mule::Topology t = mule::generate(spec, range);
        emit(resolve_output(gen_out, "topology.txt"), mule::topology_to_string(t));
      } catch (const mule::ConnectivityFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConnectivity;
      }
      return 0;
    }

    if (*plan) {
      const mule::Topology t = read_topology_file(topo_path);
      const double budget = parse_budget(budget_text, t, {speed, fraction});
      mule::PlanSet set;
      set.algo = algo;
      set.budget = budget;
      set.node_count = t.size();
      try {
        const mule::Network net = mule::Network::build(t, speed);
        if (algo == "mp" || algo == "rdvt-mp") {
          mule::MultiConfig mc;
          mc.elements = elements;
          mc.budget = budget;
          mc.speed = speed;
          mc.seed = plan_seed;
          if (k_max > 0) mc.k_max = k_max;
          auto mp = mule::mp_plan(net, mc,
                                  algo == "mp" ? mule::PartitionPlanner::Gp : mule::PartitionPlanner::Rdvt);
          set.plans = std::move(mp.plans);
        } else {
          mule::PlanConfig pc;
          pc.budget = budget;
          pc.speed = speed;
          pc.routing = routing == "mst" ? mule::RoutingMode::Mst : mule::RoutingMode::Bfs;
          if (k_max > 0) pc.k_max = k_max;
          set.plans.push_back(algo == "gp"   ? mule::gp_plan(net, pc)
                              : algo == "tp" ? mule::tp_plan(net, pc)
                                             : mule::rdvt_plan(net, pc));
        }
      } catch (const mule::Infeasible& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
      }
      emit(resolve_output(plan_out, "plan.txt"), mule::plans_to_string(set));
      std::ostream& info = plan_out.empty() && resolve_output("", "x") == "-" ? std::cerr : std::cout;
      info << fmt::format("budget_s {:.6f}\n", budget);
      for (std::size_t i = 0; i < set.plans.size(); ++i) {
        const auto& p = set.plans[i];
        info << fmt::format("plan {} anchor {} cp_count {} tour_length_s {:.6f} achieved_k {}\n", i,
                            p.anchor, p.caching_points.size(), p.tour.length, p.achieved_k);
      }
      return 0;
    }

    if (*sim) {
      mule::PlanSet set;
      try {
        std::ifstream is(sim_plan);
        if (!is) throw mule::ParseError(0, "cannot open " + sim_plan);
        set = mule::read_plans(is);
      } catch (const mule::ParseError& e) {
        std::cerr << "malformed plan: " << e.what() << '\n';
        return kExitBadPlan;
      }
      mule::SimReport rep;
      if (max_rounds > 0) {
        if (set.plans.size() != 1) throw std::invalid_argument("--max-rounds needs a single-plan file");
        rep = mule::simulate_rounds(set.plans.front(), radio, max_rounds);
      } else {
        rep = mule::lifetime(set.plans, radio);
      }
      const auto e = mule::per_packet_energy(radio);
      std::cout << fmt::format("e_tx_J {:.6e}\ne_rx_J {:.6e}\n", e.tx, e.rx);
      std::cout << "lifetime_rounds " << rep.lifetime_rounds << '\n';
      std::cout << "first_dead " << rep.first_dead << '\n';
      if (rep.truncated) std::cout << "truncated 1\n";
      if (per_node) {
        std::cout << "node subtree_size energy_per_round_J rounds_survivable\n";
        for (const auto& ne : rep.per_node)
          std::cout << fmt::format("{} {} {:.6e} {}\n", ne.node, ne.subtree_size,
                                   ne.energy_per_round, ne.rounds_survivable);
      }
      return 0;
    }

    if (*val) {
      const mule::Topology t = read_topology_file(val_topo);
      mule::PlanSet set;
      try {
        std::ifstream is(val_plan);
        if (!is) throw mule::ParseError(0, "cannot open " + val_plan);
        set = mule::read_plans(is);
      } catch (const mule::ParseError& e) {
        std::cerr << "malformed plan: " << e.what() << '\n';
        return kExitBadPlan;
      }
      if (set.node_count != t.size()) {
        std::cerr << "plan and topology disagree on node count\n";
        return kExitBadPlan;
      }
      const mule::Network net = mule::Network::build(t, val_speed);
      std::size_t total = 0;
      for (std::size_t i = 0; i < set.plans.size(); ++i) {
        for (const auto& v : mule::validate_plan(set.plans[i], net, set.budget)) {
          std::cout << fmt::format("plan {} {} node {}: {}\n", i, mule::violation_name(v.kind),
                                   v.node, v.detail);
          ++total;
        }
      }
      std::cout << "violations " << total << '\n';
      return total == 0 ? 0 : kExitViolations;
    }

    if (*exp) {
      ecfg.scenario = scenario == "uniform" ? mule::DeploymentKind::Uniform : mule::DeploymentKind::Variable;
      ecfg.n_list.clear();
      for (const auto& s : split_list(n_list)) ecfg.n_list.push_back(std::stoi(s));
      ecfg.algos.clear();
      for (const auto& s : split_list(algos)) ecfg.algos.push_back(mule::parse_algo(s));
      const auto rows = mule::run_experiment(ecfg);
      std::ostringstream rows_text, agg_text;
      mule::write_rows_csv(rows_text, rows);
      mule::write_aggregate_csv(agg_text, mule::aggregate(rows));
      const std::string rows_path = resolve_output(out_csv, "experiment.csv");
      emit(rows_path, rows_text.str());
      std::string agg_path = agg_csv;
      if (agg_path.empty() && rows_path != "-") {
        std::filesystem::path p(rows_path);
        agg_path = (p.parent_path() / (p.stem().string() + "_mean.csv")).string();
      }
      if (!agg_path.empty()) emit(agg_path, agg_text.str());
      return 0;
    }

    if (*lp) {
      const mule::Topology t = read_topology_file(lp_topo);
      if (oracle && t.size() > mule::kOracleMaxNodes) {
        std::cerr << "error: --oracle supports at most " << mule::kOracleMaxNodes << " nodes\n";
        return kExitOracleTooLarge;
      }
      const mule::Network net = mule::Network::build(t, lp_speed);
      const mule::IlpInstance inst = mule::make_ilp_instance(net, lp_budget, lp_k, big_m);
      emit(resolve_output(lp_out, "model.lp"), mule::export_lp(inst));
      if (oracle) {
        std::ostream& info = lp_out.empty() && resolve_output("", "x") == "-" ? std::cerr : std::cout;
        try {
          const auto sol = mule::brute_oracle(inst);
          info << "oracle_assignment_hops " << sol.assignment_hops << '\n';
          info << "oracle_travel_s " << mule::format_double(sol.travel) << '\n';
          info << "oracle_tour";
          for (auto v : sol.tour) info << ' ' << v;
          info << '\n';
        } catch (const mule::Infeasible& e) {
          info << "oracle_infeasible " << e.what() << '\n';
          return kExitInfeasible;
        }
      }
      return 0;
    }
  } catch (const mule::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
