#include "mule/experiment.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <map>
#include <ostream>
#include <thread>
#include <tuple>

#include "mule/multi.hpp"
#include "mule/rdvt.hpp"
#include "mule/rng.hpp"

namespace mule {

const char* algo_name(Algo a) {
  switch (a) {
    case Algo::Gp:
      return "gp";
    case Algo::Tp:
      return "tp";
    case Algo::Rdvt:
      return "rdvt";
    case Algo::Mp:
      return "mp";
    case Algo::RdvtMp:
      return "rdvt-mp";
  }
  return "unknown";
}

Algo parse_algo(const std::string& s) {
  for (Algo a : {Algo::Gp, Algo::Tp, Algo::Rdvt, Algo::Mp, Algo::RdvtMp}) {
    if (s == algo_name(a)) return a;
  }
  throw std::invalid_argument("unknown algorithm '" + s + "'");
}

const char* scenario_name(DeploymentKind k) {
  return k == DeploymentKind::Uniform ? "uniform" : "variable";
}

std::uint64_t trial_seed(std::uint64_t root, DeploymentKind scenario, int n, int trial) {
  return derive_seed(root, {static_cast<std::uint64_t>(scenario), static_cast<std::uint64_t>(n),
                            static_cast<std::uint64_t>(trial)});
}

namespace {

struct Cell {
  int n;
  int trial;
};

void fill_from_plans(ExperimentRow& row, std::span<const Plan> plans, const RadioParams& radio) {
  row.cp_count = 0;
  row.tour_len = 0.0;
  row.achieved_k = 0;
  for (const Plan& p : plans) {
    row.cp_count += p.caching_points.size();
    row.tour_len = std::max(row.tour_len, p.tour.length);
    row.achieved_k = std::max(row.achieved_k, p.achieved_k);
  }
  row.lifetime = lifetime(plans, radio).lifetime_rounds;
}

std::vector<ExperimentRow> run_cell(const ExperimentConfig& cfg, Cell cell) {
  const std::uint64_t seed = trial_seed(cfg.seed, cfg.scenario, cell.n, cell.trial);
  std::vector<ExperimentRow> rows;
  for (Algo a : cfg.algos) {
    ExperimentRow r;
    r.scenario = scenario_name(cfg.scenario);
    r.n = cell.n;
    r.algo = a;
    r.trial = cell.trial;
    r.seed = seed;
    rows.push_back(r);
  }

  DeploymentSpec spec;
  spec.kind = cfg.scenario;
  spec.n = cell.n;
  spec.area_side = cfg.area_side;
  spec.grid_dim = cfg.grid_dim;
  spec.dense_cell_count = cfg.dense_cells;
  spec.density_multiplier = cfg.density_multiplier;
  spec.seed = seed;

  Topology topo;
  try {
    topo = generate(spec, cfg.comm_range);
  } catch (const ConnectivityFailure&) {
    for (auto& r : rows) r.status = "connectivity_failure";
    return rows;
  }
  const double budget = tour_budget(topo, cfg.mobility);
  const Network net = Network::build(topo, cfg.mobility.speed);
  PlanConfig pc;
  pc.budget = budget;
  pc.speed = cfg.mobility.speed;
  MultiConfig mc;
  mc.elements = cfg.elements;
  mc.budget = budget;
  mc.speed = cfg.mobility.speed;
  mc.seed = derive_seed(seed, {0x6d70});

  for (auto& r : rows) {
    try {
      switch (r.algo) {
        case Algo::Gp: {
          const Plan p = gp_plan(net, pc);
          fill_from_plans(r, {&p, 1}, cfg.radio);
          break;
        }
        case Algo::Tp: {
          const Plan p = tp_plan(net, pc);
          fill_from_plans(r, {&p, 1}, cfg.radio);
          break;
        }
        case Algo::Rdvt: {
          const Plan p = rdvt_plan(net, pc);
          fill_from_plans(r, {&p, 1}, cfg.radio);
          break;
        }
        case Algo::Mp:
        case Algo::RdvtMp: {
          const auto planner = r.algo == Algo::Mp ? PartitionPlanner::Gp : PartitionPlanner::Rdvt;
          const MultiPlan mp = mp_plan(net, mc, planner);
          fill_from_plans(r, mp.plans, cfg.radio);
          break;
        }
      }
    } catch (const Infeasible&) {
      r.status = "infeasible";
    } catch (const PartitionDisconnected&) {
      r.status = "partition_disconnected";
    } catch (const MuleError&) {
      r.status = "error";
    }
  }
  return rows;
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
  std::vector<Cell> cells;
  for (int n : config.n_list)
    for (int t = 0; t < config.trials; ++t) cells.push_back({n, t});

  std::vector<std::vector<ExperimentRow>> results(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) results[i] = run_cell(config, cells[i]);
  };
  const int threads = std::max(1, config.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<ExperimentRow> rows;
  for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
  std::stable_sort(rows.begin(), rows.end(), [](const ExperimentRow& a, const ExperimentRow& b) {
    return std::make_tuple(a.scenario, a.n, std::string(algo_name(a.algo)), a.trial) <
           std::make_tuple(b.scenario, b.n, std::string(algo_name(b.algo)), b.trial);
  });
  return rows;
}

std::vector<AggregateRow> aggregate(const std::vector<ExperimentRow>& rows) {
  std::vector<AggregateRow> out;
  for (const auto& r : rows) {
    if (out.empty() || out.back().scenario != r.scenario || out.back().n != r.n ||
        out.back().algo != r.algo) {
      AggregateRow a;
      a.scenario = r.scenario;
      a.n = r.n;
      a.algo = r.algo;
      out.push_back(a);
    }
    if (r.status != "ok") continue;
    AggregateRow& a = out.back();
    ++a.trials_ok;
    a.mean_cp_count += static_cast<double>(r.cp_count);
    a.mean_tour_len += r.tour_len;
    a.mean_achieved_k += r.achieved_k;
    a.mean_lifetime += static_cast<double>(r.lifetime);
  }
  for (auto& a : out) {
    if (a.trials_ok == 0) continue;
    a.mean_cp_count /= a.trials_ok;
    a.mean_tour_len /= a.trials_ok;
    a.mean_achieved_k /= a.trials_ok;
    a.mean_lifetime /= a.trials_ok;
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_rows_csv(std::ostream& os, const std::vector<ExperimentRow>& rows) {
  os << "scenario,n,algo,trial,seed,cp_count,tour_len,achieved_k,lifetime,status\n";
  for (const auto& r : rows) {
    os << fmt::format("{},{},{},{},{},{},{:.6f},{},{},{}\n", csv_field(r.scenario), r.n,
                      algo_name(r.algo), r.trial, r.seed, r.cp_count, r.tour_len, r.achieved_k,
                      r.lifetime, csv_field(r.status));
  }
}

void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& rows) {
  os << "scenario,n,algo,trials_ok,mean_cp_count,mean_tour_len,mean_achieved_k,mean_lifetime\n";
  for (const auto& a : rows) {
    os << fmt::format("{},{},{},{},{:.3f},{:.3f},{:.3f},{:.3f}\n", csv_field(a.scenario), a.n,
                      algo_name(a.algo), a.trials_ok, a.mean_cp_count, a.mean_tour_len,
                      a.mean_achieved_k, a.mean_lifetime);
  }
}

}  // namespace mule
