#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mule/energy.hpp"
#include "mule/topology.hpp"

namespace mule {

enum class Algo { Gp, Tp, Rdvt, Mp, RdvtMp };

const char* algo_name(Algo a);
/// Accepts gp, tp, rdvt, mp, rdvt-mp; throws std::invalid_argument otherwise.
Algo parse_algo(const std::string& s);

const char* scenario_name(DeploymentKind k);

struct ExperimentConfig {
  DeploymentKind scenario = DeploymentKind::Uniform;
  std::vector<int> n_list{50, 100, 150};
  std::vector<Algo> algos{Algo::Gp, Algo::Tp, Algo::Rdvt};
  int trials = 10;
  std::uint64_t seed = 1;
  int elements = 3;  // M for the multi-element algorithms
  double comm_range = 100.0;
  double area_side = 500.0;
  int grid_dim = 10;
  int dense_cells = 30;
  double density_multiplier = 5.0;
  MobilityParams mobility;
  RadioParams radio;
  int threads = 1;
};

struct ExperimentRow {
  std::string scenario;
  int n = 0;
  Algo algo = Algo::Gp;
  int trial = 0;
  std::uint64_t seed = 0;
  std::size_t cp_count = 0;
  double tour_len = 0.0;
  int achieved_k = 0;
  std::int64_t lifetime = 0;
  std::string status = "ok";
};

/// Topology seed for one (scenario, n, trial) cell; every algorithm in the
/// cell plans on the same deployment.
std::uint64_t trial_seed(std::uint64_t root, DeploymentKind scenario, int n, int trial);

/// Runs generate -> plan -> simulate for every (n, algo, trial). Rows come
/// back sorted by (scenario, n, algo, trial) regardless of thread count.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

struct AggregateRow {
  std::string scenario;
  int n = 0;
  Algo algo = Algo::Gp;
  int trials_ok = 0;
  double mean_cp_count = 0.0;
  double mean_tour_len = 0.0;
  double mean_achieved_k = 0.0;
  double mean_lifetime = 0.0;
};

std::vector<AggregateRow> aggregate(const std::vector<ExperimentRow>& rows);

void write_rows_csv(std::ostream& os, const std::vector<ExperimentRow>& rows);
void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& rows);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);

}  // namespace mule
