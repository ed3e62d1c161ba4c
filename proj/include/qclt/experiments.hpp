#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qclt/verify.hpp"

namespace qclt {

struct ExperimentConfig {
  std::string state_id = "fock1";
  std::vector<int> n_list;  // empty: per-subcommand default
  double lambda = 0.5;
  double photon_N = 1.0;  // N used when state_id is the "thermal" shorthand
  double energy_E = 2.0;
  double grid_extent = 6.0;
  int grid_points = 192;
  int dim = 64;
  std::string out_format = "csv";  // csv | json
  std::string log_base = "nats";   // nats | bits
  std::uint64_t seed = 1;
  int threads = 0;
};

using Cell = std::variant<std::int64_t, double, bool, std::string>;

// One experiment output: '#'-prefixed metadata, a header row, data rows.
struct Table {
  std::string name;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::string to_csv() const;
  std::string to_json() const;
  std::string render(const std::string& format) const;
};

Table run_rates(const ExperimentConfig& config);
Table run_cascade(const ExperimentConfig& config);
Table run_capacity(const ExperimentConfig& config);
Table run_counterexample(const ExperimentConfig& config);
Table run_decay(const ExperimentConfig& config);

// Wraps the invariant battery; all_pass lands in the metadata.
Table run_verify(const ExperimentConfig& config, VerifySummary* summary_out =
                                                     nullptr);

}  // namespace qclt
