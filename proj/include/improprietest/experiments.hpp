#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace improp {

struct RegimePoint {
  int n_dim = 0;
  int m_obs = 0;
};

// One experiment run: which figure-style table to produce and at what
// scale. Defaults reproduce the reference setups at desk scale; a JSON
// config overrides any subset of fields.
struct ExperimentConfig {
  std::string experiment;
  std::vector<RegimePoint> regimes;
  int replicates = 0;
  std::vector<double> alphas;       // p-p grids, or the single test level
  std::vector<double> lambda_grid;  // power / spike experiments
  std::vector<double> p_fractions;  // mixed model
  int bins = 60;
  std::uint64_t master_seed = 0xC0FFEE5EEDULL;
  std::string output_dir = ".";

  void validate() const;

  static const std::vector<std::string>& names();
  static ExperimentConfig defaults_for(const std::string& experiment);

  // Missing keys fall back to the experiment's defaults. Regimes accept
  // either {"n_dim": N, "m_obs": M} or {"n_dim": N, "gamma": g}.
  static ExperimentConfig from_json(const std::string& text);
  std::string to_json() const;
};

// Rectangular all-double table plus a JSON metadata block.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::string meta;  // sidecar JSON

  void validate() const;  // rectangular, finite cells, named columns
  std::string to_csv() const;
  static ResultTable parse_csv(const std::string& text);  // re-validates
};

ResultTable run_experiment(const ExperimentConfig& config, int threads = 1);

// <output_dir>/<experiment>.csv and <experiment>.meta.json
void write_result(const ResultTable& table, const ExperimentConfig& config);

}  // namespace improp
