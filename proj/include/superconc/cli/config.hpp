#pragma once

#include <string>
#include <vector>

#include "superconc/estimators.hpp"

namespace superconc {

// One experiment specification in the sectioned key=value text format:
//
//   [experiment]
//   type = identity
//   model = iid:n=8
//   [mc]
//   n_samples = 100000
//   master_seed = 0
//   n_workers = 1
//   t_grid = 0.05, 0.1, 0.5
//
// plus per-experiment sections ([tails] r_grid, [scaling] n_list,
// [peaks] eps/delta, [prediction] t, [slepian] model_b, [bounds] xi/order,
// [output] dir/emit_plots). Lines starting with '#' are comments.
struct ExperimentConfig {
  std::string experiment;
  std::string model_spec;
  MCConfig mc;
  bool seed_explicit = false;
  std::string output_dir = "results";
  bool emit_plots = false;

  std::vector<double> r_grid;
  std::vector<int> n_list;
  double peaks_eps = 0.0;
  double peaks_delta = 0.0;
  bool peaks_eps_set = false;
  bool peaks_delta_set = false;
  double prediction_t = 0.5;
  std::string slepian_model_b;
  std::string xi_text;
  int series_order = 64;
};

ExperimentConfig parse_config(const std::string& text);
std::string serialize_config(const ExperimentConfig& cfg);

}  // namespace superconc
