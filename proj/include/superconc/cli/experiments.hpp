#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "superconc/cli/config.hpp"

namespace superconc {

struct StatRow {
  std::string statistic;
  std::string point;  // t value, n value, r value, or empty
  double value = 0.0;
  double se = 0.0;
  std::optional<double> bound;
  std::optional<bool> pass;
};

struct ResultRecord {
  std::string experiment;
  std::string model_spec;
  std::string timestamp;
  std::uint64_t seed = 0;
  std::size_t n_samples = 0;
  double wall_seconds = 0.0;
  std::vector<StatRow> rows;

  bool all_pass() const;
};

// Executes the configured estimator suite. Statistical-check failures are
// reported through the rows' pass flags, not exceptions.
ResultRecord run_experiment(const ExperimentConfig& cfg);

// results.csv + summary.json under dir (created if needed).
void write_results(const ResultRecord& record, const std::string& dir);

// Plot-ready TSV series per experiment type.
void emit_plot_data(const ResultRecord& record, const std::string& dir);

}  // namespace superconc
