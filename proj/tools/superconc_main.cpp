#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "superconc/cli/config.hpp"
#include "superconc/cli/experiments.hpp"
#include "superconc/errors.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitError = 1;
constexpr int kExitCheckFailed = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw superconc::IoError("cannot open config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Empirical checks of superconcentration, chaos, and multiple peaks in "
               "Gaussian disordered systems"};
  app.require_subcommand(1);

  const std::vector<std::string> experiments = {"identity", "overlap",    "variance",
                                                "peaks",    "tails",      "bounds",
                                                "scaling",  "prediction", "slepian"};
  std::string config_path;
  long long seed = -1;
  long long samples = -1;
  int workers = -1;
  std::string out_dir;

  for (const auto& name : experiments) {
    auto* sub = app.add_subcommand(name, "run the " + name + " experiment suite");
    sub->add_option("--config", config_path, "experiment config file")->required();
    sub->add_option("--seed", seed, "override the master seed");
    sub->add_option("--samples", samples, "override the replica count");
    sub->add_option("--workers", workers, "override the worker count");
    sub->add_option("--out", out_dir, "override the output directory");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string experiment = app.get_subcommands().front()->get_name();

  try {
    superconc::ExperimentConfig cfg = superconc::parse_config(read_file(config_path));
    if (cfg.experiment != experiment) {
      std::cerr << "config is for experiment '" << cfg.experiment << "', not '" << experiment
                << "'\n";
      return kExitError;
    }
    if (!cfg.seed_explicit) {
      if (const char* env = std::getenv("SUPERCONC_SEED")) {
        cfg.mc.master_seed = std::strtoull(env, nullptr, 10);
        cfg.seed_explicit = true;
      }
    }
    if (seed >= 0) cfg.mc.master_seed = static_cast<std::uint64_t>(seed);
    if (samples >= 2) cfg.mc.n_samples = static_cast<std::size_t>(samples);
    if (workers >= 1) cfg.mc.n_workers = workers;
    if (!out_dir.empty()) cfg.output_dir = out_dir;

    const superconc::ResultRecord record = superconc::run_experiment(cfg);
    superconc::write_results(record, cfg.output_dir);
    if (cfg.emit_plots) superconc::emit_plot_data(record, cfg.output_dir);

    for (const auto& r : record.rows) {
      std::cout << r.statistic;
      if (!r.point.empty()) std::cout << "[" << r.point << "]";
      std::cout << " = " << r.value;
      if (r.se > 0.0) std::cout << " +- " << r.se;
      if (r.bound) std::cout << " (bound " << *r.bound << ")";
      if (r.pass) std::cout << (*r.pass ? " PASS" : " FAIL");
      std::cout << "\n";
    }
    if (!record.all_pass()) {
      std::cerr << "statistical check failed\n";
      return kExitCheckFailed;
    }
    return kExitPass;
  } catch (const superconc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
