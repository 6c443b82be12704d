#include "superconc/cli/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include "superconc/errors.hpp"
#include "superconc/models/registry.hpp"

namespace superconc {

namespace {

const std::set<std::string> kExperiments = {"identity", "overlap",    "variance",
                                            "peaks",    "tails",      "bounds",
                                            "scaling",  "prediction", "slepian"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t end = s.find(',', pos);
    if (end == std::string::npos) end = s.size();
    const std::string item = trim(s.substr(pos, end - pos));
    if (!item.empty()) out.push_back(item);
    pos = end + 1;
  }
  return out;
}

double parse_double(int line, const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size() || v.empty())
    throw ParseError(line, key, "not a number: '" + v + "'");
  return x;
}

long long parse_int(int line, const std::string& key, const std::string& v) {
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (end != v.c_str() + v.size() || v.empty())
    throw ParseError(line, key, "not an integer: '" + v + "'");
  return x;
}

bool parse_bool(int line, const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ParseError(line, key, "not a boolean: '" + v + "'");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  int experiment_line = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, line, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      static const std::set<std::string> kSections = {"experiment", "mc",      "output",
                                                      "tails",      "scaling", "peaks",
                                                      "prediction", "slepian", "bounds"};
      if (!kSections.count(section))
        throw ParseError(line_no, section, "unknown section");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, line, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, line, "empty key");

    if (section == "experiment") {
      if (key == "type") {
        if (!kExperiments.count(value))
          throw ParseError(line_no, key, "unknown experiment '" + value + "'");
        cfg.experiment = value;
        experiment_line = line_no;
      } else if (key == "model") {
        try {
          validate_spec(value);
        } catch (const ParseError& e) {
          throw ParseError(line_no, "model", e.reason);
        }
        cfg.model_spec = value;
      } else {
        throw ParseError(line_no, key, "unknown key in [experiment]");
      }
    } else if (section == "mc") {
      if (key == "n_samples") {
        const long long v = parse_int(line_no, key, value);
        if (v < 2) throw ParseError(line_no, key, "need n_samples >= 2");
        cfg.mc.n_samples = static_cast<std::size_t>(v);
      } else if (key == "master_seed") {
        cfg.mc.master_seed = static_cast<std::uint64_t>(parse_int(line_no, key, value));
        cfg.seed_explicit = true;
      } else if (key == "n_workers") {
        const long long v = parse_int(line_no, key, value);
        if (v < 1) throw ParseError(line_no, key, "need n_workers >= 1");
        cfg.mc.n_workers = static_cast<int>(v);
      } else if (key == "t_grid") {
        cfg.mc.t_grid.clear();
        for (const auto& item : split_list(value))
          cfg.mc.t_grid.push_back(parse_double(line_no, key, item));
        for (std::size_t i = 1; i < cfg.mc.t_grid.size(); ++i)
          if (!(cfg.mc.t_grid[i] > cfg.mc.t_grid[i - 1]))
            throw ParseError(line_no, key, "t_grid must be strictly increasing");
      } else {
        throw ParseError(line_no, key, "unknown key in [mc]");
      }
    } else if (section == "output") {
      if (key == "dir")
        cfg.output_dir = value;
      else if (key == "emit_plots")
        cfg.emit_plots = parse_bool(line_no, key, value);
      else
        throw ParseError(line_no, key, "unknown key in [output]");
    } else if (section == "tails") {
      if (key == "r_grid") {
        cfg.r_grid.clear();
        for (const auto& item : split_list(value))
          cfg.r_grid.push_back(parse_double(line_no, key, item));
      } else {
        throw ParseError(line_no, key, "unknown key in [tails]");
      }
    } else if (section == "scaling") {
      if (key == "n_list") {
        cfg.n_list.clear();
        for (const auto& item : split_list(value))
          cfg.n_list.push_back(static_cast<int>(parse_int(line_no, key, item)));
      } else {
        throw ParseError(line_no, key, "unknown key in [scaling]");
      }
    } else if (section == "peaks") {
      if (key == "eps") {
        cfg.peaks_eps = parse_double(line_no, key, value);
        cfg.peaks_eps_set = true;
      } else if (key == "delta") {
        cfg.peaks_delta = parse_double(line_no, key, value);
        cfg.peaks_delta_set = true;
      } else {
        throw ParseError(line_no, key, "unknown key in [peaks]");
      }
    } else if (section == "prediction") {
      if (key == "t")
        cfg.prediction_t = parse_double(line_no, key, value);
      else
        throw ParseError(line_no, key, "unknown key in [prediction]");
    } else if (section == "slepian") {
      if (key == "model_b") {
        try {
          validate_spec(value);
        } catch (const ParseError& e) {
          throw ParseError(line_no, "model_b", e.reason);
        }
        cfg.slepian_model_b = value;
      } else {
        throw ParseError(line_no, key, "unknown key in [slepian]");
      }
    } else if (section == "bounds") {
      if (key == "xi")
        cfg.xi_text = value;
      else if (key == "order")
        cfg.series_order = static_cast<int>(parse_int(line_no, key, value));
      else
        throw ParseError(line_no, key, "unknown key in [bounds]");
    } else {
      throw ParseError(line_no, key, "key outside any section");
    }
  }

  if (cfg.experiment.empty()) throw ParseError(0, "type", "missing [experiment] type");
  const bool needs_model = cfg.experiment != "bounds";
  if (needs_model && cfg.model_spec.empty())
    throw ParseError(experiment_line, "model", "experiment requires a model spec");
  if (cfg.experiment == "overlap" && cfg.mc.t_grid.empty())
    throw ParseError(experiment_line, "t_grid", "overlap experiment requires t_grid");
  if (cfg.experiment == "tails" && cfg.r_grid.empty())
    throw ParseError(experiment_line, "r_grid", "tails experiment requires r_grid");
  if (cfg.experiment == "scaling" && cfg.n_list.empty())
    throw ParseError(experiment_line, "n_list", "scaling experiment requires n_list");
  if (cfg.experiment == "peaks" && !cfg.peaks_eps_set)
    throw ParseError(experiment_line, "eps", "peaks experiment requires eps");
  if (cfg.experiment == "peaks" && !cfg.peaks_delta_set)
    throw ParseError(experiment_line, "delta", "peaks experiment requires delta");
  if (cfg.experiment == "slepian" && cfg.slepian_model_b.empty())
    throw ParseError(experiment_line, "model_b", "slepian experiment requires model_b");
  if (cfg.experiment == "bounds" && cfg.xi_text.empty())
    throw ParseError(experiment_line, "xi", "bounds experiment requires xi");
  return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os.precision(17);
  os << "[experiment]\n";
  os << "type = " << cfg.experiment << "\n";
  if (!cfg.model_spec.empty()) os << "model = " << cfg.model_spec << "\n";
  os << "\n[mc]\n";
  os << "n_samples = " << cfg.mc.n_samples << "\n";
  if (cfg.seed_explicit) os << "master_seed = " << cfg.mc.master_seed << "\n";
  os << "n_workers = " << cfg.mc.n_workers << "\n";
  if (!cfg.mc.t_grid.empty()) {
    os << "t_grid = ";
    for (std::size_t i = 0; i < cfg.mc.t_grid.size(); ++i)
      os << (i ? ", " : "") << cfg.mc.t_grid[i];
    os << "\n";
  }
  if (!cfg.r_grid.empty()) {
    os << "\n[tails]\nr_grid = ";
    for (std::size_t i = 0; i < cfg.r_grid.size(); ++i) os << (i ? ", " : "") << cfg.r_grid[i];
    os << "\n";
  }
  if (!cfg.n_list.empty()) {
    os << "\n[scaling]\nn_list = ";
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i) os << (i ? ", " : "") << cfg.n_list[i];
    os << "\n";
  }
  if (cfg.peaks_eps_set || cfg.peaks_delta_set)
    os << "\n[peaks]\neps = " << cfg.peaks_eps << "\ndelta = " << cfg.peaks_delta << "\n";
  if (cfg.experiment == "prediction") os << "\n[prediction]\nt = " << cfg.prediction_t << "\n";
  if (!cfg.slepian_model_b.empty()) os << "\n[slepian]\nmodel_b = " << cfg.slepian_model_b << "\n";
  if (!cfg.xi_text.empty())
    os << "\n[bounds]\nxi = " << cfg.xi_text << "\norder = " << cfg.series_order << "\n";
  os << "\n[output]\ndir = " << cfg.output_dir << "\n"
     << "emit_plots = " << (cfg.emit_plots ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace superconc
