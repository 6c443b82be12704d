#include "superconc/cli/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "superconc/bounds.hpp"
#include "superconc/errors.hpp"
#include "superconc/models/registry.hpp"

namespace superconc {

namespace {

std::string fmt_g(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

StatRow row(std::string stat, std::string point, double value, double se,
            std::optional<double> bound = std::nullopt,
            std::optional<bool> pass = std::nullopt) {
  return {std::move(stat), std::move(point), value, se, bound, pass};
}

void run_identity(const ExperimentConfig& cfg, ResultRecord& rec) {
  const auto sampler = make_sampler(cfg.model_spec);
  const IdentityReport rep = check_identity(*sampler, cfg.mc);
  rec.rows.push_back(row("v_hat", "", rep.v_hat.value, rep.v_hat.se));
  rec.rows.push_back(row("exp_time_overlap", "", rep.overlap_mean.value, rep.overlap_mean.se));
  rec.rows.push_back(row("identity_z", "", rep.z, 0.0, 3.0, rep.pass));
}

void run_overlap(const ExperimentConfig& cfg, ResultRecord& rec) {
  const auto sampler = make_sampler(cfg.model_spec);
  const MaxStats stats = estimate_max_stats(*sampler, cfg.mc);
  const OverlapCurve curve = estimate_overlap_curve(*sampler, cfg.mc);
  const TauberianReport tauberian = check_tauberian(curve, stats.v_hat, sampler->sigma_sq());
  rec.rows.push_back(row("v_hat", "", stats.v_hat.value, stats.v_hat.se));
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const auto& pt = curve.points[i];
    const auto& tb = tauberian.points[i];
    const bool ok = tb.upper_ok && tb.lower_ok && tb.nonneg_ok && tb.mono_ok;
    rec.rows.push_back(row("overlap", fmt_g(pt.t), pt.overlap.value, pt.overlap.se,
                           pt.t > 0.0 ? std::optional<double>(tb.upper_bound) : std::nullopt,
                           ok));
  }
}

void run_variance(const ExperimentConfig& cfg, ResultRecord& rec) {
  const auto sampler = make_sampler(cfg.model_spec);
  const MaxStats stats = estimate_max_stats(*sampler, cfg.mc);
  const double sigma_sq = sampler->sigma_sq();
  const double log_s = sampler->log_index_count();
  const bool v_ok = stats.v_hat.value <= sigma_sq + 3.0 * stats.v_hat.se;
  rec.rows.push_back(row("m_hat", "", stats.m_hat.value, stats.m_hat.se));
  rec.rows.push_back(row("v_hat", "", stats.v_hat.value, stats.v_hat.se, sigma_sq, v_ok));
  if (std::isfinite(log_s)) {
    const double ceiling = std::sqrt(2.0 * sigma_sq * log_s);
    const bool m_ok = stats.m_hat.value <= ceiling + 3.0 * stats.m_hat.se;
    rec.rows.push_back(row("m_hat_vs_ceiling", "", stats.m_hat.value, stats.m_hat.se, ceiling, m_ok));
  }
}

void run_peaks(const ExperimentConfig& cfg, ResultRecord& rec) {
  const auto sampler = make_sampler(cfg.model_spec);
  const auto* dense = dynamic_cast<const DenseFieldSampler*>(sampler.get());
  if (dense == nullptr) throw DomainError("peaks experiment needs a dense-index model");
  cfg.mc.validate();
  const std::size_t reps = cfg.mc.n_samples;
  std::vector<double> ls(reps);
  bool all_consistent = true;
  std::vector<double> w(dense->disorder_dim()), x(dense->index_count());
  for (std::size_t r = 0; r < reps; ++r) {
    RngStream rng(cfg.mc.master_seed, r);
    rng.fill_normal(w);
    dense->field_values(w, x);
    const PeaksReport rep = find_peaks(x, dense->kernel(), cfg.peaks_eps, cfg.peaks_delta);
    ls[r] = static_cast<double>(rep.l);
    all_consistent = all_consistent && rep.success;
  }
  const EstimateWithSE mean_l = mean_with_se(ls);
  rec.rows.push_back(row("peaks_l_mean", "", mean_l.value, mean_l.se));
  rec.rows.push_back(row("peaks_l_min", "", *std::min_element(ls.begin(), ls.end()), 0.0));
  rec.rows.push_back(row("peaks_consistent", "", all_consistent ? 1.0 : 0.0, 0.0, std::nullopt,
                         all_consistent));
}

void run_tails(const ExperimentConfig& cfg, ResultRecord& rec) {
  const auto sampler = make_sampler(cfg.model_spec);
  const TailReport rep = tail_profile(*sampler, cfg.mc, cfg.r_grid);
  for (const auto& pt : rep.points) {
    rec.rows.push_back(row("tail_upper", fmt_g(pt.r), pt.upper_emp.value, pt.upper_emp.se,
                           pt.borell_bound, pt.pass));
    rec.rows.push_back(row("tail_lower", fmt_g(pt.r), pt.lower_emp.value, pt.lower_emp.se,
                           pt.borell_bound, pt.pass));
  }
}

void run_scaling(const ExperimentConfig& cfg, ResultRecord& rec) {
  const auto factory = [&](int n) { return make_sampler(respec_size(cfg.model_spec, n)); };
  const auto rows = scaling_sweep(factory, cfg.n_list, cfg.mc);
  for (const auto& r : rows) {
    const std::string point = std::to_string(r.n);
    rec.rows.push_back(row("m_hat", point, r.m_hat.value, r.m_hat.se));
    rec.rows.push_back(row("v_hat", point, r.v_hat.value, r.v_hat.se));
    rec.rows.push_back(row("v_ratio", point, r.v_ratio, 0.0));
    if (r.alpha_hat != 0.0) rec.rows.push_back(row("alpha_hat", point, r.alpha_hat, 0.0));
    for (const auto& op : r.overlaps)
      rec.rows.push_back(
          row("overlap_n" + point, fmt_g(op.t), op.overlap.value, op.overlap.se));
  }
}

void run_prediction(const ExperimentConfig& cfg, ResultRecord& rec) {
  const auto sampler = make_sampler(cfg.model_spec);
  const PredictionReport rep = prediction_check(*sampler, cfg.mc, cfg.prediction_t);
  for (const auto& pt : rep.points)
    rec.rows.push_back(row("prediction_exceed", fmt_g(pt.x), pt.emp.value, pt.emp.se, pt.bound,
                           pt.pass));
}

void run_slepian(const ExperimentConfig& cfg, ResultRecord& rec) {
  const auto sampler_a = make_sampler(cfg.model_spec);
  const auto sampler_b = make_sampler(cfg.slepian_model_b);
  const auto* da = dynamic_cast<const DenseFieldSampler*>(sampler_a.get());
  const auto* db = dynamic_cast<const DenseFieldSampler*>(sampler_b.get());
  const SlepianReport rep = (da != nullptr && db != nullptr)
                                ? slepian_check(*da, *db, cfg.mc)
                                : slepian_check(*sampler_a, *sampler_b, cfg.mc);
  rec.rows.push_back(row("m_hat_x", "", rep.m_x.value, rep.m_x.se));
  rec.rows.push_back(row("m_hat_y", "", rep.m_y.value, rep.m_y.se, std::nullopt, rep.pass));
}

void run_bounds(const ExperimentConfig& cfg, ResultRecord& rec) {
  const XiSpec xi = XiSpec::parse(cfg.xi_text);
  const SeriesCoeffs cstar = cstar_coeffs(cfg.series_order);
  rec.rows.push_back(row("cstar_2", "", cstar.cstar[2], 0.0));
  rec.rows.push_back(
      row("cstar_partial_sum", std::to_string(cfg.series_order), cstar.partial_sum(cfg.series_order), 0.0));
  const MajorizationReport maj = check_majorization(xi, cstar);
  rec.rows.push_back(row("majorization", maj.first_violation ? std::to_string(*maj.first_violation) : "",
                         maj.pass ? 1.0 : 0.0, 0.0, std::nullopt, maj.pass));
  std::vector<double> grid;
  for (int i = 1; i <= 99; ++i) grid.push_back(-1.0 + 0.02 * i);
  const XiConditionReport cond = check_xi_condition(xi, grid);
  rec.rows.push_back(row("xi_condition", cond.first_violation_x ? fmt_g(*cond.first_violation_x) : "",
                         cond.pass ? 1.0 : 0.0, 0.0, std::nullopt, cond.pass));
}

}  // namespace

bool ResultRecord::all_pass() const {
  for (const auto& r : rows)
    if (r.pass.has_value() && !*r.pass) return false;
  return true;
}

ResultRecord run_experiment(const ExperimentConfig& cfg) {
  ResultRecord rec;
  rec.experiment = cfg.experiment;
  rec.model_spec = cfg.model_spec;
  rec.seed = cfg.mc.master_seed;
  rec.n_samples = cfg.mc.n_samples;
  rec.timestamp = now_iso8601();
  const auto start = std::chrono::steady_clock::now();

  if (cfg.experiment == "identity")
    run_identity(cfg, rec);
  else if (cfg.experiment == "overlap")
    run_overlap(cfg, rec);
  else if (cfg.experiment == "variance")
    run_variance(cfg, rec);
  else if (cfg.experiment == "peaks")
    run_peaks(cfg, rec);
  else if (cfg.experiment == "tails")
    run_tails(cfg, rec);
  else if (cfg.experiment == "scaling")
    run_scaling(cfg, rec);
  else if (cfg.experiment == "prediction")
    run_prediction(cfg, rec);
  else if (cfg.experiment == "slepian")
    run_slepian(cfg, rec);
  else if (cfg.experiment == "bounds")
    run_bounds(cfg, rec);
  else
    throw DomainError("unknown experiment '" + cfg.experiment + "'");

  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

void write_results(const ResultRecord& record, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());

  {
    std::ofstream csv(std::filesystem::path(dir) / "results.csv");
    if (!csv) throw IoError("cannot open results.csv for writing");
    csv << "experiment,model,statistic,point,value,se,bound,pass\n";
    for (const auto& r : record.rows) {
      csv << record.experiment << ',' << record.model_spec << ',' << r.statistic << ','
          << r.point << ',' << fmt_g(r.value) << ',' << fmt_g(r.se) << ','
          << (r.bound ? fmt_g(*r.bound) : "") << ','
          << (r.pass ? (*r.pass ? "true" : "false") : "") << '\n';
    }
    if (!csv.good()) throw IoError("failed writing results.csv");
  }

  nlohmann::json j;
  j["experiment"] = record.experiment;
  j["model"] = record.model_spec;
  j["timestamp"] = record.timestamp;
  j["seed"] = record.seed;
  j["n_samples"] = record.n_samples;
  j["wall_seconds"] = record.wall_seconds;
  j["pass"] = record.all_pass();
  auto& rows = j["statistics"] = nlohmann::json::array();
  for (const auto& r : record.rows) {
    nlohmann::json jr;
    jr["statistic"] = r.statistic;
    jr["point"] = r.point;
    jr["value"] = r.value;
    jr["se"] = r.se;
    if (r.bound) jr["bound"] = *r.bound;
    if (r.pass) jr["pass"] = *r.pass;
    rows.push_back(std::move(jr));
  }
  std::ofstream js(std::filesystem::path(dir) / "summary.json");
  if (!js) throw IoError("cannot open summary.json for writing");
  js << j.dump(2) << '\n';
  if (!js.good()) throw IoError("failed writing summary.json");
}

void emit_plot_data(const ResultRecord& record, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
  const auto path = [&](const char* name) { return std::filesystem::path(dir) / name; };

  if (record.experiment == "overlap") {
    std::ofstream tsv(path("overlap_curve.tsv"));
    if (!tsv) throw IoError("cannot open overlap_curve.tsv");
    tsv << "t\tvalue\tse\tvarconv_upper\n";
    for (const auto& r : record.rows) {
      if (r.statistic != "overlap") continue;
      tsv << r.point << '\t' << fmt_g(r.value) << '\t' << fmt_g(r.se) << '\t'
          << (r.bound ? fmt_g(*r.bound) : "") << '\n';
    }
  } else if (record.experiment == "scaling") {
    std::ofstream tsv(path("scaling.tsv"));
    if (!tsv) throw IoError("cannot open scaling.tsv");
    tsv << "n\tm_hat\tv_hat\talpha_hat\n";
    // rows are grouped per n in emission order
    std::string n;
    double m = 0, v = 0, a = 0;
    bool have = false;
    auto flush = [&] {
      if (have) tsv << n << '\t' << fmt_g(m) << '\t' << fmt_g(v) << '\t' << fmt_g(a) << '\n';
      a = 0;
      have = false;
    };
    for (const auto& r : record.rows) {
      if (r.statistic == "m_hat") {
        flush();
        n = r.point;
        m = r.value;
        have = true;
      } else if (r.statistic == "v_hat") {
        v = r.value;
      } else if (r.statistic == "alpha_hat") {
        a = r.value;
      }
    }
    flush();
  } else if (record.experiment == "tails") {
    std::ofstream tsv(path("tails.tsv"));
    if (!tsv) throw IoError("cannot open tails.tsv");
    tsv << "r\tupper_emp\tupper_se\tlower_emp\tlower_se\tborell\n";
    for (std::size_t i = 0; i + 1 < record.rows.size(); i += 2) {
      const auto& up = record.rows[i];
      const auto& lo = record.rows[i + 1];
      if (up.statistic != "tail_upper" || lo.statistic != "tail_lower") continue;
      tsv << up.point << '\t' << fmt_g(up.value) << '\t' << fmt_g(up.se) << '\t'
          << fmt_g(lo.value) << '\t' << fmt_g(lo.se) << '\t'
          << (up.bound ? fmt_g(*up.bound) : "") << '\n';
    }
  }
}

}  // namespace superconc
