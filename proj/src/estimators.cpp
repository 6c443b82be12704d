#include "superconc/estimators.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>

#include "superconc/errors.hpp"

namespace superconc {

namespace {

constexpr double kSigmaRule = 3.0;

// Replica map with per-replica streams; results land in index order.
template <typename F>
void replica_map(const MCConfig& cfg, F&& fn) {
  parallel_for(cfg.n_samples, cfg.n_workers, [&](std::size_t r) {
    RngStream rng(cfg.master_seed, r);
    fn(r, rng);
  });
}

}  // namespace

void MCConfig::validate() const {
  if (n_samples < 2) throw DomainError("need at least two replicas");
  if (n_workers < 1) throw DomainError("need at least one worker");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1])) throw DomainError("t_grid must be strictly increasing");
  for (double t : t_grid)
    if (t < 0.0) throw DomainError("t_grid entries must be nonnegative");
}

EstimateWithSE mean_with_se(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n < 2) throw DomainError("mean_with_se needs n >= 2");
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = ss / static_cast<double>(n - 1);
  return {mean, std::sqrt(var / static_cast<double>(n)), n};
}

EstimateWithSE variance_with_se(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n < 2) throw DomainError("variance_with_se needs n >= 2");
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
  double m2 = 0.0, m4 = 0.0;
  for (double x : xs) {
    const double d = x - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  const double var = m2 / static_cast<double>(n - 1);
  m2 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  const double se_sq = std::max(0.0, m4 - m2 * m2) / static_cast<double>(n);
  return {var, std::sqrt(se_sq), n};
}

EstimateWithSE freq_with_se(double successes, std::size_t n) {
  const double p = successes / static_cast<double>(n);
  return {p, std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n)), n};
}

MaxStats estimate_max_stats(const FieldSampler& sampler, const MCConfig& cfg) {
  cfg.validate();
  std::vector<double> ms(cfg.n_samples);
  replica_map(cfg, [&](std::size_t r, RngStream& rng) { ms[r] = sampler.max_value(rng); });
  return {mean_with_se(ms), variance_with_se(ms)};
}

OverlapCurve estimate_overlap_curve(const FieldSampler& sampler, const MCConfig& cfg) {
  cfg.validate();
  if (cfg.t_grid.empty()) throw DomainError("overlap curve needs a nonempty t_grid");
  const std::size_t k = cfg.t_grid.size();
  std::vector<double> overlaps(cfg.n_samples * k);
  replica_map(cfg, [&](std::size_t r, RngStream& rng) {
    std::vector<CoupledStats> row(k);
    sampler.curve_run(rng, cfg.t_grid, row);
    for (std::size_t j = 0; j < k; ++j) overlaps[j * cfg.n_samples + r] = row[j].overlap;
  });
  OverlapCurve curve;
  curve.points.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    curve.points[j].t = cfg.t_grid[j];
    curve.points[j].overlap = mean_with_se(
        std::span<const double>(overlaps.data() + j * cfg.n_samples, cfg.n_samples));
  }
  return curve;
}

IdentityReport check_identity(const FieldSampler& sampler, const MCConfig& cfg) {
  cfg.validate();
  std::vector<double> ms(cfg.n_samples), overlaps(cfg.n_samples);
  replica_map(cfg, [&](std::size_t r, RngStream& rng) {
    const double tau = rng.exponential();
    const CoupledStats c = sampler.coupled_run(rng, tau);
    ms[r] = c.m0;
    overlaps[r] = c.overlap;
  });
  IdentityReport rep;
  rep.v_hat = variance_with_se(ms);
  rep.overlap_mean = mean_with_se(overlaps);
  const double denom = std::hypot(rep.v_hat.se, rep.overlap_mean.se);
  rep.z = denom > 0.0 ? (rep.v_hat.value - rep.overlap_mean.value) / denom : 0.0;
  rep.pass = std::abs(rep.z) <= kSigmaRule;
  return rep;
}

TauberianReport check_tauberian(const OverlapCurve& curve, const EstimateWithSE& v_hat,
                                double sigma_sq) {
  TauberianReport rep;
  rep.pass = true;
  for (std::size_t j = 0; j < curve.points.size(); ++j) {
    const auto& pt = curve.points[j];
    TauberianPoint out;
    out.t = pt.t;
    out.overlap = pt.overlap.value;
    const double emt = std::exp(-std::min(pt.t, kOuTimeCap));

    out.nonneg_ok = pt.overlap.value >= -2.0 * pt.overlap.se;

    if (pt.t > 0.0) {
      out.upper_bound = v_hat.value / (1.0 - emt);
      const double margin =
          kSigmaRule * std::hypot(pt.overlap.se, v_hat.se / (1.0 - emt));
      out.upper_ok = pt.overlap.value <= out.upper_bound + margin;
    }

    out.lower_rhs = sigma_sq * (1.0 - emt) + pt.overlap.value * emt;
    const double lower_margin = kSigmaRule * std::hypot(v_hat.se, pt.overlap.se * emt);
    out.lower_ok = v_hat.value <= out.lower_rhs + lower_margin;

    if (j > 0) {
      const auto& prev = curve.points[j - 1];
      const double mono_margin = 2.0 * std::hypot(pt.overlap.se, prev.overlap.se);
      out.mono_ok = pt.overlap.value <= prev.overlap.value + mono_margin;
    }
    rep.pass = rep.pass && out.nonneg_ok && out.upper_ok && out.lower_ok && out.mono_ok;
    rep.points.push_back(out);
  }
  return rep;
}

PeaksReport find_peaks(std::span<const double> x, const CovarianceKernel& kernel, double eps,
                       double delta) {
  if (!(eps > 0.0) || !(delta >= 0.0)) throw DomainError("find_peaks needs eps > 0, delta >= 0");
  if (x.size() != kernel.size()) throw LengthMismatch("field sample does not match kernel");
  const auto [imax, m] = argmax_with_value(x);

  std::vector<std::size_t> cand;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] >= m - delta) cand.push_back(i);
  std::sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
    if (x[a] != x[b]) return x[a] > x[b];
    return a < b;
  });

  PeaksReport rep;
  rep.eps = eps;
  rep.delta = delta;
  for (std::size_t i : cand) {
    bool ok = true;
    for (std::size_t j : rep.indices)
      if (kernel.eval(i, j) >= eps) {
        ok = false;
        break;
      }
    if (ok) rep.indices.push_back(i);
  }
  rep.l = rep.indices.size();

  rep.pairwise_max_r = -std::numeric_limits<double>::infinity();
  double min_val = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < rep.indices.size(); ++a) {
    min_val = std::min(min_val, x[rep.indices[a]]);
    for (std::size_t b = a + 1; b < rep.indices.size(); ++b)
      rep.pairwise_max_r = std::max(rep.pairwise_max_r, kernel.eval(rep.indices[a], rep.indices[b]));
  }
  if (rep.indices.size() < 2) rep.pairwise_max_r = 0.0;
  rep.min_value_gap = rep.indices.empty() ? 0.0 : m - min_val;
  rep.success = !rep.indices.empty() && rep.pairwise_max_r < eps && rep.min_value_gap <= delta;
  return rep;
}

TailReport tail_profile(const FieldSampler& sampler, const MCConfig& cfg,
                        std::span<const double> r_grid) {
  cfg.validate();
  for (double r : r_grid)
    if (r < 0.0) throw DomainError("tail r grid must be nonnegative");
  std::vector<double> ms(cfg.n_samples);
  replica_map(cfg, [&](std::size_t r, RngStream& rng) { ms[r] = sampler.max_value(rng); });
  const double m_hat = mean_with_se(ms).value;
  const double sigma_sq = sampler.sigma_sq();

  TailReport rep;
  rep.pass = true;
  for (double r : r_grid) {
    TailPoint pt;
    pt.r = r;
    double up = 0.0, lo = 0.0;
    for (double m : ms) {
      up += (m - m_hat >= r);
      lo += (m - m_hat <= -r);
    }
    pt.upper_emp = freq_with_se(up, cfg.n_samples);
    pt.lower_emp = freq_with_se(lo, cfg.n_samples);
    pt.borell_bound = std::exp(-r * r / (2.0 * sigma_sq));
    pt.pass = pt.upper_emp.value <= pt.borell_bound + kSigmaRule * pt.upper_emp.se &&
              pt.lower_emp.value <= pt.borell_bound + kSigmaRule * pt.lower_emp.se;
    rep.pass = rep.pass && pt.pass;
    rep.points.push_back(pt);
  }
  return rep;
}

PredictionReport prediction_check(const FieldSampler& sampler, const MCConfig& cfg, double t) {
  cfg.validate();
  if (std::abs(sampler.sigma_sq() - 1.0) > 1e-9)
    throw DomainError("prediction_check needs a unit-variance kernel");
  std::vector<double> ms(cfg.n_samples), vals(cfg.n_samples);
  replica_map(cfg, [&](std::size_t r, RngStream& rng) {
    const CoupledStats c = sampler.coupled_run(rng, t);
    ms[r] = c.m0;
    vals[r] = c.x0_at_it;
  });
  const double m_hat = mean_with_se(ms).value;
  const double emt = std::exp(-std::min(t, kOuTimeCap));

  PredictionReport rep;
  rep.t = t;
  rep.pass = true;
  for (double x : {1.0, 2.0, 3.0}) {
    PredictionReport::Point pt;
    pt.x = x;
    double count = 0.0;
    for (double v : vals) count += std::abs(v - emt * m_hat) >= x;
    pt.emp = freq_with_se(count, cfg.n_samples);
    pt.bound = 4.0 * std::exp(-x * x / 4.0);
    pt.pass = pt.emp.value <= pt.bound + kSigmaRule * pt.emp.se;
    rep.pass = rep.pass && pt.pass;
    rep.points.push_back(pt);
  }
  return rep;
}

SlepianReport slepian_check(const DenseFieldSampler& sampler_x,
                            const DenseFieldSampler& sampler_y, const MCConfig& cfg) {
  const auto& kx = sampler_x.kernel();
  const auto& ky = sampler_y.kernel();
  if (kx.size() != ky.size()) throw DomainError("slepian_check needs equal index sizes");
  if (kx.mode() == CovarianceKernel::Mode::Dense && ky.mode() == CovarianceKernel::Mode::Dense) {
    const double tol = 1e-9 * std::max(kx.sigma_sq(), ky.sigma_sq());
    for (std::size_t i = 0; i < kx.size(); ++i) {
      if (std::abs(kx.eval(i, i) - ky.eval(i, i)) > tol)
        throw KernelOrderViolated("variances differ at index " + std::to_string(i));
      for (std::size_t j = 0; j < kx.size(); ++j)
        if (kx.eval(i, j) < ky.eval(i, j) - tol)
          throw KernelOrderViolated("covariance order violated at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
    }
  }
  return slepian_check(static_cast<const FieldSampler&>(sampler_x),
                       static_cast<const FieldSampler&>(sampler_y), cfg);
}

SlepianReport slepian_check(const FieldSampler& sampler_x, const FieldSampler& sampler_y,
                            const MCConfig& cfg) {
  cfg.validate();
  std::vector<double> mx(cfg.n_samples), my(cfg.n_samples);
  replica_map(cfg, [&](std::size_t r, RngStream& rng) { mx[r] = sampler_x.max_value(rng); });
  parallel_for(cfg.n_samples, cfg.n_workers, [&](std::size_t r) {
    RngStream rng(cfg.master_seed + 0x9e3779b97f4a7c15ull, r);
    my[r] = sampler_y.max_value(rng);
  });
  SlepianReport rep;
  rep.m_x = mean_with_se(mx);
  rep.m_y = mean_with_se(my);
  rep.pass = rep.m_x.value <= rep.m_y.value + kSigmaRule * std::hypot(rep.m_x.se, rep.m_y.se);
  return rep;
}

std::vector<ScalingRow> scaling_sweep(
    const std::function<std::unique_ptr<FieldSampler>(int)>& factory,
    std::span<const int> n_list, const MCConfig& cfg) {
  cfg.validate();
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1]) throw DomainError("n_list must be increasing");
  std::vector<ScalingRow> rows;
  for (int n : n_list) {
    const auto sampler = factory(n);
    ScalingRow row;
    row.n = n;
    const MaxStats stats = estimate_max_stats(*sampler, cfg);
    row.m_hat = stats.m_hat;
    row.v_hat = stats.v_hat;
    row.sigma_sq = sampler->sigma_sq();
    row.log_index_count = sampler->log_index_count();
    row.v_ratio = row.v_hat.value / row.sigma_sq;
    if (std::isfinite(row.log_index_count) && row.log_index_count > 0.0)
      row.alpha_hat = row.m_hat.value / std::sqrt(2.0 * row.sigma_sq * row.log_index_count);
    if (!cfg.t_grid.empty()) {
      const OverlapCurve curve = estimate_overlap_curve(*sampler, cfg);
      row.overlaps = curve.points;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

HyperReport hyper_check(const DenseFieldSampler& sampler, std::size_t event_index, double t,
                        const MCConfig& cfg) {
  cfg.validate();
  if (event_index >= sampler.index_count()) throw DomainError("event index out of range");
  std::vector<double> f0(cfg.n_samples), both(cfg.n_samples);
  replica_map(cfg, [&](std::size_t r, RngStream& rng) {
    const CoupledStats c = sampler.coupled_run(rng, t);
    const bool e0 = c.i0 == static_cast<long long>(event_index);
    const bool et = c.it == static_cast<long long>(event_index);
    f0[r] = e0;
    both[r] = e0 && et;
  });
  HyperReport rep;
  double s0 = std::accumulate(f0.begin(), f0.end(), 0.0);
  double sb = std::accumulate(both.begin(), both.end(), 0.0);
  rep.event_p = freq_with_se(s0, cfg.n_samples);
  rep.lhs = freq_with_se(sb, cfg.n_samples);
  const double expo = 1.0 + std::tanh(t / 2.0);
  rep.rhs = std::pow(rep.event_p.value, expo);
  // delta method: d/dp p^a = a p^(a-1)
  rep.rhs_se = rep.event_p.value > 0.0
                   ? expo * std::pow(rep.event_p.value, expo - 1.0) * rep.event_p.se
                   : 0.0;
  rep.pass = rep.lhs.value <= rep.rhs + kSigmaRule * std::hypot(rep.lhs.se, rep.rhs_se);
  return rep;
}

}  // namespace superconc
