#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "superconc/field_core.hpp"

namespace superconc {

struct MCConfig {
  std::size_t n_samples = 100000;
  std::uint64_t master_seed = 0;
  int n_workers = 1;
  std::vector<double> t_grid;

  void validate() const;
};

struct EstimateWithSE {
  double value = 0.0;
  double se = 0.0;
  std::size_t n = 0;
};

// Replica mean with standard error.
EstimateWithSE mean_with_se(std::span<const double> xs);
// Unbiased sample variance; SE from the asymptotic formula with the
// replica fourth central moment.
EstimateWithSE variance_with_se(std::span<const double> xs);
// Binomial frequency with normal-approximation SE.
EstimateWithSE freq_with_se(double successes, std::size_t n);

// m-hat and v-hat of the field maximum.
struct MaxStats {
  EstimateWithSE m_hat;
  EstimateWithSE v_hat;
};
MaxStats estimate_max_stats(const FieldSampler& sampler, const MCConfig& cfg);

struct OverlapPoint {
  double t = 0.0;
  EstimateWithSE overlap;
};
struct OverlapCurve {
  std::vector<OverlapPoint> points;
};
OverlapCurve estimate_overlap_curve(const FieldSampler& sampler, const MCConfig& cfg);

// Exponential-time identity v = E R(I^0, I^tau): both sides estimated from
// shared replicas, compared by the z-score of the difference.
struct IdentityReport {
  EstimateWithSE v_hat;
  EstimateWithSE overlap_mean;  // E-hat R(I^0, I^tau)
  double z = 0.0;
  bool pass = false;  // |z| <= 3
};
IdentityReport check_identity(const FieldSampler& sampler, const MCConfig& cfg);

// Fixed-t sandwich around the identity plus empirical monotonicity of the
// overlap curve.
struct TauberianPoint {
  double t = 0.0;
  double overlap = 0.0;
  double upper_bound = 0.0;  // v-hat / (1 - e^-t), t > 0 only
  double lower_rhs = 0.0;    // sigma^2 (1-e^-t) + overlap e^-t
  bool upper_ok = true;
  bool lower_ok = true;
  bool nonneg_ok = true;
  bool mono_ok = true;
};
struct TauberianReport {
  std::vector<TauberianPoint> points;
  bool pass = false;
};
TauberianReport check_tauberian(const OverlapCurve& curve, const EstimateWithSE& v_hat,
                                double sigma_sq);

// Greedy near-maximal low-overlap set: scan indices with X_i >= M - delta
// in decreasing value order, admit i when R(i,j) < eps for every admitted
// j. The result is maximal for this order, not globally maximal.
struct PeaksReport {
  std::vector<std::size_t> indices;
  std::size_t l = 0;
  double eps = 0.0;
  double delta = 0.0;
  double pairwise_max_r = 0.0;
  double min_value_gap = 0.0;  // M - min_{i in A} X_i
  bool success = false;        // reported conditions re-checked
};
PeaksReport find_peaks(std::span<const double> x, const CovarianceKernel& kernel, double eps,
                       double delta);

// Two-sided exceedance profile of M - m-hat against the Gaussian
// concentration bound e^{-r^2 / 2 sigma^2}.
struct TailPoint {
  double r = 0.0;
  EstimateWithSE upper_emp;  // P(M - m >= r)
  EstimateWithSE lower_emp;  // P(M - m <= -r)
  double borell_bound = 1.0;
  bool pass = true;
};
struct TailReport {
  std::vector<TailPoint> points;
  bool pass = false;
};
TailReport tail_profile(const FieldSampler& sampler, const MCConfig& cfg,
                        std::span<const double> r_grid);

// Value of the unperturbed field at the perturbed argmax concentrates at
// e^-t m: empirical frequency of |X_{I^t} - e^-t m| >= x tested against
// 4 e^{-x^2/4} at x = 1, 2, 3. Requires a unit-variance kernel.
struct PredictionReport {
  struct Point {
    double x = 0.0;
    EstimateWithSE emp;
    double bound = 0.0;
    bool pass = true;
  };
  double t = 0.0;
  std::vector<Point> points;
  bool pass = false;
};
PredictionReport prediction_check(const FieldSampler& sampler, const MCConfig& cfg, double t);

// Slepian comparison: equal variances and dominating covariances force
// m_X <= m_Y. The kernel-order precondition is verified when both kernels
// are dense; violation throws KernelOrderViolated.
struct SlepianReport {
  EstimateWithSE m_x;
  EstimateWithSE m_y;
  bool pass = false;  // m_x <= m_y + 3 combined SE
};
SlepianReport slepian_check(const DenseFieldSampler& sampler_x,
                            const DenseFieldSampler& sampler_y, const MCConfig& cfg);
SlepianReport slepian_check(const FieldSampler& sampler_x, const FieldSampler& sampler_y,
                            const MCConfig& cfg);

// Per-size statistics for trend tests: m-hat, v-hat, the superconcentration
// ratio v/sigma^2, the extremality ratio alpha = m / sqrt(2 sigma^2 log|S|),
// and overlap estimates at cfg.t_grid.
struct ScalingRow {
  int n = 0;
  EstimateWithSE m_hat;
  EstimateWithSE v_hat;
  double sigma_sq = 0.0;
  double log_index_count = 0.0;
  double v_ratio = 0.0;
  double alpha_hat = 0.0;
  std::vector<OverlapPoint> overlaps;
};
std::vector<ScalingRow> scaling_sweep(
    const std::function<std::unique_ptr<FieldSampler>(int)>& factory,
    std::span<const int> n_list, const MCConfig& cfg);

// Hypercontractive indicator bound E f(X) f(X^t) <= (E f)^{1 + tanh(t/2)}
// for f = 1{argmax = event_index}.
struct HyperReport {
  EstimateWithSE lhs;       // E-hat f(X) f(X^t)
  EstimateWithSE event_p;   // E-hat f
  double rhs = 0.0;         // (E-hat f)^{1+tanh(t/2)}
  double rhs_se = 0.0;      // delta-method SE of rhs
  bool pass = false;        // lhs <= rhs + 3 combined SE
};
HyperReport hyper_check(const DenseFieldSampler& sampler, std::size_t event_index, double t,
                        const MCConfig& cfg);

}  // namespace superconc
