#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "superconc/kernel.hpp"
#include "superconc/rng.hpp"

namespace superconc {

// OU time at which the perturbed copy is numerically independent of the
// original (e^-50 is far below double roundoff for our statistics).
inline constexpr double kOuTimeCap = 50.0;

// e^-t * x0 + sqrt(1 - e^-2t) * xprime, elementwise. t is clamped at
// kOuTimeCap, which represents t = +infinity.
void ou_perturb(std::span<const double> x0, std::span<const double> xprime, double t,
                std::span<double> out);
std::vector<double> ou_perturb(std::span<const double> x0, std::span<const double> xprime,
                               double t);

// Smallest index attaining the maximum, and the maximum itself.
std::pair<std::size_t, double> argmax_with_value(std::span<const double> x);

// Number of exact float ties seen by argmax_with_value since process start.
// The models here are nondegenerate, so ties are measure zero; a nonzero
// count flags a degenerate kernel slipping through.
std::uint64_t argmax_tie_count();

// One coupled experiment on a field with an indexable state space.
struct ArgmaxRecord {
  std::size_t i0 = 0;
  std::size_t it = 0;
  double m0 = 0.0;
  double mt = 0.0;
  double overlap = 0.0;  // R(i0, it)
};

// Scalar statistics of one coupled draw (X, X^t); the common currency
// between samplers and estimators. Structured models (polymer, GUE, ...)
// fill the values but leave the indices at -1.
struct CoupledStats {
  double m0 = 0.0;        // max_i X^0_i
  double mt = 0.0;        // max_i X^t_i
  double overlap = 0.0;   // R(I^0, I^t)
  double x0_at_it = 0.0;  // X^0 evaluated at I^t
  long long i0 = -1;
  long long it = -1;
};

// A centered Gaussian field with a fixed covariance structure, sampled by
// pushing an i.i.d. standard normal disorder vector through a linear map.
// The OU coupling acts on the disorder, which by linearity induces the
// field-level coupling X^t = e^-t X + sqrt(1-e^-2t) X'.
//
// Samplers are immutable after construction and safe for concurrent reads.
class FieldSampler {
 public:
  virtual ~FieldSampler() = default;

  virtual std::size_t disorder_dim() const = 0;
  virtual double sigma_sq() const = 0;
  virtual double log_index_count() const = 0;  // log |S|; +inf if continuous

  // One replica: M = max_i X_i.
  virtual double max_value(RngStream& rng) const;

  // One coupled replica at fixed OU time t.
  virtual CoupledStats coupled_run(RngStream& rng, double t) const;

  // One coupled replica per grid point, sharing the same (X, X') draw
  // across the grid. out.size() must equal t_grid.size().
  virtual void curve_run(RngStream& rng, std::span<const double> t_grid,
                         std::span<CoupledStats> out) const;

 protected:
  virtual double max_from(std::span<const double> w) const = 0;
  virtual CoupledStats coupled_from(std::span<const double> w0,
                                    std::span<const double> wt) const = 0;
};

// Field whose index set is small enough to materialize, with an explicit
// covariance kernel. Enables the estimators that need per-index access
// (peak search, hypercontractivity events).
class DenseFieldSampler : public FieldSampler {
 public:
  virtual const CovarianceKernel& kernel() const = 0;
  virtual void field_values(std::span<const double> w, std::span<double> x) const = 0;

  std::size_t index_count() const { return kernel().size(); }
  double sigma_sq() const override { return kernel().sigma_sq(); }
  double log_index_count() const override;

  ArgmaxRecord coupled_argmax(RngStream& rng, double t) const;

 protected:
  double max_from(std::span<const double> w) const override;
  CoupledStats coupled_from(std::span<const double> w0,
                            std::span<const double> wt) const override;
};

// Samples X = L w from the Cholesky factor of a dense kernel.
class CholeskySampler final : public DenseFieldSampler {
 public:
  explicit CholeskySampler(Eigen::MatrixXd covariance);

  const CovarianceKernel& kernel() const override { return kernel_; }
  std::size_t disorder_dim() const override { return kernel_.size(); }
  void field_values(std::span<const double> w, std::span<double> x) const override;

  const Eigen::MatrixXd& factor() const { return factor_; }

 private:
  DenseKernel kernel_;
  Eigen::MatrixXd factor_;
};

// n i.i.d. N(0, sigma^2) coordinates; the disorder is the field itself.
class IidSampler final : public DenseFieldSampler {
 public:
  explicit IidSampler(std::size_t n, double sigma_sq = 1.0);

  const CovarianceKernel& kernel() const override { return kernel_; }
  std::size_t disorder_dim() const override { return kernel_.size(); }
  void field_values(std::span<const double> w, std::span<double> x) const override;

 private:
  IidKernel kernel_;
  double sigma_;
};

// One field draw X = (X_i)_{i in S} from a fresh disorder vector.
std::vector<double> sample_field(const DenseFieldSampler& sampler, RngStream& rng);

// Overlap R(I^0, I^tau) for tau ~ Exponential(mean 1) drawn independently of
// the field. Its replica mean estimates Var(M).
double exp_time_overlap(const FieldSampler& sampler, RngStream& rng);

// Runs `fn(replica_index)` for every replica, split across `workers`
// threads. Work per replica must be independent; determinism comes from
// per-replica rng streams plus index-ordered reduction by the caller.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace superconc
