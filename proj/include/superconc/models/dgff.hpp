#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "superconc/field_core.hpp"

namespace superconc {

enum class DgffBoundary { Zero, Torus };

// Torus Green covariance (I - (1-q)P)^{-1} with killing rate q = n^{-2},
// evaluated from a translation-invariant displacement table built in the
// 2-D Fourier eigenbasis of the walk: lambda_{jk} = (cos(2pi j/n) +
// cos(2pi k/n)) / 2. Every row sums to exactly 1/q = n^2.
class TorusGreenKernel final : public CovarianceKernel {
 public:
  explicit TorusGreenKernel(int n);

  Mode mode() const override { return Mode::Implicit; }
  std::size_t size() const override { return static_cast<std::size_t>(n_) * n_; }
  double eval(std::size_t i, std::size_t j) const override;
  double sigma_sq() const override { return table_[0]; }

  int n() const { return n_; }
  double displacement_cov(int dx, int dy) const;
  // Spectral weight 1/(1 - (1-q) lambda_{jk}).
  double mode_weight(int j, int k) const;

 private:
  int n_;
  double q_;
  std::vector<double> table_;  // covariance by displacement, row-major n x n
};

// Discrete Gaussian free field on the n x n grid.
//
// Zero boundary: the index set is the (n-2)^2 interior sites; boundary
// sites are pinned to zero and excluded (they are never maximal but would
// violate pairwise nondegeneracy). Covariance = (I - Q)^{-1} with Q the
// interior-restricted quarter transition matrix; sampled by Cholesky.
//
// Torus: covariance from TorusGreenKernel; sampled by synthesizing the
// spectrum with Hermitian Gaussian coefficients and one inverse FFT.
class DgffSampler final : public DenseFieldSampler {
 public:
  DgffSampler(int n, DgffBoundary boundary);
  ~DgffSampler() override;

  int n() const { return n_; }
  DgffBoundary boundary() const { return boundary_; }

  const CovarianceKernel& kernel() const override;
  std::size_t disorder_dim() const override;
  void field_values(std::span<const double> w, std::span<double> x) const override;

 private:
  struct FftPlan;

  int n_;
  DgffBoundary boundary_;
  std::unique_ptr<DenseKernel> zero_kernel_;
  Eigen::MatrixXd zero_factor_;
  std::unique_ptr<TorusGreenKernel> torus_kernel_;
  // Disorder slot -> spectral mode assignment; pair slots carry (re, im).
  std::vector<int> self_modes_;
  std::vector<std::pair<int, int>> pair_modes_;  // (mode, conjugate mode)
  std::vector<double> amp_;                      // sqrt(mode weight) / n
  std::unique_ptr<FftPlan> plan_;
};

// Convenience constructor used by tests and the CLI: the kernel of the
// requested DGFF flavor without a sampler.
std::unique_ptr<CovarianceKernel> dgff_covariance(int n, DgffBoundary boundary);

// Dense-ordering helpers for the zero-boundary field.
std::size_t dgff_interior_index(int n, int x, int y);

}  // namespace superconc
