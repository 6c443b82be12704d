#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "superconc/field_core.hpp"

namespace superconc {

// Covariance of the multiple-peaks-without-chaos field: columns are
// independent (R = 0 across k), and within a column the Y-agreement count
// enters through the rho-damping of columns k > 1.
class CeAKernel final : public CovarianceKernel {
 public:
  CeAKernel(int n, double rho) : n_(n), rho_(rho) {}
  Mode mode() const override { return Mode::Implicit; }
  std::size_t size() const override { return static_cast<std::size_t>(n_) << n_; }
  double eval(std::size_t i, std::size_t j) const override;
  double sigma_sq() const override { return 1.0; }

 private:
  int n_;
  double rho_;
};

// Multiple peaks without chaos: X_f^k = Y_f^k for k = 1 and
// rho Y_f^k + sqrt(1-rho^2) Z_k for k > 1, with rho = 1 - n^(-1/3) and
// Y_f^k = sum_i g^k_{i f(i)} / sqrt(n) over f : {1..n} -> {0,1}.
//
// Replica statistics use the per-column closed form
// max_f Y_f^k = sum_i max(g^k_{i0}, g^k_{i1}) / sqrt(n); the explicit
// (k,f) enumeration (for the peak search) is available for n <= 20.
class CeASampler final : public DenseFieldSampler {
 public:
  explicit CeASampler(int n);

  int n() const { return n_; }
  double rho() const { return rho_; }

  const CovarianceKernel& kernel() const override { return kernel_; }
  std::size_t disorder_dim() const override {
    return 2 * static_cast<std::size_t>(n_) * n_ + static_cast<std::size_t>(n_);
  }
  double sigma_sq() const override { return 1.0; }
  double log_index_count() const override;

  // Explicit enumeration of all n * 2^n values; throws TooLarge if n > 20.
  void field_values(std::span<const double> w, std::span<double> x) const override;

  struct Draw {
    double m = 0.0;
    int k_star = 0;               // maximizing column
    std::uint32_t f_star = 0;     // maximizing map within that column
  };
  Draw sample_max(std::span<const double> w) const;

 protected:
  double max_from(std::span<const double> w) const override;
  CoupledStats coupled_from(std::span<const double> w0,
                            std::span<const double> wt) const override;

 private:
  double g_entry(std::span<const double> w, int k, int j, int i) const {
    return w[(static_cast<std::size_t>(k) * 2 + static_cast<std::size_t>(j)) * n_ +
             static_cast<std::size_t>(i)];
  }
  double z_entry(std::span<const double> w, int k) const {
    return w[2 * static_cast<std::size_t>(n_) * n_ + static_cast<std::size_t>(k)];
  }

  int n_;
  double rho_;
  CeAKernel kernel_;
};

// Chaos without strong multiple peaks: X_f = sum_i g_{i f(i)} / sqrt(n)
// over all f : {1..n} -> {1..n}, R(f,f') = |{i : f(i)=f'(i)}| / n. The
// maximum decomposes as M = sum_i max_j g_{ij} / sqrt(n), which the sampler
// evaluates row by row, so n up to 1e4 is cheap.
class CeBSampler final : public FieldSampler {
 public:
  explicit CeBSampler(int n);

  int n() const { return n_; }
  std::size_t disorder_dim() const override { return static_cast<std::size_t>(n_) * n_; }
  double sigma_sq() const override { return 1.0; }
  double log_index_count() const override;

  double max_value(RngStream& rng) const override;
  CoupledStats coupled_run(RngStream& rng, double t) const override;
  void curve_run(RngStream& rng, std::span<const double> t_grid,
                 std::span<CoupledStats> out) const override;

  struct Draw {
    double m = 0.0;
    std::vector<int> f_star;  // f*(i) = argmax_j g_{ij}
  };
  Draw sample_with_maximizer(RngStream& rng) const;

 protected:
  double max_from(std::span<const double> w) const override;
  CoupledStats coupled_from(std::span<const double> w0,
                            std::span<const double> wt) const override;

 private:
  int n_;
};

// One fresh draw of each counterexample field's maximum via its closed
// form, with the maximizing state.
CeASampler::Draw ce_a_sample(const CeASampler& model, RngStream& rng);
CeBSampler::Draw ce_b_sample(const CeBSampler& model, RngStream& rng);

}  // namespace superconc
