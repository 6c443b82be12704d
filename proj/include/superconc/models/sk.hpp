#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "superconc/field_core.hpp"
#include "superconc/xi.hpp"

namespace superconc {

// cov(X_sigma, X_sigma') = xi(sigma.sigma'/n) over the listed spin states.
class SkKernel final : public CovarianceKernel {
 public:
  SkKernel(XiSpec xi, int n, std::vector<std::uint32_t> states)
      : xi_(std::move(xi)), n_(n), states_(std::move(states)) {}
  Mode mode() const override { return Mode::Implicit; }
  std::size_t size() const override { return states_.size(); }
  double eval(std::size_t i, std::size_t j) const override {
    const int dot = n_ - 2 * __builtin_popcount(states_[i] ^ states_[j]);
    return xi_.eval(static_cast<double>(dot) / n_);
  }
  double sigma_sq() const override { return xi_.eval(1.0); }
  const std::vector<std::uint32_t>& states() const { return states_; }

 private:
  XiSpec xi_;
  int n_;
  std::vector<std::uint32_t> states_;
};

enum class SkBackend { Kernel, Disorder };

// Generalized SK energy landscape, normalized so that R(sigma, sigma) =
// xi(1) = 1: X_sigma = sum_p sqrt(c_p) n^{-p/2} sum_{i_1..i_p} g_{i_1..i_p}
// sigma_{i_1}...sigma_{i_p}, the sum running over all index tuples.
//
// Even mixtures make X_sigma = X_{-sigma} pathwise; the global sign
// symmetry is quotiented by fixing sigma_1 = +1, which restores the
// almost-sure distinctness of coordinates.
class SkSampler final : public DenseFieldSampler {
 public:
  SkSampler(XiSpec xi, int n, SkBackend backend);

  int n() const { return n_; }
  SkBackend backend() const { return backend_; }
  const XiSpec& xi() const { return xi_; }
  const std::vector<std::uint32_t>& states() const { return kernel_.states(); }

  const CovarianceKernel& kernel() const override { return kernel_; }
  std::size_t disorder_dim() const override { return disorder_dim_; }
  void field_values(std::span<const double> w, std::span<double> x) const override;

 private:
  XiSpec xi_;
  int n_;
  SkBackend backend_;
  SkKernel kernel_;
  std::size_t disorder_dim_ = 0;
  Eigen::MatrixXd factor_;              // kernel backend
  std::vector<int> active_p_;           // disorder backend
  std::vector<std::size_t> tensor_off_;
  std::vector<double> tensor_scale_;    // sqrt(c_p) * n^{-p/2}
};

// One field draw over the (possibly quotient) state list.
std::vector<double> sk_field(const SkSampler& model, RngStream& rng);

}  // namespace superconc
