#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>

#include "superconc/field_core.hpp"

namespace superconc {

// Draws an n x n GUE matrix: N(0,1) diagonal, independent upper-triangle
// entries with i.i.d. N(0,1/2) real and imaginary parts.
Eigen::MatrixXcd gue_sample(int n, RngStream& rng);

// Largest eigenvalue and unit eigenvector by shifted power iteration on
// A + 3*sqrt(n)*I. Converges when successive Rayleigh quotients differ by
// less than 1e-12 and the residual is below 1e-10*||A||_F; throws
// NoConvergence after 1e5 iterations (a near-degenerate top pair).
std::pair<double, Eigen::VectorXcd> gue_top_eigpair(const Eigen::MatrixXcd& a);

// |<u,v>|^2: squared modulus of the Hermitian inner product, invariant
// under the phase ambiguity of eigenvectors.
double gue_overlap(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);

// Gaussian field X_u = u* A u on the projective sphere, with
// cov(X_u, X_v) = |<u,v>|^2 and unit variance. The maximum is the largest
// eigenvalue and the argmax its eigenvector, so replicas work directly
// with the exact eigenpair.
class GueSampler final : public FieldSampler {
 public:
  explicit GueSampler(int n);

  int n() const { return n_; }
  std::size_t disorder_dim() const override { return static_cast<std::size_t>(n_) * n_; }
  double sigma_sq() const override { return 1.0; }
  double log_index_count() const override;  // continuum index set

  Eigen::MatrixXcd assemble(std::span<const double> w) const;

 protected:
  double max_from(std::span<const double> w) const override;
  CoupledStats coupled_from(std::span<const double> w0,
                            std::span<const double> wt) const override;

 private:
  int n_;
};

}  // namespace superconc
