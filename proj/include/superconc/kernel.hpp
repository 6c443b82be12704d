#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <memory>
#include <utility>

namespace superconc {

// Covariance kernel R(i,j) of a centered Gaussian field on a finite index
// set. Dense kernels hold the full matrix; implicit kernels evaluate a
// model-specific formula on demand.
class CovarianceKernel {
 public:
  enum class Mode { Dense, Implicit };

  virtual ~CovarianceKernel() = default;
  virtual Mode mode() const = 0;
  virtual std::size_t size() const = 0;
  virtual double eval(std::size_t i, std::size_t j) const = 0;

  // sigma^2 = max_i R(i,i)
  virtual double sigma_sq() const = 0;
};

class DenseKernel final : public CovarianceKernel {
 public:
  explicit DenseKernel(Eigen::MatrixXd matrix);

  Mode mode() const override { return Mode::Dense; }
  std::size_t size() const override { return static_cast<std::size_t>(matrix_.rows()); }
  double eval(std::size_t i, std::size_t j) const override {
    return matrix_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double sigma_sq() const override { return sigma_sq_; }

  const Eigen::MatrixXd& matrix() const { return matrix_; }

 private:
  Eigen::MatrixXd matrix_;
  double sigma_sq_;
};

// Unit-variance (or sigma^2-scaled) i.i.d. kernel.
class IidKernel final : public CovarianceKernel {
 public:
  IidKernel(std::size_t n, double sigma_sq = 1.0) : n_(n), sigma_sq_(sigma_sq) {}
  Mode mode() const override { return Mode::Implicit; }
  std::size_t size() const override { return n_; }
  double eval(std::size_t i, std::size_t j) const override {
    return i == j ? sigma_sq_ : 0.0;
  }
  double sigma_sq() const override { return sigma_sq_; }

 private:
  std::size_t n_;
  double sigma_sq_;
};

// Lower-triangular Cholesky factor of a symmetric PSD matrix. If the first
// factorization fails, a single ridge of 1e-12*sigma^2 is added to the
// diagonal before retrying; throws NotPSD if that also fails.
Eigen::MatrixXd cholesky_factor(const Eigen::MatrixXd& matrix);

// Throws DegenerateField if some pair of indices has Var(X_i - X_j) = 0,
// i.e. the field violates the almost-sure-distinctness assumption.
void check_nondegenerate(const CovarianceKernel& kernel);

}  // namespace superconc
