#include "superconc/kernel.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "superconc/errors.hpp"

namespace superconc {

DenseKernel::DenseKernel(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1)
    throw DomainError("covariance matrix must be square and nonempty");
  const double scale = matrix_.cwiseAbs().maxCoeff();
  const double asym = (matrix_ - matrix_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(scale, 1.0))
    throw DomainError("covariance matrix is not symmetric");
  sigma_sq_ = matrix_.diagonal().maxCoeff();
  if (!(sigma_sq_ > 0.0)) throw DomainError("kernel has no positive-variance index");
}

Eigen::MatrixXd cholesky_factor(const Eigen::MatrixXd& matrix) {
  const double sigma_sq = matrix.diagonal().maxCoeff();
  Eigen::LLT<Eigen::MatrixXd> llt(matrix);
  if (llt.info() == Eigen::Success) return llt.matrixL();

  // One ridge attempt covers kernels that are PSD analytically but lose
  // definiteness to roundoff.
  Eigen::MatrixXd ridged = matrix;
  ridged.diagonal().array() += 1e-12 * sigma_sq;
  llt.compute(ridged);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  throw NotPSD("covariance matrix is not positive semidefinite (ridge retry failed)");
}

void check_nondegenerate(const CovarianceKernel& kernel) {
  const std::size_t n = kernel.size();
  const double tol = 1e-12 * std::max(kernel.sigma_sq(), 1.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = kernel.eval(i, i) + kernel.eval(j, j) - 2.0 * kernel.eval(i, j);
      if (d <= tol)
        throw DegenerateField("indices " + std::to_string(i) + " and " + std::to_string(j) +
                              " are almost surely equal (Var(X_i - X_j) = 0)");
    }
}

}  // namespace superconc
