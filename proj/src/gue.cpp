#include "superconc/models/gue.hpp"

#include <cmath>
#include <limits>

#include "superconc/errors.hpp"

namespace superconc {

Eigen::MatrixXcd gue_sample(int n, RngStream& rng) {
  if (n < 2) throw DomainError("GUE needs n >= 2");
  Eigen::MatrixXcd a(n, n);
  static constexpr double kInvSqrt2 = 0.7071067811865476;
  for (int i = 0; i < n; ++i) {
    a(i, i) = std::complex<double>(rng.normal(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      const double re = kInvSqrt2 * rng.normal();
      const double im = kInvSqrt2 * rng.normal();
      a(i, j) = std::complex<double>(re, im);
      a(j, i) = std::complex<double>(re, -im);
    }
  }
  return a;
}

std::pair<double, Eigen::VectorXcd> gue_top_eigpair(const Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  const double shift = 3.0 * std::sqrt(static_cast<double>(n));
  const double res_tol = 1e-10 * a.norm();

  Eigen::VectorXcd u = Eigen::VectorXcd::Constant(n, std::complex<double>(1.0, 0.0));
  u.normalize();
  Eigen::VectorXcd w(n);
  double mu_prev = std::numeric_limits<double>::infinity();
  constexpr long kMaxIter = 100000;
  for (long iter = 0; iter < kMaxIter; ++iter) {
    w.noalias() = a * u;
    w += shift * u;
    const double mu = w.dot(u).real();  // Rayleigh quotient of the shifted matrix
    const double res = (w - mu * u).norm();
    u = w / w.norm();
    if (std::abs(mu - mu_prev) < 1e-12 && res <= res_tol)
      return {mu - shift, std::move(u)};
    mu_prev = mu;
  }
  throw NoConvergence("power iteration did not converge (near-degenerate top eigenvalues)");
}

double gue_overlap(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  return std::norm(u.dot(v));
}

GueSampler::GueSampler(int n) : n_(n) {
  if (n < 2) throw DomainError("GUE needs n >= 2");
}

double GueSampler::log_index_count() const {
  return std::numeric_limits<double>::infinity();
}

Eigen::MatrixXcd GueSampler::assemble(std::span<const double> w) const {
  if (w.size() != disorder_dim()) throw LengthMismatch("GUE disorder size mismatch");
  Eigen::MatrixXcd a(n_, n_);
  static constexpr double kInvSqrt2 = 0.7071067811865476;
  std::size_t s = 0;
  for (int i = 0; i < n_; ++i) a(i, i) = std::complex<double>(w[s++], 0.0);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      const double re = kInvSqrt2 * w[s++];
      const double im = kInvSqrt2 * w[s++];
      a(i, j) = std::complex<double>(re, im);
      a(j, i) = std::complex<double>(re, -im);
    }
  return a;
}

double GueSampler::max_from(std::span<const double> w) const {
  return gue_top_eigpair(assemble(w)).first;
}

CoupledStats GueSampler::coupled_from(std::span<const double> w0,
                                      std::span<const double> wt) const {
  const Eigen::MatrixXcd a0 = assemble(w0);
  const Eigen::MatrixXcd at = assemble(wt);
  const auto [lam0, u0] = gue_top_eigpair(a0);
  const auto [lamt, ut] = gue_top_eigpair(at);
  CoupledStats c;
  c.m0 = lam0;
  c.mt = lamt;
  c.overlap = gue_overlap(u0, ut);
  c.x0_at_it = ut.dot(a0 * ut).real();
  return c;
}

}  // namespace superconc
