#include "superconc/models/dgff.hpp"

#include <fftw3.h>

#include <Eigen/LU>
#include <cmath>
#include <mutex>
#include <numbers>

#include "superconc/errors.hpp"

namespace superconc {

namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

Eigen::MatrixXd zero_boundary_green(int n) {
  const int m = n - 2;  // interior side
  const std::size_t sites = static_cast<std::size_t>(m) * m;
  // Q = interior-restricted transition matrix of the simple random walk;
  // steps into the boundary are killed.
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(sites, sites);
  auto idx = [m](int x, int y) { return static_cast<Eigen::Index>(x * m + y); };
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      if (x > 0) q(idx(x, y), idx(x - 1, y)) = 0.25;
      if (x < m - 1) q(idx(x, y), idx(x + 1, y)) = 0.25;
      if (y > 0) q(idx(x, y), idx(x, y - 1)) = 0.25;
      if (y < m - 1) q(idx(x, y), idx(x, y + 1)) = 0.25;
    }
  const Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(sites, sites) - q;
  Eigen::MatrixXd green = lhs.partialPivLu().solve(Eigen::MatrixXd::Identity(sites, sites));
  // Symmetrize away the solver roundoff; G is symmetric analytically.
  green = ((green + green.transpose()) / 2.0).eval();
  return green;
}

}  // namespace

TorusGreenKernel::TorusGreenKernel(int n) : n_(n), q_(1.0 / (static_cast<double>(n) * n)) {
  if (n < 3) throw TooSmall("torus DGFF needs n >= 3");
  if (n > 64) throw TooLarge("torus DGFF table capped at n <= 64");
  table_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> weight(static_cast<std::size_t>(n_) * n_);
  for (int j = 0; j < n_; ++j)
    for (int k = 0; k < n_; ++k)
      weight[static_cast<std::size_t>(j) * n_ + k] = mode_weight(j, k);
  for (int dx = 0; dx < n_; ++dx)
    for (int dy = 0; dy < n_; ++dy) {
      double acc = 0.0;
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k)
          acc += weight[static_cast<std::size_t>(j) * n_ + k] *
                 std::cos(two_pi * (static_cast<double>(j) * dx + static_cast<double>(k) * dy) / n_);
      table_[static_cast<std::size_t>(dx) * n_ + dy] = acc / (static_cast<double>(n_) * n_);
    }
}

double TorusGreenKernel::mode_weight(int j, int k) const {
  const double two_pi = 2.0 * std::numbers::pi;
  const double lambda = (std::cos(two_pi * j / n_) + std::cos(two_pi * k / n_)) / 2.0;
  return 1.0 / (1.0 - (1.0 - q_) * lambda);
}

double TorusGreenKernel::displacement_cov(int dx, int dy) const {
  dx = ((dx % n_) + n_) % n_;
  dy = ((dy % n_) + n_) % n_;
  return table_[static_cast<std::size_t>(dx) * n_ + dy];
}

double TorusGreenKernel::eval(std::size_t i, std::size_t j) const {
  const int xi = static_cast<int>(i) / n_, yi = static_cast<int>(i) % n_;
  const int xj = static_cast<int>(j) / n_, yj = static_cast<int>(j) % n_;
  return displacement_cov(xi - xj, yi - yj);
}

struct DgffSampler::FftPlan {
  int n = 0;
  fftw_plan plan = nullptr;
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;

  explicit FftPlan(int n_side) : n(n_side) {
    const std::size_t cells = static_cast<std::size_t>(n) * n;
    in = fftw_alloc_complex(cells);
    out = fftw_alloc_complex(cells);
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = fftw_plan_dft_2d(n, n, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~FftPlan() {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    if (plan) fftw_destroy_plan(plan);
    fftw_free(in);
    fftw_free(out);
  }
};

DgffSampler::DgffSampler(int n, DgffBoundary boundary) : n_(n), boundary_(boundary) {
  if (n < 3) throw TooSmall("DGFF needs n >= 3");
  if (n > 64) throw TooLarge("dense DGFF capped at n <= 64");

  if (boundary_ == DgffBoundary::Zero) {
    zero_kernel_ = std::make_unique<DenseKernel>(zero_boundary_green(n_));
    zero_factor_ = cholesky_factor(zero_kernel_->matrix());
    check_nondegenerate(*zero_kernel_);
    return;
  }

  torus_kernel_ = std::make_unique<TorusGreenKernel>(n_);
  // Assign the n^2 real disorder slots to spectral modes: self-conjugate
  // modes take one real coefficient, conjugate pairs take (re, im).
  amp_.resize(static_cast<std::size_t>(n_) * n_);
  std::vector<char> seen(static_cast<std::size_t>(n_) * n_, 0);
  for (int j = 0; j < n_; ++j)
    for (int k = 0; k < n_; ++k) {
      const int mode = j * n_ + k;
      amp_[static_cast<std::size_t>(mode)] = std::sqrt(torus_kernel_->mode_weight(j, k)) / n_;
      if (seen[static_cast<std::size_t>(mode)]) continue;
      const int cj = (n_ - j) % n_, ck = (n_ - k) % n_;
      const int conj_mode = cj * n_ + ck;
      seen[static_cast<std::size_t>(mode)] = 1;
      if (conj_mode == mode) {
        self_modes_.push_back(mode);
      } else {
        seen[static_cast<std::size_t>(conj_mode)] = 1;
        pair_modes_.emplace_back(mode, conj_mode);
      }
    }
  plan_ = std::make_unique<FftPlan>(n_);
}

DgffSampler::~DgffSampler() = default;

const CovarianceKernel& DgffSampler::kernel() const {
  if (boundary_ == DgffBoundary::Zero) return *zero_kernel_;
  return *torus_kernel_;
}

std::size_t DgffSampler::disorder_dim() const {
  if (boundary_ == DgffBoundary::Zero) return zero_kernel_->size();
  return static_cast<std::size_t>(n_) * n_;
}

void DgffSampler::field_values(std::span<const double> w, std::span<double> x) const {
  if (boundary_ == DgffBoundary::Zero) {
    Eigen::Map<const Eigen::VectorXd> wv(w.data(), static_cast<Eigen::Index>(w.size()));
    Eigen::Map<Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
    xv.noalias() = zero_factor_.triangularView<Eigen::Lower>() * wv;
    return;
  }

  const std::size_t cells = static_cast<std::size_t>(n_) * n_;
  if (w.size() != cells || x.size() != cells) throw LengthMismatch("torus field size mismatch");

  struct Buffers {
    std::vector<std::complex<double>> in, out;
  };
  thread_local Buffers bufs;
  bufs.in.assign(cells, {0.0, 0.0});
  bufs.out.resize(cells);

  static constexpr double kInvSqrt2 = 0.7071067811865476;
  std::size_t slot = 0;
  for (const int mode : self_modes_) {
    bufs.in[static_cast<std::size_t>(mode)] = {amp_[static_cast<std::size_t>(mode)] * w[slot], 0.0};
    ++slot;
  }
  for (const auto& [mode, conj_mode] : pair_modes_) {
    const double re = kInvSqrt2 * w[slot++];
    const double im = kInvSqrt2 * w[slot++];
    bufs.in[static_cast<std::size_t>(mode)] = {amp_[static_cast<std::size_t>(mode)] * re,
                                               amp_[static_cast<std::size_t>(mode)] * im};
    bufs.in[static_cast<std::size_t>(conj_mode)] = {amp_[static_cast<std::size_t>(conj_mode)] * re,
                                                    -amp_[static_cast<std::size_t>(conj_mode)] * im};
  }

  fftw_execute_dft(plan_->plan, reinterpret_cast<fftw_complex*>(bufs.in.data()),
                   reinterpret_cast<fftw_complex*>(bufs.out.data()));
  for (std::size_t i = 0; i < cells; ++i) x[i] = bufs.out[i].real();
}

std::unique_ptr<CovarianceKernel> dgff_covariance(int n, DgffBoundary boundary) {
  if (boundary == DgffBoundary::Torus) return std::make_unique<TorusGreenKernel>(n);
  if (n < 3) throw TooSmall("DGFF needs n >= 3");
  if (n > 64) throw TooLarge("dense DGFF capped at n <= 64");
  return std::make_unique<DenseKernel>(zero_boundary_green(n));
}

std::size_t dgff_interior_index(int n, int x, int y) {
  const int m = n - 2;
  if (x < 1 || y < 1 || x > m || y > m) throw DomainError("site is not interior");
  return static_cast<std::size_t>(x - 1) * m + static_cast<std::size_t>(y - 1);
}

}  // namespace superconc
