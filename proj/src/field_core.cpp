#include "superconc/field_core.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "superconc/errors.hpp"

namespace superconc {

namespace {

std::atomic<std::uint64_t> g_tie_count{0};

struct Scratch {
  std::vector<double> w0, w1, wt, x0, xt;
};

Scratch& tls_scratch() {
  thread_local Scratch s;
  return s;
}

}  // namespace

void ou_perturb(std::span<const double> x0, std::span<const double> xprime, double t,
                std::span<double> out) {
  if (x0.size() != xprime.size() || x0.size() != out.size())
    throw LengthMismatch("ou_perturb: vector lengths differ");
  if (t < 0.0) throw DomainError("ou_perturb: t must be nonnegative");
  t = std::min(t, kOuTimeCap);
  const double a = std::exp(-t);
  const double b = std::sqrt(std::max(0.0, 1.0 - a * a));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * x0[i] + b * xprime[i];
}

std::vector<double> ou_perturb(std::span<const double> x0, std::span<const double> xprime,
                               double t) {
  std::vector<double> out(x0.size());
  ou_perturb(x0, xprime, t, out);
  return out;
}

std::pair<std::size_t, double> argmax_with_value(std::span<const double> x) {
  if (x.empty()) throw EmptyVector("argmax of an empty vector");
  std::size_t best = 0;
  bool tied = false;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] > x[best]) {
      best = i;
      tied = false;
    } else if (x[i] == x[best]) {
      tied = true;  // smallest index wins
    }
  }
  if (tied) g_tie_count.fetch_add(1, std::memory_order_relaxed);
  return {best, x[best]};
}

std::uint64_t argmax_tie_count() { return g_tie_count.load(std::memory_order_relaxed); }

double FieldSampler::max_value(RngStream& rng) const {
  auto& s = tls_scratch();
  s.w0.resize(disorder_dim());
  rng.fill_normal(s.w0);
  return max_from(s.w0);
}

CoupledStats FieldSampler::coupled_run(RngStream& rng, double t) const {
  auto& s = tls_scratch();
  s.w0.resize(disorder_dim());
  s.w1.resize(disorder_dim());
  s.wt.resize(disorder_dim());
  rng.fill_normal(s.w0);
  rng.fill_normal(s.w1);
  ou_perturb(s.w0, s.w1, t, s.wt);
  return coupled_from(s.w0, s.wt);
}

void FieldSampler::curve_run(RngStream& rng, std::span<const double> t_grid,
                             std::span<CoupledStats> out) const {
  if (t_grid.size() != out.size())
    throw LengthMismatch("curve_run: output span size must match t_grid");
  auto& s = tls_scratch();
  s.w0.resize(disorder_dim());
  s.w1.resize(disorder_dim());
  s.wt.resize(disorder_dim());
  rng.fill_normal(s.w0);
  rng.fill_normal(s.w1);
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    ou_perturb(s.w0, s.w1, t_grid[k], s.wt);
    out[k] = coupled_from(s.w0, s.wt);
  }
}

double DenseFieldSampler::log_index_count() const {
  return std::log(static_cast<double>(index_count()));
}

double DenseFieldSampler::max_from(std::span<const double> w) const {
  auto& s = tls_scratch();
  s.x0.resize(index_count());
  field_values(w, s.x0);
  return argmax_with_value(s.x0).second;
}

CoupledStats DenseFieldSampler::coupled_from(std::span<const double> w0,
                                             std::span<const double> wt) const {
  auto& s = tls_scratch();
  s.x0.resize(index_count());
  s.xt.resize(index_count());
  field_values(w0, s.x0);
  field_values(wt, s.xt);
  const auto [i0, m0] = argmax_with_value(s.x0);
  const auto [it, mt] = argmax_with_value(s.xt);
  CoupledStats c;
  c.m0 = m0;
  c.mt = mt;
  c.overlap = kernel().eval(i0, it);
  c.x0_at_it = s.x0[it];
  c.i0 = static_cast<long long>(i0);
  c.it = static_cast<long long>(it);
  return c;
}

ArgmaxRecord DenseFieldSampler::coupled_argmax(RngStream& rng, double t) const {
  const CoupledStats c = coupled_run(rng, t);
  ArgmaxRecord rec;
  rec.i0 = static_cast<std::size_t>(c.i0);
  rec.it = static_cast<std::size_t>(c.it);
  rec.m0 = c.m0;
  rec.mt = c.mt;
  rec.overlap = c.overlap;
  return rec;
}

CholeskySampler::CholeskySampler(Eigen::MatrixXd covariance)
    : kernel_(std::move(covariance)), factor_(cholesky_factor(kernel_.matrix())) {
  check_nondegenerate(kernel_);
}

void CholeskySampler::field_values(std::span<const double> w, std::span<double> x) const {
  Eigen::Map<const Eigen::VectorXd> wv(w.data(), static_cast<Eigen::Index>(w.size()));
  Eigen::Map<Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
  xv.noalias() = factor_.triangularView<Eigen::Lower>() * wv;
}

IidSampler::IidSampler(std::size_t n, double sigma_sq)
    : kernel_(n, sigma_sq), sigma_(std::sqrt(sigma_sq)) {
  if (n < 1) throw DomainError("iid field needs at least one coordinate");
  if (!(sigma_sq > 0.0)) throw DomainError("iid field needs positive variance");
}

void IidSampler::field_values(std::span<const double> w, std::span<double> x) const {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = sigma_ * w[i];
}

std::vector<double> sample_field(const DenseFieldSampler& sampler, RngStream& rng) {
  std::vector<double> w(sampler.disorder_dim());
  rng.fill_normal(w);
  std::vector<double> x(sampler.index_count());
  sampler.field_values(w, x);
  return x;
}

double exp_time_overlap(const FieldSampler& sampler, RngStream& rng) {
  const double tau = rng.exponential();
  return sampler.coupled_run(rng, tau).overlap;
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  workers = std::max(1, workers);
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    constexpr std::size_t kChunk = 16;
    for (;;) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= n) return;
      const std::size_t end = std::min(n, begin + kChunk);
      for (std::size_t i = begin; i < end; ++i) fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers) - 1);
  for (int t = 1; t < workers; ++t) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
}

}  // namespace superconc
