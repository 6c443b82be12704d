#include "superconc/models/sk.hpp"

#include <cmath>

#include "superconc/errors.hpp"

namespace superconc {

namespace {

std::vector<std::uint32_t> make_states(int n, bool quotient) {
  std::vector<std::uint32_t> states;
  const std::uint32_t total = 1u << n;
  states.reserve(quotient ? total / 2 : total);
  for (std::uint32_t b = 0; b < total; ++b) {
    if (quotient && !(b & 1u)) continue;  // fix sigma_1 = +1 (bit 0 set)
    states.push_back(b);
  }
  return states;
}

}  // namespace

SkSampler::SkSampler(XiSpec xi, int n, SkBackend backend)
    : xi_(xi),
      n_(n),
      backend_(backend),
      kernel_(std::move(xi), n, make_states(n, xi_.even())) {
  xi_.validate_mixture();
  if (n_ < 1) throw DomainError("SK model needs n >= 1");

  if (backend_ == SkBackend::Kernel) {
    if (n_ > 14) throw BackendInfeasible("kernel backend limited to n <= 14 (2^n states)");
    const std::size_t m = kernel_.size();
    Eigen::MatrixXd cov(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j <= i; ++j)
        cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            cov(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = kernel_.eval(i, j);
    factor_ = cholesky_factor(cov);
    check_nondegenerate(kernel_);
    disorder_dim_ = m;
    return;
  }

  // Disorder backend: explicit Gaussian tensors for every active p.
  std::size_t off = 0;
  for (std::size_t p = 2; p < xi_.coeffs.size(); ++p) {
    if (xi_.coeffs[p] == 0.0) continue;
    if (p > 4) throw BackendInfeasible("disorder backend limited to mixtures with max p <= 4");
    double cells = 1.0;
    for (std::size_t k = 0; k < p; ++k) cells *= n_;
    if (cells > 1e7) throw BackendInfeasible("disorder backend needs n^p <= 1e7");
    active_p_.push_back(static_cast<int>(p));
    tensor_off_.push_back(off);
    tensor_scale_.push_back(std::sqrt(xi_.coeffs[p]) *
                            std::pow(static_cast<double>(n_), -static_cast<double>(p) / 2.0));
    off += static_cast<std::size_t>(cells);
  }
  if (active_p_.empty()) throw DomainError("mixture has no active term");
  disorder_dim_ = off;
  check_nondegenerate(kernel_);
}

void SkSampler::field_values(std::span<const double> w, std::span<double> x) const {
  const auto& states = kernel_.states();
  if (x.size() != states.size()) throw LengthMismatch("SK output size mismatch");

  if (backend_ == SkBackend::Kernel) {
    Eigen::Map<const Eigen::VectorXd> wv(w.data(), static_cast<Eigen::Index>(w.size()));
    Eigen::Map<Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
    xv.noalias() = factor_.triangularView<Eigen::Lower>() * wv;
    return;
  }

  std::vector<double> spins(static_cast<std::size_t>(n_));
  std::vector<double> buf_a, buf_b;
  for (std::size_t s = 0; s < states.size(); ++s) {
    const std::uint32_t bits = states[s];
    for (int i = 0; i < n_; ++i) spins[static_cast<std::size_t>(i)] = (bits >> i) & 1u ? 1.0 : -1.0;
    double total = 0.0;
    for (std::size_t a = 0; a < active_p_.size(); ++a) {
      const int p = active_p_[a];
      std::size_t cells = 1;
      for (int k = 0; k < p; ++k) cells *= static_cast<std::size_t>(n_);
      // Contract one index at a time: g[i_1..i_p] -> sum_{i_p} g * s_{i_p}.
      const double* src = w.data() + tensor_off_[a];
      buf_a.assign(src, src + cells);
      std::size_t len = cells;
      for (int level = 0; level < p; ++level) {
        len /= static_cast<std::size_t>(n_);
        buf_b.assign(len, 0.0);
        for (std::size_t r = 0; r < len; ++r) {
          double acc = 0.0;
          const double* row = buf_a.data() + r * static_cast<std::size_t>(n_);
          for (int i = 0; i < n_; ++i) acc += row[static_cast<std::size_t>(i)] * spins[static_cast<std::size_t>(i)];
          buf_b[r] = acc;
        }
        buf_a.swap(buf_b);
      }
      total += tensor_scale_[a] * buf_a[0];
    }
    x[s] = total;
  }
}

std::vector<double> sk_field(const SkSampler& model, RngStream& rng) {
  std::vector<double> w(model.disorder_dim());
  rng.fill_normal(w);
  std::vector<double> x(model.states().size());
  model.field_values(w, x);
  return x;
}

}  // namespace superconc
