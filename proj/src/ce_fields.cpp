#include "superconc/models/ce_fields.hpp"

#include <cmath>
#include <limits>

#include "superconc/errors.hpp"

namespace superconc {

double CeAKernel::eval(std::size_t i, std::size_t j) const {
  const std::size_t per_col = std::size_t{1} << n_;
  const int ki = static_cast<int>(i / per_col), kj = static_cast<int>(j / per_col);
  if (ki != kj) return 0.0;
  const std::uint32_t fi = static_cast<std::uint32_t>(i % per_col);
  const std::uint32_t fj = static_cast<std::uint32_t>(j % per_col);
  const double agree =
      static_cast<double>(n_ - __builtin_popcount(fi ^ fj)) / static_cast<double>(n_);
  if (ki == 0) return agree;  // column k = 1 is undamped
  return rho_ * rho_ * agree + (1.0 - rho_ * rho_);
}

CeASampler::CeASampler(int n)
    : n_(n), rho_(1.0 - std::pow(static_cast<double>(n), -1.0 / 3.0)), kernel_(n, rho_) {
  if (n < 2) throw DomainError("CE-A field needs n >= 2");
  if (n > 2000) throw TooLarge("CE-A parameter capped at n <= 2000");
}

double CeASampler::log_index_count() const {
  return std::log(static_cast<double>(n_)) + n_ * std::log(2.0);
}

CeASampler::Draw CeASampler::sample_max(std::span<const double> w) const {
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n_));
  const double damp = std::sqrt(1.0 - rho_ * rho_);
  Draw best;
  best.m = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < n_; ++k) {
    double col_y = 0.0;
    std::uint32_t f = 0;
    for (int i = 0; i < n_; ++i) {
      const double g0 = g_entry(w, k, 0, i), g1 = g_entry(w, k, 1, i);
      if (g1 > g0) f |= 1u << i;
      col_y += std::max(g0, g1);
    }
    col_y *= inv_sqrt_n;
    const double col_max = (k == 0) ? col_y : rho_ * col_y + damp * z_entry(w, k);
    if (col_max > best.m) {
      best.m = col_max;
      best.k_star = k;
      best.f_star = f;
    }
  }
  return best;
}

double CeASampler::max_from(std::span<const double> w) const { return sample_max(w).m; }

CoupledStats CeASampler::coupled_from(std::span<const double> w0,
                                      std::span<const double> wt) const {
  const Draw d0 = sample_max(w0);
  const Draw dt = sample_max(wt);
  CoupledStats c;
  c.m0 = d0.m;
  c.mt = dt.m;
  const std::size_t per_col = std::size_t{1} << n_;
  const std::size_t i0 = static_cast<std::size_t>(d0.k_star) * per_col + d0.f_star;
  const std::size_t it = static_cast<std::size_t>(dt.k_star) * per_col + dt.f_star;
  c.overlap = kernel_.eval(i0, it);
  c.i0 = static_cast<long long>(i0);
  c.it = static_cast<long long>(it);
  // X^0 at (k, f) from the disorder directly.
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n_));
  double y = 0.0;
  for (int i = 0; i < n_; ++i)
    y += g_entry(w0, dt.k_star, (dt.f_star >> i) & 1u, i);
  y *= inv_sqrt_n;
  c.x0_at_it = (dt.k_star == 0)
                   ? y
                   : rho_ * y + std::sqrt(1.0 - rho_ * rho_) * z_entry(w0, dt.k_star);
  return c;
}

void CeASampler::field_values(std::span<const double> w, std::span<double> x) const {
  if (n_ > 20) throw TooLarge("explicit CE-A enumeration needs n <= 20");
  const std::size_t per_col = std::size_t{1} << n_;
  if (x.size() != static_cast<std::size_t>(n_) * per_col)
    throw LengthMismatch("CE-A output size mismatch");
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n_));
  const double damp = std::sqrt(1.0 - rho_ * rho_);
  std::vector<double> y(per_col);
  for (int k = 0; k < n_; ++k) {
    // Y over all maps by extending one coordinate at a time.
    y[0] = 0.0;
    std::size_t filled = 1;
    for (int i = 0; i < n_; ++i) {
      const double g0 = g_entry(w, k, 0, i), g1 = g_entry(w, k, 1, i);
      for (std::size_t f = 0; f < filled; ++f) {
        y[filled + f] = y[f] + g1;
        y[f] += g0;
      }
      filled <<= 1;
    }
    double* out = x.data() + static_cast<std::size_t>(k) * per_col;
    const double z = z_entry(w, k);
    for (std::size_t f = 0; f < per_col; ++f) {
      const double yf = y[f] * inv_sqrt_n;
      out[f] = (k == 0) ? yf : rho_ * yf + damp * z;
    }
  }
}

CeBSampler::CeBSampler(int n) : n_(n) {
  if (n < 2) throw DomainError("CE-B field needs n >= 2");
  if (n > 10000) throw TooLarge("CE-B parameter capped at n <= 1e4");
}

double CeBSampler::log_index_count() const {
  return static_cast<double>(n_) * std::log(static_cast<double>(n_));
}

double CeBSampler::max_value(RngStream& rng) const {
  // Row-streamed M = sum_i max_j g_ij / sqrt(n); O(n) memory.
  double acc = 0.0;
  for (int i = 0; i < n_; ++i) {
    double row_max = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < n_; ++j) row_max = std::max(row_max, rng.normal());
    acc += row_max;
  }
  return acc / std::sqrt(static_cast<double>(n_));
}

CeBSampler::Draw CeBSampler::sample_with_maximizer(RngStream& rng) const {
  Draw d;
  d.f_star.resize(static_cast<std::size_t>(n_));
  double acc = 0.0;
  for (int i = 0; i < n_; ++i) {
    double row_max = -std::numeric_limits<double>::infinity();
    int arg = 0;
    for (int j = 0; j < n_; ++j) {
      const double g = rng.normal();
      if (g > row_max) {
        row_max = g;
        arg = j;
      }
    }
    d.f_star[static_cast<std::size_t>(i)] = arg;
    acc += row_max;
  }
  d.m = acc / std::sqrt(static_cast<double>(n_));
  return d;
}

CoupledStats CeBSampler::coupled_run(RngStream& rng, double t) const {
  // Stream rows of (g, g') together; never materializes the n x n tables.
  t = std::min(std::max(t, 0.0), kOuTimeCap);
  const double a = std::exp(-t);
  const double b = std::sqrt(std::max(0.0, 1.0 - a * a));
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n_));
  double m0 = 0.0, mt = 0.0, agree = 0.0, x0_at_it = 0.0;
  for (int i = 0; i < n_; ++i) {
    double best0 = -std::numeric_limits<double>::infinity();
    double bestt = best0, g0_at_argt = 0.0;
    int arg0 = 0, argt = 0;
    for (int j = 0; j < n_; ++j) {
      const double g0 = rng.normal();
      const double gp = rng.normal();
      const double gt = a * g0 + b * gp;
      if (g0 > best0) {
        best0 = g0;
        arg0 = j;
      }
      if (gt > bestt) {
        bestt = gt;
        argt = j;
        g0_at_argt = g0;
      }
    }
    m0 += best0;
    mt += bestt;
    x0_at_it += g0_at_argt;
    agree += arg0 == argt;
  }
  CoupledStats c;
  c.m0 = m0 * inv_sqrt_n;
  c.mt = mt * inv_sqrt_n;
  c.overlap = agree / static_cast<double>(n_);
  c.x0_at_it = x0_at_it * inv_sqrt_n;
  return c;
}

void CeBSampler::curve_run(RngStream& rng, std::span<const double> t_grid,
                           std::span<CoupledStats> out) const {
  if (t_grid.size() != out.size()) throw LengthMismatch("curve_run size mismatch");
  std::vector<double> row0(static_cast<std::size_t>(n_)), rowp(static_cast<std::size_t>(n_));
  std::vector<double> m0(out.size(), 0.0), mt(out.size(), 0.0), agree(out.size(), 0.0),
      x0(out.size(), 0.0);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n_));
  for (int i = 0; i < n_; ++i) {
    rng.fill_normal(row0);
    rng.fill_normal(rowp);
    double best0 = -std::numeric_limits<double>::infinity();
    int arg0 = 0;
    for (int j = 0; j < n_; ++j)
      if (row0[static_cast<std::size_t>(j)] > best0) {
        best0 = row0[static_cast<std::size_t>(j)];
        arg0 = j;
      }
    for (std::size_t g = 0; g < t_grid.size(); ++g) {
      const double t = std::min(std::max(t_grid[g], 0.0), kOuTimeCap);
      const double a = std::exp(-t);
      const double b = std::sqrt(std::max(0.0, 1.0 - a * a));
      double bestt = -std::numeric_limits<double>::infinity(), g0_at_argt = 0.0;
      int argt = 0;
      for (int j = 0; j < n_; ++j) {
        const double gt =
            a * row0[static_cast<std::size_t>(j)] + b * rowp[static_cast<std::size_t>(j)];
        if (gt > bestt) {
          bestt = gt;
          argt = j;
          g0_at_argt = row0[static_cast<std::size_t>(j)];
        }
      }
      m0[g] += best0;
      mt[g] += bestt;
      agree[g] += arg0 == argt;
      x0[g] += g0_at_argt;
    }
  }
  for (std::size_t g = 0; g < out.size(); ++g) {
    out[g].m0 = m0[g] * inv_sqrt_n;
    out[g].mt = mt[g] * inv_sqrt_n;
    out[g].overlap = agree[g] / static_cast<double>(n_);
    out[g].x0_at_it = x0[g] * inv_sqrt_n;
  }
}

double CeBSampler::max_from(std::span<const double> w) const {
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n_));
  double acc = 0.0;
  for (int i = 0; i < n_; ++i) {
    const double* row = w.data() + static_cast<std::size_t>(i) * n_;
    double row_max = row[0];
    for (int j = 1; j < n_; ++j) row_max = std::max(row_max, row[static_cast<std::size_t>(j)]);
    acc += row_max;
  }
  return acc * inv_sqrt_n;
}

CeASampler::Draw ce_a_sample(const CeASampler& model, RngStream& rng) {
  std::vector<double> w(model.disorder_dim());
  rng.fill_normal(w);
  return model.sample_max(w);
}

CeBSampler::Draw ce_b_sample(const CeBSampler& model, RngStream& rng) {
  return model.sample_with_maximizer(rng);
}

CoupledStats CeBSampler::coupled_from(std::span<const double> w0,
                                      std::span<const double> wt) const {
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n_));
  double m0 = 0.0, mt = 0.0, agree = 0.0, x0_at_it = 0.0;
  for (int i = 0; i < n_; ++i) {
    const double* r0 = w0.data() + static_cast<std::size_t>(i) * n_;
    const double* rt = wt.data() + static_cast<std::size_t>(i) * n_;
    int arg0 = 0, argt = 0;
    for (int j = 1; j < n_; ++j) {
      if (r0[static_cast<std::size_t>(j)] > r0[static_cast<std::size_t>(arg0)]) arg0 = j;
      if (rt[static_cast<std::size_t>(j)] > rt[static_cast<std::size_t>(argt)]) argt = j;
    }
    m0 += r0[static_cast<std::size_t>(arg0)];
    mt += rt[static_cast<std::size_t>(argt)];
    x0_at_it += r0[static_cast<std::size_t>(argt)];
    agree += arg0 == argt;
  }
  CoupledStats c;
  c.m0 = m0 * inv_sqrt_n;
  c.mt = mt * inv_sqrt_n;
  c.overlap = agree / static_cast<double>(n_);
  c.x0_at_it = x0_at_it * inv_sqrt_n;
  return c;
}

}  // namespace superconc
