#include "superconc/models/polymer.hpp"

#include <algorithm>
#include <cmath>

#include "superconc/errors.hpp"

namespace superconc {

PolymerSampler::PolymerSampler(int n) : n_(n) {
  if (n < 1) throw DomainError("polymer length must be >= 1");
  layer_offset_.resize(static_cast<std::size_t>(n_) + 1);
  std::size_t off = 0;
  for (int k = 0; k < n_; ++k) {
    layer_offset_[static_cast<std::size_t>(k)] = off;
    off += static_cast<std::size_t>(k) + 1;  // layer k holds x = 0..k
  }
  layer_offset_[static_cast<std::size_t>(n_)] = off;
  site_count_ = off;
}

double PolymerSampler::log_index_count() const {
  return static_cast<double>(n_ - 1) * std::log(2.0);
}

std::size_t PolymerSampler::site_index(int x, int y) const {
  const int k = x + y;
  return layer_offset_[static_cast<std::size_t>(k)] + static_cast<std::size_t>(x);
}

PolymerSampler::GroundState PolymerSampler::ground_state(std::span<const double> env) const {
  if (env.size() != site_count_) throw LengthMismatch("environment table size mismatch");
  // W[x] = best weight of a path ending at (x, k-x); parent choice recorded
  // per layer for the backtrace (true = came from the left, i.e. a right step).
  std::vector<double> w(static_cast<std::size_t>(n_));
  std::vector<std::vector<char>> from_left(static_cast<std::size_t>(n_));
  w[0] = env[0];
  for (int k = 1; k < n_; ++k) {
    const std::size_t off = layer_offset_[static_cast<std::size_t>(k)];
    auto& choice = from_left[static_cast<std::size_t>(k)];
    choice.resize(static_cast<std::size_t>(k) + 1);
    for (int x = k; x >= 0; --x) {
      double best;
      if (x == k) {
        best = w[static_cast<std::size_t>(x - 1)];
        choice[static_cast<std::size_t>(x)] = 1;
      } else if (x == 0) {
        best = w[0];
        choice[0] = 0;
      } else {
        const double left = w[static_cast<std::size_t>(x - 1)];
        const double below = w[static_cast<std::size_t>(x)];
        choice[static_cast<std::size_t>(x)] = left > below;
        best = std::max(left, below);
      }
      w[static_cast<std::size_t>(x)] = best + env[off + static_cast<std::size_t>(x)];
    }
  }
  GroundState gs;
  gs.xs.resize(static_cast<std::size_t>(n_));
  int bx = 0;
  for (int x = 1; x < n_; ++x)
    if (w[static_cast<std::size_t>(x)] > w[static_cast<std::size_t>(bx)]) bx = x;
  gs.value = w[static_cast<std::size_t>(bx)];
  for (int k = n_ - 1; k >= 1; --k) {
    gs.xs[static_cast<std::size_t>(k)] = bx;
    if (from_left[static_cast<std::size_t>(k)][static_cast<std::size_t>(bx)]) --bx;
  }
  gs.xs[0] = 0;
  return gs;
}

double PolymerSampler::max_from(std::span<const double> w) const {
  // Value-only DP; no backpointers needed.
  if (w.size() != site_count_) throw LengthMismatch("environment table size mismatch");
  std::vector<double> best(static_cast<std::size_t>(n_));
  best[0] = w[0];
  for (int k = 1; k < n_; ++k) {
    const std::size_t off = layer_offset_[static_cast<std::size_t>(k)];
    for (int x = k; x >= 0; --x) {
      double b;
      if (x == k)
        b = best[static_cast<std::size_t>(x - 1)];
      else if (x == 0)
        b = best[0];
      else
        b = std::max(best[static_cast<std::size_t>(x - 1)], best[static_cast<std::size_t>(x)]);
      best[static_cast<std::size_t>(x)] = b + w[off + static_cast<std::size_t>(x)];
    }
  }
  return *std::max_element(best.begin(), best.begin() + n_);
}

CoupledStats PolymerSampler::coupled_from(std::span<const double> w0,
                                          std::span<const double> wt) const {
  const GroundState p0 = ground_state(w0);
  const GroundState pt = ground_state(wt);
  CoupledStats c;
  c.m0 = p0.value;
  c.mt = pt.value;
  c.overlap = static_cast<double>(polymer_overlap(p0.xs, pt.xs));
  double v = 0.0;
  for (int k = 0; k < n_; ++k) {
    const int x = pt.xs[static_cast<std::size_t>(k)];
    v += w0[layer_offset_[static_cast<std::size_t>(k)] + static_cast<std::size_t>(x)];
  }
  c.x0_at_it = v;
  return c;
}

PolymerSampler::GroundState polymer_ground_state(const PolymerSampler& model,
                                                 std::span<const double> env) {
  return model.ground_state(env);
}

int polymer_overlap(std::span<const int> xs_a, std::span<const int> xs_b) {
  if (xs_a.size() != xs_b.size()) throw LengthMismatch("paths have different lengths");
  int shared = 0;
  for (std::size_t k = 0; k < xs_a.size(); ++k) shared += xs_a[k] == xs_b[k];
  return shared;
}

PolymerCoupledRecord polymer_coupled_run(const PolymerSampler& model, double t,
                                         RngStream& rng) {
  const CoupledStats c = model.coupled_run(rng, t);
  return {c.m0, c.mt, static_cast<int>(c.overlap)};
}

}  // namespace superconc
