#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "superconc/field_core.hpp"

namespace superconc {

// (1+1)-dimensional directed polymer of length n in an i.i.d. standard
// Gaussian environment on the triangular slab {v in Z+^2 : |v| <= n-1}.
// A path visits one vertex per layer |v| = k, stepping right or up, so the
// index set has 2^(n-1) paths, sigma^2 = n, and R(p,p') = |shared vertices|.
class PolymerSampler final : public FieldSampler {
 public:
  explicit PolymerSampler(int n);

  int n() const { return n_; }
  std::size_t disorder_dim() const override { return site_count_; }
  double sigma_sq() const override { return static_cast<double>(n_); }
  double log_index_count() const override;

  // Flat index of slab vertex (x, y), layers stored consecutively.
  std::size_t site_index(int x, int y) const;

  // Max-weight path as its x-coordinate per layer, plus the path weight.
  struct GroundState {
    std::vector<int> xs;  // xs[k] = x-coordinate of the layer-k vertex
    double value = 0.0;
  };
  GroundState ground_state(std::span<const double> env) const;

 protected:
  double max_from(std::span<const double> w) const override;
  CoupledStats coupled_from(std::span<const double> w0,
                            std::span<const double> wt) const override;

 private:
  int n_;
  std::size_t site_count_;
  std::vector<std::size_t> layer_offset_;
};

// Max-weight directed path of n vertices from the origin, by layer DP with
// backpointers. env must cover all sites with |v| <= n-1 in the
// PolymerSampler flat layout.
PolymerSampler::GroundState polymer_ground_state(const PolymerSampler& model,
                                                 std::span<const double> env);

// Number of vertices shared by two paths of the same length (>= 1: the
// origin is always shared).
int polymer_overlap(std::span<const int> xs_a, std::span<const int> xs_b);

// One coupled experiment: environment perturbed entrywise by OU time t,
// both ground states solved, overlap = |P ∩ P^t|.
struct PolymerCoupledRecord {
  double m0 = 0.0;
  double mt = 0.0;
  int overlap = 0;
};
PolymerCoupledRecord polymer_coupled_run(const PolymerSampler& model, double t,
                                         RngStream& rng);

}  // namespace superconc
