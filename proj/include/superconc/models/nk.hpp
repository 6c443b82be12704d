#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "superconc/field_core.hpp"

namespace superconc {

// Window-agreement proximity p_{N,K}: the number of positions i whose
// cyclic windows (sigma_i, ..., sigma_{i+K}) coincide in both genomes.
// Equals cov(F(sigma), F(sigma')) for the NK field below.
int nk_proximity(std::uint32_t a, std::uint32_t b, int N, int K);

class NkKernel final : public CovarianceKernel {
 public:
  NkKernel(int N, int K) : N_(N), K_(K) {}
  Mode mode() const override { return Mode::Implicit; }
  std::size_t size() const override { return std::size_t{1} << N_; }
  double eval(std::size_t i, std::size_t j) const override {
    return nk_proximity(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), N_, K_);
  }
  double sigma_sq() const override { return static_cast<double>(N_); }

 private:
  int N_;
  int K_;
};

// Kauffman-Levin NK fitness landscape on {0,1}^N with i.i.d. N(0,1) site
// scores: F(sigma) = sum_i Y(i; (sigma_i, ..., sigma_{i+K})), subscripts
// wrapped around. Var F(sigma) = N for every genome.
class NkSampler final : public DenseFieldSampler {
 public:
  NkSampler(int N, int K);

  int N() const { return N_; }
  int K() const { return K_; }
  const CovarianceKernel& kernel() const override { return kernel_; }
  std::size_t disorder_dim() const override { return table_size_; }
  void field_values(std::span<const double> w, std::span<double> x) const override;

 private:
  int N_;
  int K_;
  std::size_t table_size_;  // N * 2^(K+1) score entries
  NkKernel kernel_;
};

// Fitness of every genome for a fixed score table laid out as
// table[i * 2^(K+1) + window_bits].
std::vector<double> nk_fitness_table(const NkSampler& model, std::span<const double> table);

}  // namespace superconc
