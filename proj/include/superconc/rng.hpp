#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace superconc {

// Per-replica random stream derived from (master_seed, replica_index).
// Streams for distinct pairs are independent, and a given pair always
// reproduces the same draw sequence, so replica results do not depend on
// worker scheduling.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t replica_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                      static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(replica_index),
                      static_cast<std::uint32_t>(replica_index >> 32),
                      0x5cu};
    engine_.seed(seq);
  }

  double normal() { return normal_(engine_); }

  void fill_normal(std::span<double> out) {
    for (double& x : out) x = normal_(engine_);
  }

  // Uniform on the open interval (0,1); never returns an endpoint.
  double uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Exponential(mean 1) by inverse CDF, one uniform per draw.
  double exponential() { return -std::log(uniform01()); }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace superconc
