#include "superconc/models/nk.hpp"

#include "superconc/errors.hpp"

namespace superconc {

namespace {

inline std::uint32_t rotr_bits(std::uint32_t x, int s, int N) {
  const std::uint32_t mask = (N == 32) ? 0xffffffffu : ((1u << N) - 1u);
  s %= N;
  if (s == 0) return x & mask;
  return ((x >> s) | (x << (N - s))) & mask;
}

}  // namespace

int nk_proximity(std::uint32_t a, std::uint32_t b, int N, int K) {
  // Window i agrees iff bits i..i+K (cyclic) of a^b are all zero; build the
  // mask of positions whose whole window agrees by AND-ing rotations.
  const std::uint32_t mask = (N == 32) ? 0xffffffffu : ((1u << N) - 1u);
  const std::uint32_t agree = ~(a ^ b) & mask;
  std::uint32_t win = agree;
  for (int s = 1; s <= K; ++s) win &= rotr_bits(agree, s, N);
  return __builtin_popcount(win);
}

NkSampler::NkSampler(int N, int K) : N_(N), K_(K), kernel_(N, K) {
  if (N < 1 || K < 0 || K > N - 1) throw DomainError("NK model needs N >= 1, 0 <= K <= N-1");
  if (N > 22) throw TooLarge("NK enumeration capped at N <= 22");
  table_size_ = static_cast<std::size_t>(N_) << (K_ + 1);
}

void NkSampler::field_values(std::span<const double> w, std::span<double> x) const {
  if (w.size() != table_size_) throw LengthMismatch("NK score table size mismatch");
  const std::size_t genomes = std::size_t{1} << N_;
  if (x.size() != genomes) throw LengthMismatch("NK output size mismatch");
  const std::uint32_t wmask = (1u << (K_ + 1)) - 1u;
  for (std::size_t g = 0; g < genomes; ++g) {
    // Cyclic windows read from the doubled bit pattern.
    const std::uint64_t bits =
        static_cast<std::uint64_t>(g) | (static_cast<std::uint64_t>(g) << N_);
    double f = 0.0;
    for (int i = 0; i < N_; ++i) {
      const std::uint32_t window = static_cast<std::uint32_t>(bits >> i) & wmask;
      f += w[(static_cast<std::size_t>(i) << (K_ + 1)) + window];
    }
    x[g] = f;
  }
}

std::vector<double> nk_fitness_table(const NkSampler& model, std::span<const double> table) {
  std::vector<double> out(std::size_t{1} << model.N());
  model.field_values(table, out);
  return out;
}

}  // namespace superconc
