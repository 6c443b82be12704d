#include <doctest.h>

#include <cmath>
#include <vector>

#include "superconc/errors.hpp"
#include "superconc/models/polymer.hpp"

using namespace superconc;

namespace {

// Brute force over all 2^(n-1) step sequences; independent of the DP.
std::pair<std::vector<int>, double> brute_force_best(const PolymerSampler& model,
                                                     std::span<const double> env) {
  const int n = model.n();
  std::pair<std::vector<int>, double> best{{}, -1e300};
  const std::uint32_t paths = n > 1 ? (1u << (n - 1)) : 1u;
  for (std::uint32_t steps = 0; steps < paths; ++steps) {
    int x = 0, y = 0;
    double value = env[model.site_index(0, 0)];
    std::vector<int> xs = {0};
    for (int k = 0; k < n - 1; ++k) {
      if ((steps >> k) & 1u)
        ++x;
      else
        ++y;
      value += env[model.site_index(x, y)];
      xs.push_back(x);
    }
    if (value > best.second) best = {xs, value};
  }
  return best;
}

}  // namespace

TEST_CASE("polymer_ground_state: trivial sizes") {
  SUBCASE("n = 1 is the origin alone") {
    PolymerSampler model(1);
    const std::vector<double> env = {1.25};
    const auto gs = model.ground_state(env);
    CHECK(gs.value == 1.25);
    CHECK(gs.xs == std::vector<int>{0});
  }

  SUBCASE("n = 2 picks the better of the two second vertices") {
    PolymerSampler model(2);
    std::vector<double> env(3);
    env[model.site_index(0, 0)] = 0.5;
    env[model.site_index(0, 1)] = -1.0;
    env[model.site_index(1, 0)] = 2.0;
    const auto gs = model.ground_state(env);
    CHECK(gs.value == doctest::Approx(2.5));
    CHECK(gs.xs == std::vector<int>{0, 1});
  }
}

TEST_CASE("polymer_ground_state: DP equals exhaustive enumeration") {
  for (int n : {4, 7, 10}) {
    PolymerSampler model(n);
    std::vector<double> env(model.disorder_dim());
    const std::size_t trials = 1000;
    for (std::size_t trial = 0; trial < trials; ++trial) {
      RngStream rng(static_cast<std::uint64_t>(100 + n), trial);
      rng.fill_normal(env);
      const auto dp = model.ground_state(env);
      const auto bf = brute_force_best(model, env);
      CHECK(dp.value == doctest::Approx(bf.second).epsilon(1e-12));
      CHECK(dp.xs == bf.first);
    }
  }
}

TEST_CASE("polymer_overlap") {
  SUBCASE("identical paths share every vertex") {
    const std::vector<int> p = {0, 1, 1, 2};
    CHECK(polymer_overlap(p, p) == 4);
  }
  SUBCASE("opposite first steps share only the origin") {
    const std::vector<int> right = {0, 1};
    const std::vector<int> up = {0, 0};
    CHECK(polymer_overlap(right, up) == 1);
  }
  SUBCASE("(R,R) and (R,U) share the origin and (1,0)") {
    const std::vector<int> rr = {0, 1, 2};
    const std::vector<int> ru = {0, 1, 1};
    CHECK(polymer_overlap(rr, ru) == 2);
  }
  SUBCASE("length mismatch throws") {
    const std::vector<int> a = {0, 1};
    const std::vector<int> b = {0};
    CHECK_THROWS_AS(polymer_overlap(a, b), LengthMismatch);
  }
}

TEST_CASE("polymer_coupled_run") {
  SUBCASE("t = 0 gives full overlap") {
    PolymerSampler model(9);
    for (std::size_t r = 0; r < 100; ++r) {
      RngStream rng(3, r);
      CHECK(polymer_coupled_run(model, 0.0, rng).overlap == 9);
    }
  }

  SUBCASE("n = 1 has overlap 1 for every t") {
    PolymerSampler model(1);
    for (double t : {0.0, 0.5, 99.0}) {
      RngStream rng(4, 11);
      CHECK(polymer_coupled_run(model, t, rng).overlap == 1);
    }
  }

  SUBCASE("large t matches the independent-environment oracle") {
    PolymerSampler model(6);
    const std::size_t reps = 40000;
    double coupled_sum = 0.0, coupled_ss = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      RngStream rng(5, r);
      const double o = polymer_coupled_run(model, 60.0, rng).overlap;
      coupled_sum += o;
      coupled_ss += o * o;
    }
    const double coupled_mean = coupled_sum / reps;
    const double coupled_var = coupled_ss / reps - coupled_mean * coupled_mean;

    std::vector<double> env_a(model.disorder_dim()), env_b(model.disorder_dim());
    double indep_sum = 0.0, indep_ss = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      RngStream rng(6, r);
      rng.fill_normal(env_a);
      rng.fill_normal(env_b);
      const double o =
          polymer_overlap(model.ground_state(env_a).xs, model.ground_state(env_b).xs);
      indep_sum += o;
      indep_ss += o * o;
    }
    const double indep_mean = indep_sum / reps;
    const double indep_var = indep_ss / reps - indep_mean * indep_mean;
    const double se = std::sqrt((coupled_var + indep_var) / reps);
    CHECK(std::abs(coupled_mean - indep_mean) < 3.0 * se);
  }
}

TEST_CASE("polymer field statistics: sigma^2 and path-weight covariance") {
  // Weights of two fixed paths have covariance = shared vertex count.
  PolymerSampler model(5);
  const std::vector<int> pa = {0, 1, 2, 2, 3};
  const std::vector<int> pb = {0, 1, 1, 2, 2};
  const int expected_overlap = polymer_overlap(pa, pb);
  const std::size_t reps = 100000;
  std::vector<double> env(model.disorder_dim());
  double sab = 0.0, sa = 0.0, sb = 0.0, saa = 0.0;
  for (std::size_t r = 0; r < reps; ++r) {
    RngStream rng(7, r);
    rng.fill_normal(env);
    double wa = 0.0, wb = 0.0;
    for (int k = 0; k < 5; ++k) {
      wa += env[model.site_index(pa[static_cast<std::size_t>(k)],
                                 k - pa[static_cast<std::size_t>(k)])];
      wb += env[model.site_index(pb[static_cast<std::size_t>(k)],
                                 k - pb[static_cast<std::size_t>(k)])];
    }
    sa += wa;
    sb += wb;
    sab += wa * wb;
    saa += wa * wa;
  }
  const double cov = sab / reps - (sa / reps) * (sb / reps);
  const double var_a = saa / reps - (sa / reps) * (sa / reps);
  CHECK(var_a == doctest::Approx(5.0).epsilon(0.03));
  CHECK(cov == doctest::Approx(expected_overlap).epsilon(0.05));
  CHECK(model.sigma_sq() == 5.0);
  CHECK(model.log_index_count() == doctest::Approx(4.0 * std::log(2.0)));
}
