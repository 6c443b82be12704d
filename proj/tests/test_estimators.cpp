#include <doctest.h>

#include <cmath>

#include "superconc/errors.hpp"
#include "superconc/estimators.hpp"
#include "superconc/models/ce_fields.hpp"
#include "superconc/models/nk.hpp"
#include "superconc/models/polymer.hpp"
#include "superconc/models/registry.hpp"
#include "test_oracles.hpp"

using namespace superconc;

namespace {

MCConfig cfg_with(std::size_t n, std::uint64_t seed, std::vector<double> t_grid = {}) {
  MCConfig cfg;
  cfg.n_samples = n;
  cfg.master_seed = seed;
  cfg.t_grid = std::move(t_grid);
  return cfg;
}

CholeskySampler scalar_sampler(double sigma_sq) {
  Eigen::MatrixXd cov(1, 1);
  cov << sigma_sq;
  return CholeskySampler(cov);
}

CholeskySampler equicorr_sampler(std::size_t n, double rho) {
  Eigen::MatrixXd cov = Eigen::MatrixXd::Constant(n, n, rho);
  cov.diagonal().setOnes();
  return CholeskySampler(cov);
}

}  // namespace

TEST_CASE("estimate_max_stats") {
  SUBCASE("single coordinate of variance 4") {
    const auto sampler = scalar_sampler(4.0);
    const MaxStats stats = estimate_max_stats(sampler, cfg_with(100000, 70));
    CHECK(std::abs(stats.m_hat.value) < 3.0 * stats.m_hat.se);
    CHECK(std::abs(stats.v_hat.value - 4.0) < 3.0 * stats.v_hat.se);
  }

  SUBCASE("two iid standard coordinates: closed forms via the quadrature oracle") {
    const double mean_target = oracle::max2_mean();
    const double var_target = oracle::max2_var();
    CHECK(mean_target ==
          doctest::Approx(1.0 / std::sqrt(3.14159265358979323846)).epsilon(1e-8));
    IidSampler sampler(2);
    const MaxStats stats = estimate_max_stats(sampler, cfg_with(100000, 71));
    CHECK(std::abs(stats.m_hat.value - mean_target) < 3.0 * stats.m_hat.se);
    CHECK(std::abs(stats.v_hat.value - var_target) < 3.0 * stats.v_hat.se);
  }

  SUBCASE("deterministic given the seed, regardless of worker count") {
    IidSampler sampler(5);
    const MaxStats a = estimate_max_stats(sampler, cfg_with(5000, 72));
    const MaxStats b = estimate_max_stats(sampler, cfg_with(5000, 72));
    CHECK(a.m_hat.value == b.m_hat.value);
    CHECK(a.v_hat.value == b.v_hat.value);
    MCConfig threaded = cfg_with(5000, 72);
    threaded.n_workers = 4;
    const MaxStats c = estimate_max_stats(sampler, threaded);
    CHECK(a.m_hat.value == c.m_hat.value);
  }
}

TEST_CASE("estimate_overlap_curve") {
  SUBCASE("t = 0 point is exactly 1 for a unit-variance kernel") {
    IidSampler sampler(6);
    const OverlapCurve curve =
        estimate_overlap_curve(sampler, cfg_with(2000, 73, {0.0, 1.0}));
    CHECK(curve.points[0].overlap.value == doctest::Approx(1.0));
    CHECK(curve.points[0].overlap.se == doctest::Approx(0.0));
  }

  SUBCASE("single state gives a constant curve at R(0,0)") {
    const auto sampler = scalar_sampler(2.0);
    const OverlapCurve curve =
        estimate_overlap_curve(sampler, cfg_with(500, 74, {0.1, 1.0, 10.0}));
    for (const auto& pt : curve.points) CHECK(pt.overlap.value == doctest::Approx(2.0));
  }

  SUBCASE("iid large-t limit is 1/n") {
    IidSampler sampler(5);
    const OverlapCurve curve = estimate_overlap_curve(sampler, cfg_with(100000, 75, {60.0}));
    CHECK(std::abs(curve.points[0].overlap.value - 0.2) < 3.0 * curve.points[0].overlap.se);
  }
}

TEST_CASE("check_identity") {
  SUBCASE("single state is exact") {
    const auto sampler = scalar_sampler(1.5);
    const IdentityReport rep = check_identity(sampler, cfg_with(20000, 76));
    CHECK(rep.overlap_mean.value == doctest::Approx(1.5));
    CHECK(rep.pass);
  }

  SUBCASE("iid n = 8") {
    IidSampler sampler(8);
    const IdentityReport rep = check_identity(sampler, cfg_with(100000, 77));
    CHECK(std::abs(rep.z) <= 3.0);
    CHECK(rep.pass);
  }

  SUBCASE("polymer n = 6") {
    PolymerSampler sampler(6);
    const IdentityReport rep = check_identity(sampler, cfg_with(50000, 78));
    CHECK(std::abs(rep.z) <= 3.0);
  }
}

TEST_CASE("check_identity across structured models") {
  // The exponential-time identity holds for every covariance structure.
  SUBCASE("free field, both boundaries") {
    const auto torus = make_sampler("dgff:n=8,boundary=torus");
    CHECK(std::abs(check_identity(*torus, cfg_with(30000, 102)).z) <= 3.0);
    const auto zero = make_sampler("dgff:n=8,boundary=zero");
    CHECK(std::abs(check_identity(*zero, cfg_with(30000, 109)).z) <= 3.0);
  }
  SUBCASE("counterexample fields") {
    CeASampler cea(6);
    CHECK(std::abs(check_identity(cea, cfg_with(30000, 103)).z) <= 3.0);
    CeBSampler ceb(12);
    CHECK(std::abs(check_identity(ceb, cfg_with(30000, 104)).z) <= 3.0);
  }
  SUBCASE("nk landscape") {
    NkSampler nk(6, 1);
    CHECK(std::abs(check_identity(nk, cfg_with(30000, 105)).z) <= 3.0);
  }
}

TEST_CASE("check_tauberian edge cases") {
  SUBCASE("single state: both bounds are identities") {
    const auto sampler = scalar_sampler(1.7);
    const MCConfig cfg = cfg_with(5000, 106, {0.2, 1.0});
    const MaxStats stats = estimate_max_stats(sampler, cfg);
    const OverlapCurve curve = estimate_overlap_curve(sampler, cfg);
    const TauberianReport rep = check_tauberian(curve, stats.v_hat, 1.7);
    CHECK(rep.pass);
    for (const auto& pt : rep.points) CHECK(pt.overlap == doctest::Approx(1.7));
  }

  SUBCASE("t past the cap: upper bound collapses to v-hat") {
    IidSampler sampler(16);
    const MCConfig cfg = cfg_with(30000, 107, {0.5, 60.0});
    const MaxStats stats = estimate_max_stats(sampler, cfg);
    const OverlapCurve curve = estimate_overlap_curve(sampler, cfg);
    const TauberianReport rep = check_tauberian(curve, stats.v_hat, 1.0);
    CHECK(rep.pass);
    CHECK(rep.points[1].upper_bound == doctest::Approx(stats.v_hat.value).epsilon(1e-12));
    CHECK(rep.points[1].overlap < stats.v_hat.value);
  }
}

TEST_CASE("check_tauberian on iid n = 16") {
  IidSampler sampler(16);
  const MCConfig cfg = cfg_with(50000, 79, {0.05, 0.1, 0.2, 0.5, 1.0, 2.0});
  const MaxStats stats = estimate_max_stats(sampler, cfg);
  const OverlapCurve curve = estimate_overlap_curve(sampler, cfg);
  const TauberianReport rep = check_tauberian(curve, stats.v_hat, sampler.sigma_sq());
  CHECK(rep.pass);
  for (const auto& pt : rep.points) {
    CHECK(pt.upper_ok);
    CHECK(pt.lower_ok);
    CHECK(pt.mono_ok);
    CHECK(pt.nonneg_ok);
  }
}

TEST_CASE("find_peaks") {
  IidSampler sampler(10);
  std::vector<double> w(10), x(10);
  RngStream rng(80, 0);
  rng.fill_normal(w);
  sampler.field_values(w, x);

  SUBCASE("delta = 0 returns just the argmax") {
    const PeaksReport rep = find_peaks(x, sampler.kernel(), 0.5, 0.0);
    CHECK(rep.l == 1);
    CHECK(rep.indices[0] == argmax_with_value(x).first);
    CHECK(rep.success);
  }

  SUBCASE("huge delta and eps above the off-diagonal admit everything") {
    const PeaksReport rep = find_peaks(x, sampler.kernel(), 0.5, 1e9);
    CHECK(rep.l == 10);  // iid off-diagonal R = 0 < eps
    CHECK(rep.success);
  }

  SUBCASE("admitted set re-satisfies its own conditions") {
    Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(6, 6);
    cov(0, 1) = cov(1, 0) = 0.8;
    cov(2, 3) = cov(3, 2) = 0.9;
    CholeskySampler corr(cov);
    std::vector<double> wc(6), xc(6);
    for (int trial = 0; trial < 50; ++trial) {
      RngStream trng(81, static_cast<std::uint64_t>(trial));
      trng.fill_normal(wc);
      corr.field_values(wc, xc);
      const PeaksReport rep = find_peaks(xc, corr.kernel(), 0.5, 2.0);
      CHECK(rep.success);
      const auto [imax, m] = argmax_with_value(xc);
      for (std::size_t a = 0; a < rep.indices.size(); ++a) {
        CHECK(xc[rep.indices[a]] >= m - 2.0);
        for (std::size_t b = a + 1; b < rep.indices.size(); ++b)
          CHECK(corr.kernel().eval(rep.indices[a], rep.indices[b]) < 0.5);
      }
    }
  }

  SUBCASE("argument validation") {
    CHECK_THROWS_AS(find_peaks(x, sampler.kernel(), 0.0, 1.0), DomainError);
  }
}

TEST_CASE("tail_profile") {
  SUBCASE("r = 0 has bound 1") {
    IidSampler sampler(4);
    const std::vector<double> r_grid = {0.0};
    const TailReport rep = tail_profile(sampler, cfg_with(2000, 82), r_grid);
    CHECK(rep.points[0].borell_bound == 1.0);
    CHECK(rep.pass);
  }

  SUBCASE("scalar field: empirical tail matches the normal oracle and the bound") {
    const auto sampler = scalar_sampler(1.0);
    const std::vector<double> r_grid = {0.5, 1.0, 2.0};
    const MCConfig cfg = cfg_with(100000, 83);
    const TailReport rep = tail_profile(sampler, cfg, r_grid);
    CHECK(rep.pass);
    for (const auto& pt : rep.points) {
      const double truth = oracle::normal_sf(pt.r);
      CHECK(std::abs(pt.upper_emp.value - truth) <
            3.0 * std::sqrt(truth * (1.0 - truth) / cfg.n_samples) + 1e-3);
      CHECK(truth <= pt.borell_bound);
    }
  }

  SUBCASE("iid n = 64 passes at r in {1,2,3}") {
    IidSampler sampler(64);
    const std::vector<double> r_grid = {1.0, 2.0, 3.0};
    const TailReport rep = tail_profile(sampler, cfg_with(50000, 84), r_grid);
    CHECK(rep.pass);
  }
}

TEST_CASE("prediction_check") {
  SUBCASE("scalar field: bound dominates the exact normal tail") {
    const auto sampler = scalar_sampler(1.0);
    const PredictionReport rep = prediction_check(sampler, cfg_with(50000, 85), 0.7);
    CHECK(rep.pass);
    for (const auto& pt : rep.points) CHECK(2.0 * oracle::normal_sf(pt.x) <= pt.bound);
  }

  SUBCASE("t = 0 reduces to concentration of M") {
    IidSampler sampler(32);
    const PredictionReport rep = prediction_check(sampler, cfg_with(30000, 86), 0.0);
    CHECK(rep.pass);
  }

  SUBCASE("iid n = 256 at t = 0.5") {
    IidSampler sampler(256);
    const PredictionReport rep = prediction_check(sampler, cfg_with(30000, 87), 0.5);
    CHECK(rep.pass);
  }

  SUBCASE("non-unit variance is rejected") {
    const auto sampler = scalar_sampler(2.0);
    CHECK_THROWS_AS(prediction_check(sampler, cfg_with(100, 88), 0.5), DomainError);
  }
}

TEST_CASE("slepian_check") {
  SUBCASE("a field against itself") {
    IidSampler sampler(8);
    const SlepianReport rep = slepian_check(sampler, sampler, cfg_with(20000, 89));
    CHECK(rep.pass);
    CHECK(std::abs(rep.m_x.value - rep.m_y.value) <
          4.0 * std::hypot(rep.m_x.se, rep.m_y.se));
  }

  SUBCASE("NK: windows lengthen, correlations drop, the maximum grows") {
    NkSampler low(12, 0), high(12, 4);
    const SlepianReport rep = slepian_check(low, high, cfg_with(8000, 90));
    CHECK(rep.pass);
  }

  SUBCASE("equicorrelated vs iid") {
    const auto equi = equicorr_sampler(16, 0.5);
    IidSampler iid(16);
    const SlepianReport rep = slepian_check(equi, iid, cfg_with(30000, 91));
    CHECK(rep.pass);
  }

  SUBCASE("order violation is detected on dense kernels") {
    const auto equi = equicorr_sampler(6, 0.5);
    Eigen::MatrixXd iid_cov = Eigen::MatrixXd::Identity(6, 6);
    CholeskySampler iid_dense(iid_cov);
    CHECK_THROWS_AS(slepian_check(iid_dense, equi, cfg_with(100, 92)), KernelOrderViolated);
  }
}

TEST_CASE("scaling_sweep") {
  SUBCASE("iid extremality ratio rises toward 1") {
    const auto factory = [](int n) -> std::unique_ptr<FieldSampler> {
      return std::make_unique<IidSampler>(static_cast<std::size_t>(n));
    };
    const std::vector<int> ns = {16, 64, 256, 1024};
    const auto rows = scaling_sweep(factory, ns, cfg_with(20000, 93));
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].alpha_hat > rows[i - 1].alpha_hat);
    CHECK(rows.back().alpha_hat > 0.7);
    CHECK(rows.back().alpha_hat < 1.0);
  }

  SUBCASE("polymer variance ratio falls") {
    const auto factory = [](int n) -> std::unique_ptr<FieldSampler> {
      return std::make_unique<PolymerSampler>(n);
    };
    const std::vector<int> ns = {8, 16, 32};
    const auto rows = scaling_sweep(factory, ns, cfg_with(8000, 94));
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].v_ratio < rows[i - 1].v_ratio);
  }
}

TEST_CASE("hyper_check") {
  IidSampler sampler(4);

  SUBCASE("t = 0: equality of both sides") {
    const HyperReport rep = hyper_check(sampler, 2, 0.0, cfg_with(20000, 95));
    CHECK(rep.lhs.value == doctest::Approx(rep.rhs).epsilon(1e-12));
    CHECK(rep.pass);
  }

  SUBCASE("t large: product of independent events") {
    const HyperReport rep = hyper_check(sampler, 1, 60.0, cfg_with(100000, 96));
    const double p_sq = rep.event_p.value * rep.event_p.value;
    CHECK(std::abs(rep.lhs.value - p_sq) <
          3.0 * std::hypot(rep.lhs.se, 2.0 * rep.event_p.se * rep.event_p.value));
    CHECK(rep.pass);
  }

  SUBCASE("t = 1 inequality holds for every argmax cell") {
    for (std::size_t cell = 0; cell < 4; ++cell) {
      const HyperReport rep = hyper_check(sampler, cell, 1.0, cfg_with(100000, 97));
      CHECK(rep.pass);
    }
  }
}

TEST_CASE("tauberian sandwich holds across model families") {
  for (const char* spec : {"nk:N=6,K=1", "dgff:n=6,boundary=torus", "sk:n=5,xi=x^2"}) {
    const auto sampler = make_sampler(spec);
    const MCConfig cfg = cfg_with(20000, 108, {0.3, 1.0});
    const MaxStats stats = estimate_max_stats(*sampler, cfg);
    const OverlapCurve curve = estimate_overlap_curve(*sampler, cfg);
    CHECK(check_tauberian(curve, stats.v_hat, sampler->sigma_sq()).pass);
  }
}

TEST_CASE("classical bound invariants across models") {
  // v <= sigma^2 and m <= sqrt(2 sigma^2 log |S|), both within 3 SE.
  const auto check_model = [](const FieldSampler& sampler, std::uint64_t seed) {
    const MaxStats stats = estimate_max_stats(sampler, cfg_with(20000, seed));
    CHECK(stats.v_hat.value <= sampler.sigma_sq() + 3.0 * stats.v_hat.se);
    if (std::isfinite(sampler.log_index_count()) && sampler.log_index_count() > 0.0) {
      const double ceiling = std::sqrt(2.0 * sampler.sigma_sq() * sampler.log_index_count());
      CHECK(stats.m_hat.value <= ceiling + 3.0 * stats.m_hat.se);
    }
  };
  check_model(IidSampler(16), 98);
  check_model(PolymerSampler(8), 99);
  check_model(NkSampler(8, 2), 100);
  check_model(equicorr_sampler(12, 0.3), 101);
}
