#include <doctest.h>

#include <cmath>

#include "superconc/bounds.hpp"
#include "superconc/errors.hpp"
#include "superconc/rng.hpp"
#include "test_oracles.hpp"

using namespace superconc;

TEST_CASE("b_max_mean") {
  CHECK(b_max_mean(1.0, 1.0) == 0.0);
  CHECK(b_max_mean(1.0, 2.0) == doctest::Approx(std::sqrt(2.0 * std::log(2.0))).epsilon(1e-12));
  CHECK(b_max_mean(4.0, std::exp(1.0)) == doctest::Approx(std::sqrt(8.0)).epsilon(1e-12));
}

TEST_CASE("b_borell_tail") {
  CHECK(b_borell_tail(1.0, 0.0) == 1.0);
  CHECK(b_borell_tail(1.0, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  CHECK(b_borell_tail(2.0, 2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("b_varconv bounds") {
  CHECK(b_varconv_upper(0.4, 60.0) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(b_varconv_lower(1.0, 0.37, 0.0) == doctest::Approx(0.37));
  CHECK(b_varconv_upper(0.68, std::log(2.0)) == doctest::Approx(1.36).epsilon(1e-12));
  CHECK_THROWS_AS(b_varconv_upper(1.0, 0.0), DivideByZero);
}

TEST_CASE("b_gencorr") {
  SUBCASE("iid profile: inner sum is 2 - 1/n") {
    const std::size_t n = 16;
    std::vector<double> r(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) r[i * n + i] = 1.0;
    const double beta = b_gencorr(r, n);
    // independent long-double evaluation
    const long double log_n = std::log(16.0L);
    const long double inner = 16.0L * std::exp(-log_n) + (256.0L - 16.0L) * std::exp(-2.0L * log_n);
    CHECK(static_cast<double>(inner) == doctest::Approx(2.0 - 1.0 / 16.0).epsilon(1e-12));
    const long double expect =
        std::pow((std::log(log_n) + std::log(inner)) / log_n, 0.25L);
    CHECK(beta == doctest::Approx(static_cast<double>(expect)).epsilon(1e-12));
  }

  SUBCASE("fully correlated profile: inner sum n, beta -> 1") {
    for (std::size_t n : {8, 64, 1024}) {
      std::vector<double> r(n * n, 1.0);
      const double log_n = std::log(static_cast<double>(n));
      const double expect =
          std::pow((std::log(log_n) + log_n) / log_n, 0.25);
      CHECK(b_gencorr(r, n) == doctest::Approx(expect).epsilon(1e-12));
    }
  }

  SUBCASE("validation") {
    std::vector<double> r(4, 1.0);
    CHECK_THROWS_AS(b_gencorr(r, 2), TooSmall);
    std::vector<double> bad(9, 2.0);
    CHECK_THROWS_AS(b_gencorr(bad, 3), DomainError);
  }
}

TEST_CASE("b_extreme") {
  const double s = 1024.0;  // |S| = 2^10
  SUBCASE("at the ceiling alpha = 1") {
    const double ceiling = b_max_mean(1.0, s);
    const auto [alpha, beta] = b_extreme(ceiling, 1.0, s);
    CHECK(alpha == doctest::Approx(1.0));
    CHECK(beta == doctest::Approx(std::pow(std::log(std::log(s)) / std::log(s), 0.25)));
  }
  SUBCASE("at zero") {
    const auto [alpha, beta] = b_extreme(0.0, 1.0, s);
    CHECK(alpha == 0.0);
    CHECK(beta == doctest::Approx(1.0 + std::pow(std::log(std::log(s)) / std::log(s), 0.25)));
  }
  SUBCASE("plug-in") {
    const auto [alpha, beta] = b_extreme(3.0, 1.0, s);
    CHECK(alpha == doctest::Approx(3.0 / std::sqrt(20.0 * std::log(2.0))).epsilon(1e-12));
  }
}

TEST_CASE("b_corrbd") {
  CHECK(b_corrbd(1.0, 0.0, std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b_corrbd(1.0, 0.3, std::exp(2.0)) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(b_corrbd(2.0, 0.0, std::exp(1.0)) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("b_hyper2") {
  SUBCASE("rho = 1 everywhere uses the interpreted value") {
    const double v = b_hyper2([](double) { return 1.0; }, [](double) { return 1.0; }, 3.0);
    CHECK(v == doctest::Approx(6.0).epsilon(1e-12));
  }
  SUBCASE("constant rho") {
    const double v =
        b_hyper2([](double) { return std::exp(-1.0); }, [](double) { return 1.0; }, 2.0);
    CHECK(v == doctest::Approx(2.0 * 2.0 * (1.0 - std::exp(-1.0))).epsilon(1e-10));
  }
  SUBCASE("decaying rho against the series oracle") {
    // int_0^1 2 (1 - e^-r) / r dr = 2 sum (-1)^{k+1} / (k k!)
    double series = 0.0;
    double fact = 1.0;
    for (int k = 1; k <= 25; ++k) {
      fact *= k;
      series += 2.0 * ((k % 2) ? 1.0 : -1.0) / (k * fact);
    }
    const double v =
        b_hyper2([](double r) { return std::exp(-r); }, [](double) { return 1.0; }, 1.0, 20000);
    CHECK(v == doctest::Approx(series).epsilon(1e-8));
  }
  SUBCASE("rho outside (0,1] is rejected") {
    CHECK_THROWS_AS(
        b_hyper2([](double) { return 1.5; }, [](double) { return 1.0; }, 1.0, 100),
        InvalidRange);
    CHECK_THROWS_AS(
        b_hyper2([](double) { return 0.0; }, [](double) { return 1.0; }, 1.0, 100),
        InvalidRange);
  }
}

TEST_CASE("b_p2p3_probability") {
  SUBCASE("v = 0 gives probability 1") {
    CHECK(b_p2p3_probability(0.0, 10.0, 1.0, 4.0, 0.5, 1.0) == 1.0);
  }
  SUBCASE("plug-in value cross-checked by independent long-double arithmetic") {
    const double v = 1e-6, m = 10.0, s2 = 1.0, l = 2.0, eps = 0.5, delta = 1.0;
    const long double term1 =
        4.0L * std::sqrt(1e-6L * 10.0L * 8.0L * std::log(2.0L) / (1.0L * 0.5L));
    const long double term2 =
        4.0L * std::pow(1e-6L * 1.0L * 32.0L * std::log(2.0L) / (1.0L * 10.0L * 0.5L), 0.25L);
    const double expect = static_cast<double>(1.0L - term1 - term2);
    CHECK(b_p2p3_probability(v, m, s2, l, eps, delta) == doctest::Approx(expect).epsilon(1e-12));
  }
  SUBCASE("large v goes vacuous (negative)") {
    CHECK(b_p2p3_probability(10.0, 10.0, 1.0, 8.0, 0.5, 1.0) < 0.0);
  }
  SUBCASE("domain validation") {
    CHECK_THROWS_AS(b_p2p3_probability(0.1, 10.0, 1.0, 1.0, 0.5, 1.0), DomainError);
    CHECK_THROWS_AS(b_p2p3_probability(0.1, 10.0, 1.0, 4.0, 1.5, 1.0), DomainError);
    CHECK_THROWS_AS(b_p2p3_probability(0.1, 10.0, 1.0, 4.0, 0.5, 11.0), DomainError);
  }
}

TEST_CASE("cstar_coeffs") {
  const SeriesCoeffs s = cstar_coeffs(64);

  SUBCASE("c2* = 1/(4 log 2) to 1e-12, and by numerical differentiation") {
    CHECK(std::abs(s.cstar[2] - 1.0 / (4.0 * std::log(2.0))) < 1e-12);
    // second derivative of f(x) = I/(2log2 - I) at 0 via central differences
    const auto f = [](double x) {
      const double ix = binary_entropy_rate(x);
      return ix / (2.0 * std::log(2.0) - ix);
    };
    const double h = 1e-4;
    const double c2_numeric = (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h) / 2.0;
    CHECK(s.cstar[2] == doctest::Approx(c2_numeric).epsilon(1e-6));
  }

  SUBCASE("odd coefficients vanish exactly") {
    for (int p = 3; p <= 63; p += 2) CHECK(s.cstar[static_cast<std::size_t>(p)] == 0.0);
  }

  SUBCASE("all coefficients nonnegative") {
    for (double c : s.cstar) CHECK(c >= 0.0);
  }

  SUBCASE("partial sums increase toward 1; evaluating f near 1 dominates them") {
    double prev = 0.0;
    for (int r = 2; r <= 64; r += 2) {
      const double cur = s.partial_sum(r);
      CHECK(cur >= prev);
      prev = cur;
    }
    CHECK(s.partial_sum(40) > 0.8);
    CHECK(s.partial_sum(40) < 1.0);
    CHECK(s.partial_sum(64) > 0.9);
    CHECK(s.partial_sum(64) <= 1.0);
    // f(x) for x near 1 upper-bounds every truncation (nonneg coefficients)
    const double ix = binary_entropy_rate(0.999999);
    const double f_near_one = ix / (2.0 * std::log(2.0) - ix);
    CHECK(s.partial_sum(64) < f_near_one + 1e-6);
  }
}

TEST_CASE("check_majorization") {
  const SeriesCoeffs s = cstar_coeffs(64);

  SUBCASE("c = c* passes") {
    XiSpec xi;
    xi.coeffs = s.cstar;
    CHECK(check_majorization(xi, s).pass);
  }

  SUBCASE("the original SK mixture fails at r = 2") {
    const XiSpec xi = XiSpec::monomial(2);  // c = (1, 0, ...)
    const MajorizationReport rep = check_majorization(xi, s);
    CHECK_FALSE(rep.pass);
    CHECK(rep.first_violation == 2);
  }

  SUBCASE("damped c* with the normalizing mass parked beyond the order passes") {
    XiSpec xi;
    xi.coeffs.assign(81, 0.0);
    double used = 0.0;
    for (int p = 2; p <= 64; ++p) {
      xi.coeffs[static_cast<std::size_t>(p)] = 0.9 * s.cstar[static_cast<std::size_t>(p)];
      used += xi.coeffs[static_cast<std::size_t>(p)];
    }
    xi.coeffs[80] = 1.0 - used;  // outside the verified window
    xi.validate_mixture();
    // direct partial-sum check in the test
    double cs = 0.0, ss = 0.0;
    bool ok = true;
    for (int r = 2; r <= 64; ++r) {
      cs += xi.coeffs[static_cast<std::size_t>(r)];
      ss += s.cstar[static_cast<std::size_t>(r)];
      ok = ok && cs <= ss + 1e-12;
    }
    CHECK(ok);
    CHECK(check_majorization(xi, s).pass);
  }

  SUBCASE("random majorization-passing mixtures satisfy the pointwise xi condition") {
    // sum_{p<=r} c_p <= sum_{p<=r} c_p* for every r forces
    // xi(x) <= I/(2log2 - I) pointwise; sub-normalized mixtures are fine.
    RngStream rng(110, 0);
    std::vector<double> grid;
    for (int i = 1; i <= 49; ++i) grid.push_back(-0.98 + 0.04 * i);
    for (int trial = 0; trial < 25; ++trial) {
      XiSpec xi;
      xi.coeffs.assign(65, 0.0);
      for (int p = 2; p <= 64; ++p)
        xi.coeffs[static_cast<std::size_t>(p)] =
            rng.uniform01() * s.cstar[static_cast<std::size_t>(p)];
      REQUIRE(check_majorization(xi, s).pass);
      CHECK(check_xi_condition(xi, grid).pass);
    }
  }
}

TEST_CASE("check_xi_condition") {
  const SeriesCoeffs s = cstar_coeffs(64);
  std::vector<double> grid;
  for (int i = 1; i <= 99; ++i) grid.push_back(-1.0 + 0.02 * i);

  SUBCASE("xi = f itself passes (equality case)") {
    XiSpec xi;
    xi.coeffs = s.cstar;
    CHECK(check_xi_condition(xi, grid).pass);
  }

  SUBCASE("xi = x^2 fails near zero") {
    const XiConditionReport rep = check_xi_condition(XiSpec::monomial(2), grid);
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.first_violation_x.has_value());
    CHECK(std::abs(*rep.first_violation_x) < 1.0);
  }

  SUBCASE("xi = 0.3 f passes") {
    XiSpec xi;
    xi.coeffs.resize(s.cstar.size());
    for (std::size_t p = 0; p < s.cstar.size(); ++p) xi.coeffs[p] = 0.3 * s.cstar[p];
    CHECK(check_xi_condition(xi, grid).pass);
  }
}

TEST_CASE("mills_bounds and gausstail") {
  SUBCASE("x = 1 sandwich around the true tail") {
    const auto [lo, hi] = mills_bounds(1.0);
    CHECK(lo == doctest::Approx(0.120985).epsilon(1e-5));
    CHECK(hi == doctest::Approx(0.241971).epsilon(1e-5));
    const double truth = oracle::normal_sf(1.0);
    CHECK(truth == doctest::Approx(0.158655).epsilon(1e-5));
    CHECK(lo <= truth);
    CHECK(truth <= hi);
  }

  SUBCASE("sandwich at several abscissae against the erfc oracle") {
    for (double x : {0.5, 1.0, 2.0, 4.0}) {
      const auto [lo, hi] = mills_bounds(x);
      const double truth = oracle::normal_sf(x);
      CHECK(lo <= truth);
      CHECK(truth <= hi);
      CHECK(truth <= gausstail(x));
    }
  }

  SUBCASE("bounds tighten as x grows") {
    const auto [lo, hi] = mills_bounds(10.0);
    CHECK(hi / lo < 1.02);
  }

  SUBCASE("gausstail(0) = 1 dominates 1/2") {
    CHECK(gausstail(0.0) == 1.0);
    CHECK(oracle::normal_sf(0.0) == doctest::Approx(0.5));
  }

  SUBCASE("nonpositive x rejected for Mills") {
    CHECK_THROWS_AS(mills_bounds(0.0), NonpositiveX);
    CHECK_THROWS_AS(mills_bounds(-1.0), NonpositiveX);
  }
}

TEST_CASE("bound reports carry the constant-free flag") {
  CHECK(report_max_mean(1.0, 16.0).constant_free);
  CHECK(report_borell_tail(1.0, 2.0).constant_free);
  CHECK(report_max_mean(1.0, 16.0).structural_value ==
        doctest::Approx(b_max_mean(1.0, 16.0)));
  std::vector<double> r(9, 0.0);
  for (int i = 0; i < 3; ++i) r[static_cast<std::size_t>(i * 3 + i)] = 1.0;
  CHECK_FALSE(report_gencorr(r, 3).constant_free);
  CHECK_FALSE(report_extreme(1.0, 1.0, 16.0).constant_free);
  CHECK_FALSE(report_corrbd(1.0, 0.1, 16.0).constant_free);
  CHECK(report_corrbd(1.0, 0.1, 16.0).inputs.find("rho") != std::string::npos);
}

TEST_CASE("xi parsing") {
  const XiSpec a = XiSpec::parse("x^2");
  CHECK(a.coeffs[2] == 1.0);
  const XiSpec b = XiSpec::parse("0.5*x^2+0.5*x^4");
  CHECK(b.coeffs[2] == 0.5);
  CHECK(b.coeffs[4] == 0.5);
  CHECK(b.even());
  CHECK_FALSE(XiSpec::parse("x^3").even());
  CHECK_THROWS_AS(XiSpec::parse("x^1"), DomainError);
  CHECK_THROWS_AS(XiSpec::parse("y^2"), DomainError);
  CHECK_NOTHROW(XiSpec::parse("0.5*x^2+0.5*x^3").validate_mixture());
  CHECK_THROWS_AS(XiSpec::parse("0.5*x^2").validate_mixture(), DomainError);
  CHECK(XiSpec::parse(b.to_string()).coeffs == b.coeffs);
}
