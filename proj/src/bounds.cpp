#include "superconc/bounds.hpp"

#include <cmath>
#include <initializer_list>
#include <numbers>

#include "superconc/errors.hpp"
#include "superconc/field_core.hpp"

namespace superconc {

double b_max_mean(double sigma_sq, double s_size) {
  if (s_size < 1.0) throw DomainError("|S| must be >= 1");
  if (!(sigma_sq > 0.0)) throw DomainError("sigma^2 must be positive");
  return std::sqrt(2.0 * sigma_sq * std::log(s_size));
}

double b_borell_tail(double sigma_sq, double r) {
  if (r < 0.0) throw DomainError("r must be nonnegative");
  if (!(sigma_sq > 0.0)) throw DomainError("sigma^2 must be positive");
  return std::exp(-r * r / (2.0 * sigma_sq));
}

double b_varconv_upper(double v, double t) {
  if (t <= 0.0) throw DivideByZero("upper Tauberian bound needs t > 0");
  return v / (1.0 - std::exp(-std::min(t, kOuTimeCap)));
}

double b_varconv_lower(double sigma_sq, double overlap, double t) {
  if (t < 0.0) throw DomainError("t must be nonnegative");
  const double emt = std::exp(-std::min(t, kOuTimeCap));
  return sigma_sq * (1.0 - emt) + overlap * emt;
}

double b_gencorr(std::span<const double> r_list, std::size_t s_size) {
  if (s_size < 3) throw TooSmall("correlation-profile bound needs |S| >= 3");
  if (r_list.size() != s_size * s_size)
    throw LengthMismatch("r_list must hold |S|^2 entries including the diagonal");
  const double n = static_cast<double>(s_size);
  const double log_n = std::log(n);
  double sum = 0.0;
  for (double r : r_list) {
    if (r < -1.0 - 1e-12 || r > 1.0 + 1e-12) throw DomainError("correlations must lie in [-1,1]");
    if (1.0 + r <= 0.0) continue;  // |S|^{-2/(1+r)} -> 0 as r -> -1
    sum += std::exp(-2.0 * log_n / (1.0 + r));
  }
  const double inner = std::log(log_n) + std::log(sum);
  if (!(inner > 0.0)) throw DomainError("degenerate correlation profile");
  return std::pow(inner / log_n, 0.25);
}

std::pair<double, double> b_extreme(double m, double sigma_sq, double s_size) {
  if (s_size < 3) throw TooSmall("extremality bound needs |S| >= 3");
  if (!(sigma_sq > 0.0)) throw DomainError("sigma^2 must be positive");
  const double ceiling = b_max_mean(sigma_sq, s_size);
  double alpha = m / ceiling;
  alpha = std::min(1.0, std::max(0.0, alpha));
  const double log_n = std::log(s_size);
  const double beta = std::sqrt(1.0 - alpha) + std::pow(std::log(log_n) / log_n, 0.25);
  return {alpha, beta};
}

double b_corrbd(double sigma_sq, double rho, double s_size) {
  if (s_size < 2) throw TooSmall("correlation bound needs |S| >= 2");
  return sigma_sq / std::log(s_size) + rho;
}

double b_hyper2(const std::function<double(double)>& rho_fn,
                const std::function<double(double)>& mu_fn, double sigma_sq,
                int quadrature_points) {
  if (!(sigma_sq > 0.0)) throw DomainError("sigma^2 must be positive");
  if (quadrature_points < 2) throw DomainError("need at least two quadrature points");
  auto integrand = [&](double r) {
    const double rho = rho_fn(r);
    if (!(rho > 0.0) || rho > 1.0 + 1e-15)
      throw InvalidRange("rho(r) must lie in (0,1]");
    const double mu = mu_fn(r);
    // (1-x)/log x, read as -1 at x = 1 (removable in the limit)
    const double factor = rho >= 1.0 ? 1.0 : (1.0 - rho) / (-std::log(rho));
    return 2.0 * mu * factor;
  };
  const double h = sigma_sq / quadrature_points;
  double acc = 0.5 * (integrand(0.0) + integrand(sigma_sq));
  for (int i = 1; i < quadrature_points; ++i) acc += integrand(h * i);
  return acc * h;
}

double b_p2p3_probability(double v, double m, double sigma_sq, double l, double eps,
                          double delta) {
  if (l < 2.0) throw DomainError("peak count l must be >= 2");
  if (!(eps > 0.0 && eps < sigma_sq)) throw DomainError("need 0 < eps < sigma^2");
  if (!(delta > 0.0 && delta < m)) throw DomainError("need 0 < delta < m");
  if (v < 0.0) throw DomainError("variance must be nonnegative");
  const double log_l = std::log(l);
  const double term1 = 4.0 * std::sqrt(v * m * l * l * l * log_l / (delta * eps));
  const double term2 =
      4.0 * std::pow(v * sigma_sq * sigma_sq * std::pow(l, 5) * log_l / (delta * delta * delta * m * eps),
                     0.25);
  return 1.0 - term1 - term2;
}

double binary_entropy_rate(double x) {
  if (x <= -1.0 || x >= 1.0) throw DomainError("I(x) needs x in (-1,1)");
  if (x == 0.0) return 0.0;
  return 0.5 * ((1.0 + x) * std::log1p(x) + (1.0 - x) * std::log1p(-x));
}

double SeriesCoeffs::partial_sum(int r) const {
  double s = 0.0;
  for (int p = 2; p <= r && p < static_cast<int>(cstar.size()); ++p)
    s += cstar[static_cast<std::size_t>(p)];
  return s;
}

SeriesCoeffs cstar_coeffs(int order) {
  if (order < 2) throw DomainError("series order must be >= 2");
  const std::size_t len = static_cast<std::size_t>(order) + 1;
  // g = I / (2 log 2) from the even series I(x) = sum x^{2p} / ((2p-1) 2p)
  std::vector<double> g(len, 0.0);
  const double two_log_two = 2.0 * std::log(2.0);
  for (int p = 1; 2 * p <= order; ++p)
    g[static_cast<std::size_t>(2 * p)] = 1.0 / ((2.0 * p - 1.0) * 2.0 * p) / two_log_two;

  // f = sum_k g^k; g starts at degree 2, so powers past order/2 vanish.
  std::vector<double> f(len, 0.0), term(g), next(len, 0.0);
  while (true) {
    bool nonzero = false;
    for (std::size_t i = 0; i < len; ++i) {
      f[i] += term[i];
      nonzero = nonzero || term[i] != 0.0;
    }
    if (!nonzero) break;
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 2; i < len; ++i) {
      if (term[i] == 0.0) continue;
      for (std::size_t j = 2; i + j < len; ++j) next[i + j] += term[i] * g[j];
    }
    term.swap(next);
  }
  SeriesCoeffs out;
  out.cstar = std::move(f);
  out.order = order;
  return out;
}

MajorizationReport check_majorization(const XiSpec& c, const SeriesCoeffs& cstar) {
  // Partial sums are compared up to the order the c* series was computed
  // to; mixture mass parked beyond that order is outside the verified
  // window.
  MajorizationReport rep;
  rep.pass = true;
  double cs = 0.0, ss = 0.0;
  for (int r = 2; r <= cstar.order; ++r) {
    if (r < static_cast<int>(c.coeffs.size())) cs += c.coeffs[static_cast<std::size_t>(r)];
    ss += cstar.cstar[static_cast<std::size_t>(r)];
    if (cs > ss + 1e-12) {
      rep.pass = false;
      rep.first_violation = r;
      break;
    }
  }
  return rep;
}

XiConditionReport check_xi_condition(const XiSpec& xi, std::span<const double> x_grid) {
  XiConditionReport rep;
  rep.pass = true;
  const double two_log_two = 2.0 * std::log(2.0);
  for (double x : x_grid) {
    if (!(x > -1.0 && x < 1.0)) throw DomainError("xi-condition grid must lie in (-1,1)");
    const double v = xi.eval(x);
    const double v_abs_arg = xi.eval(std::abs(x));
    const double ix = binary_entropy_rate(x);
    const double envelope = ix / (two_log_two - ix);
    if (std::abs(v) > v_abs_arg + 1e-12 || v > envelope + 1e-12) {
      rep.pass = false;
      rep.first_violation_x = x;
      break;
    }
  }
  return rep;
}

std::pair<double, double> mills_bounds(double x) {
  if (!(x > 0.0)) throw NonpositiveX("Mills bounds need x > 0");
  const double phi = std::exp(-x * x / 2.0) / std::sqrt(2.0 * std::numbers::pi);
  return {x * phi / (1.0 + x * x), phi / x};
}

double gausstail(double x) {
  if (x < 0.0) throw DomainError("tail bound needs x >= 0");
  return std::exp(-x * x / 2.0);
}

namespace {

std::string describe(std::initializer_list<std::pair<const char*, double>> kv) {
  std::string out;
  for (const auto& [k, v] : kv) {
    if (!out.empty()) out += " ";
    out += k;
    out += "=";
    out += std::to_string(v);
  }
  return out;
}

}  // namespace

BoundReport report_max_mean(double sigma_sq, double s_size) {
  return {"max_mean", b_max_mean(sigma_sq, s_size), true,
          describe({{"sigma_sq", sigma_sq}, {"s_size", s_size}})};
}

BoundReport report_borell_tail(double sigma_sq, double r) {
  return {"borell_tail", b_borell_tail(sigma_sq, r), true,
          describe({{"sigma_sq", sigma_sq}, {"r", r}})};
}

BoundReport report_gencorr(std::span<const double> r_list, std::size_t s_size) {
  return {"gencorr_beta", b_gencorr(r_list, s_size), false,
          describe({{"s_size", static_cast<double>(s_size)}})};
}

BoundReport report_extreme(double m, double sigma_sq, double s_size) {
  return {"extreme_beta", b_extreme(m, sigma_sq, s_size).second, false,
          describe({{"m", m}, {"sigma_sq", sigma_sq}, {"s_size", s_size}})};
}

BoundReport report_corrbd(double sigma_sq, double rho, double s_size) {
  return {"corrbd", b_corrbd(sigma_sq, rho, s_size), false,
          describe({{"sigma_sq", sigma_sq}, {"rho", rho}, {"s_size", s_size}})};
}

}  // namespace superconc
