#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "superconc/xi.hpp"

namespace superconc {

// Closed-form bounds from the classical Gaussian toolbox. Constant-free
// bounds are exact inequalities; bounds with an unspecified universal
// constant are evaluated with C normalized to 1 and flagged structural.
struct BoundReport {
  std::string name;
  double structural_value = 0.0;
  bool constant_free = false;
  std::string inputs;
};

// m <= sqrt(2 sigma^2 log |S|); constant-free.
double b_max_mean(double sigma_sq, double s_size);

// P(M - m >= r) <= e^{-r^2 / 2 sigma^2}; constant-free.
double b_borell_tail(double sigma_sq, double r);

// E R(I^0, I^t) <= v / (1 - e^-t); constant-free, t > 0.
double b_varconv_upper(double v, double t);
// v <= sigma^2 (1 - e^-t) + overlap e^-t; constant-free, t >= 0.
double b_varconv_lower(double sigma_sq, double overlap, double t);

// beta of the correlation-profile bound v <= C sigma^2 beta; structural.
// r_list must hold all |S|^2 normalized correlations, diagonal included.
double b_gencorr(std::span<const double> r_list, std::size_t s_size);

// (alpha, beta) of the extremality bound v <= C sigma^2 beta; structural.
std::pair<double, double> b_extreme(double m, double sigma_sq, double s_size);

// v <= sigma^2 / log|S| + rho with C normalized to 1; structural.
double b_corrbd(double sigma_sq, double rho, double s_size);

// Covering-profile bound v <= int_0^{sigma^2} 2 mu(r)(1-rho(r))/(-log rho(r)) dr,
// with (1-x)/log x read as -1 at x = 1. Composite trapezoid with
// `quadrature_points` panels; constant-free given exact rho, mu.
double b_hyper2(const std::function<double(double)>& rho_fn,
                const std::function<double(double)>& mu_fn, double sigma_sq,
                int quadrature_points = 10000);

// Probability floor of the multiple-peaks theorem; may be negative
// (vacuous). Constant-free.
double b_p2p3_probability(double v, double m, double sigma_sq, double l, double eps,
                          double delta);

// I(x) = ((1+x)log(1+x) + (1-x)log(1-x)) / 2.
double binary_entropy_rate(double x);

// Coefficients c_p* of I(x)/(2 log 2 - I(x)) = sum_{p>=2} c_p* x^p by
// formal power-series composition from the even series of I.
struct SeriesCoeffs {
  std::vector<double> cstar;  // cstar[p] = c_p*, entries 0,1 zero
  int order = 0;

  double partial_sum(int r) const;
};
SeriesCoeffs cstar_coeffs(int order = 64);

// Partial-sum majorization sum_{p<=r} c_p <= sum_{p<=r} c_p* for every r
// up to the common order.
struct MajorizationReport {
  bool pass = false;
  std::optional<int> first_violation;
};
MajorizationReport check_majorization(const XiSpec& c, const SeriesCoeffs& cstar);

// Pointwise |xi(x)| <= xi(|x|) and xi(x) <= I(x)/(2 log 2 - I(x)) on the
// grid (grid points must lie in (-1,1)).
struct XiConditionReport {
  bool pass = false;
  std::optional<double> first_violation_x;
};
XiConditionReport check_xi_condition(const XiSpec& xi, std::span<const double> x_grid);

// Mills ratio sandwich of the standard normal upper tail, and the
// optimized-exponential tail bound e^{-x^2/2}.
std::pair<double, double> mills_bounds(double x);
double gausstail(double x);

// Report forms of the calculators, carrying the constant-free flag: exact
// inequalities keep their value; C-normalized bounds are marked structural.
BoundReport report_max_mean(double sigma_sq, double s_size);
BoundReport report_borell_tail(double sigma_sq, double r);
BoundReport report_gencorr(std::span<const double> r_list, std::size_t s_size);
BoundReport report_extreme(double m, double sigma_sq, double s_size);
BoundReport report_corrbd(double sigma_sq, double rho, double s_size);

}  // namespace superconc
