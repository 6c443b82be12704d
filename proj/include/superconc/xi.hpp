#pragma once

#include <functional>
#include <string>
#include <vector>

namespace superconc {

// Mixture specification for the generalized SK covariance
// xi(x) = sum_{p>=2} c_p x^p. coeffs[p] = c_p (entries 0 and 1 unused).
// A closed form, when set, is used for evaluation instead of the poly sum.
struct XiSpec {
  std::vector<double> coeffs;
  std::function<double(double)> closed_form;

  double eval(double x) const;
  double coeff_sum() const;

  // All mass on even powers; such mixtures make X_sigma = X_{-sigma}.
  bool even() const;

  // Throws DomainError if some c_p < 0 or |sum c_p - 1| > 1e-10; the SK
  // model requires a normalized mixture so that xi(1) = 1.
  void validate_mixture() const;

  static XiSpec monomial(int p);
  // "x^2", "0.5*x^2+0.5*x^4", ... ; throws DomainError on a malformed term.
  static XiSpec parse(const std::string& text);
  std::string to_string() const;
};

}  // namespace superconc
