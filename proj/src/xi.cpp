#include "superconc/xi.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "superconc/errors.hpp"

namespace superconc {

double XiSpec::eval(double x) const {
  if (closed_form) return closed_form(x);
  double acc = 0.0;
  double xp = x * x;  // x^p starting at p = 2
  for (std::size_t p = 2; p < coeffs.size(); ++p) {
    acc += coeffs[p] * xp;
    xp *= x;
  }
  return acc;
}

double XiSpec::coeff_sum() const {
  double s = 0.0;
  for (std::size_t p = 2; p < coeffs.size(); ++p) s += coeffs[p];
  return s;
}

bool XiSpec::even() const {
  for (std::size_t p = 3; p < coeffs.size(); p += 2)
    if (coeffs[p] != 0.0) return false;
  return true;
}

void XiSpec::validate_mixture() const {
  for (std::size_t p = 2; p < coeffs.size(); ++p)
    if (coeffs[p] < 0.0) throw DomainError("mixture coefficients must be nonnegative");
  if (std::abs(coeff_sum() - 1.0) > 1e-10)
    throw DomainError("mixture coefficients must sum to 1");
}

XiSpec XiSpec::monomial(int p) {
  if (p < 2) throw DomainError("mixture powers start at p = 2");
  XiSpec xi;
  xi.coeffs.assign(static_cast<std::size_t>(p) + 1, 0.0);
  xi.coeffs[static_cast<std::size_t>(p)] = 1.0;
  return xi;
}

XiSpec XiSpec::parse(const std::string& text) {
  XiSpec xi;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('+', pos);
    if (end == std::string::npos) end = text.size();
    std::string term = text.substr(pos, end - pos);
    // strip blanks
    std::string t;
    for (char c : term)
      if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    double coef = 1.0;
    const std::size_t star = t.find('*');
    std::string mono = t;
    if (star != std::string::npos) {
      char* cend = nullptr;
      coef = std::strtod(t.c_str(), &cend);
      if (cend != t.c_str() + star) throw DomainError("bad coefficient in xi term '" + term + "'");
      mono = t.substr(star + 1);
    }
    int p = 0;
    if (mono == "x") {
      p = 1;
    } else if (mono.rfind("x^", 0) == 0) {
      p = std::atoi(mono.c_str() + 2);
    } else {
      throw DomainError("bad xi term '" + term + "' (expected [c*]x^p)");
    }
    if (p < 2) throw DomainError("xi powers must satisfy p >= 2");
    if (xi.coeffs.size() <= static_cast<std::size_t>(p))
      xi.coeffs.resize(static_cast<std::size_t>(p) + 1, 0.0);
    xi.coeffs[static_cast<std::size_t>(p)] += coef;
    pos = end + 1;
  }
  if (xi.coeffs.empty()) throw DomainError("empty xi expression");
  return xi;
}

std::string XiSpec::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t p = 2; p < coeffs.size(); ++p) {
    if (coeffs[p] == 0.0) continue;
    if (!first) os << "+";
    if (coeffs[p] != 1.0) os << coeffs[p] << "*";
    os << "x^" << p;
    first = false;
  }
  if (first) os << "0*x^2";
  return os.str();
}

}  // namespace superconc
