#include "special_functions.hpp"

#include <cmath>
#include <limits>

namespace rrd::numerics {

namespace {

constexpr double kTwoOverSqrtPi = 1.1283791670955125739;
constexpr double kOneOverSqrtPi = 0.5641895835477562869;

// erf(x) = (2x/sqrt(pi)) e^{-x^2} sum_k (2x^2)^k / (1*3*...*(2k+1)).
// All terms positive, no cancellation on |x| < 2.
double erf_series(double x) {
  const double x2 = x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= 2.0 * x2 / static_cast<double>(2 * k + 1);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return kTwoOverSqrtPi * x * std::exp(-x2) * sum;
}

// sqrt(pi) e^{x^2} erfc(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
// evaluated by the modified Lentz algorithm. Valid for x >= 2.
double erfc_continued_fraction(double x) {
  const double tiny = 1e-300;
  double f = tiny;
  double c = f;
  double d = 0.0;
  for (int k = 1; k < 300; ++k) {
    const double a = (k == 1) ? 1.0 : 0.5 * static_cast<double>(k - 1);
    const double b = x;
    d = b + a * d;
    if (d == 0.0) d = tiny;
    c = b + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-17) break;
  }
  return kOneOverSqrtPi * std::exp(-x * x) * f;
}

}  // namespace

double erfc(double x) {
  if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
  if (x < 0.0) return 2.0 - erfc(-x);
  if (x < 2.0) return 1.0 - erf_series(x);
  if (x > 27.0) return 0.0;  // below double underflow of exp(-x^2)
  return erfc_continued_fraction(x);
}

}  // namespace rrd::numerics
