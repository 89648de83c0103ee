#include "scalar_opt.hpp"

#include <cmath>

#include "errors.hpp"

namespace rrd::numerics {

namespace {
constexpr double kGolden = 0.6180339887498948482;  // 1/phi
constexpr int kMaxExpansions = 62;
constexpr int kMaxRefinements = 400;
}  // namespace

ScalarOptResult maximize_scalar(const std::function<double(double)>& f,
                                double lo, double hi_init, double tol) {
  if (!(tol > 0.0)) throw ConfigError("maximize_scalar: tol must be positive");
  if (!(hi_init > lo)) hi_init = lo + 1.0;

  ScalarOptResult result;
  auto eval = [&](double x) {
    ++result.evaluations;
    return f(x);
  };

  // Geometric expansion until f decreases at the right end.
  double left = lo;
  double prev = lo;
  double cur = hi_init;
  double f_prev = eval(prev);
  double f_cur = eval(cur);
  int expansions = 0;
  while (f_cur > f_prev) {
    if (++expansions > kMaxExpansions)
      throw UnboundedMaximumError(
          "maximize_scalar: expansion cap reached with f still increasing");
    left = prev;
    prev = cur;
    f_prev = f_cur;
    cur = lo + (cur - lo) * 2.0;
    f_cur = eval(cur);
  }
  double a = left;
  double b = cur;

  // Golden-section refinement on [a, b].
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = eval(x1);
  double f2 = eval(x2);
  int iter = 0;
  while (b - a > tol && iter++ < kMaxRefinements) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = eval(x2);
    }
  }

  result.argopt = 0.5 * (a + b);
  result.value = eval(result.argopt);
  // Never report a value below the endpoints actually seen.
  if (f1 > result.value) {
    result.value = f1;
    result.argopt = x1;
  }
  if (f2 > result.value) {
    result.value = f2;
    result.argopt = x2;
  }
  result.converged = (b - a) <= tol;
  return result;
}

}  // namespace rrd::numerics
