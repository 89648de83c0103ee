#include "theory.hpp"

#include <cassert>
#include <cmath>
#include <vector>

#include "errors.hpp"
#include "scalar_opt.hpp"
#include "special_functions.hpp"

namespace rrd::theory {

namespace {
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
constexpr double kRadicandGuard = 1e-12;  // branch-point clamp near D = 1
constexpr double kThetaFloor = 1e-9;

#ifndef NDEBUG
// Coarse scan asserting phi is single-peaked on the searched range.
void assert_unimodal(double beta, double d) {
  std::vector<double> vals;
  vals.reserve(64);
  for (int i = 0; i < 64; ++i) {
    const double t = std::exp(-6.0 + 12.0 * i / 63.0);
    vals.push_back(phi_bp(t, beta, d));
  }
  bool falling = false;
  for (std::size_t i = 1; i < vals.size(); ++i) {
    if (vals[i] < vals[i - 1] - 1e-12) falling = true;
    // after the peak the scan must not rise appreciably again
    assert(!(falling && vals[i] > vals[i - 1] + 1e-9));
  }
}
#endif
}  // namespace

double sqrt_d_coefficient(double alpha1, double alpha2,
                          const EpsilonConfig& eps, Side side) {
  if (alpha1 < 0.0 || alpha2 < 0.0)
    throw ConfigError("theory: alpha ratios must be nonnegative");
  const double root = std::sqrt(alpha1 + alpha2 / 2.0);
  return side == Side::Lower ? (1.0 - eps.eps1_m) * root - eps.eps5_g
                             : (1.0 + eps.eps1_m) * root + eps.eps5_g;
}

double d_factor(double alpha1, double alpha2, const EpsilonConfig& eps,
                Side side) {
  const double coeff =
      std::max(0.0, sqrt_d_coefficient(alpha1, alpha2, eps, side));
  return coeff * coeff;
}

TheoryResult xi_lp(double alpha1, double alpha2, const EpsilonConfig& eps,
                   Side side) {
  const double d = d_factor(alpha1, alpha2, eps, side);
  TheoryResult res;
  res.side = side;
  // D >= 1 clamps to zero; radicands within the guard of zero count as the
  // phase boundary.
  const double radicand = 1.0 - d;
  if (radicand <= kRadicandGuard) {
    res.xi_over_sqrt_n = 0.0;
    res.branch = Branch::ClampedZero;
    return res;
  }
  res.xi_over_sqrt_n = -std::sqrt(radicand);
  res.optimizer = std::sqrt(d / radicand);  // lambda-hat
  res.branch = Branch::Interior;
  return res;
}

TheoryResult xi_gl(std::span<const double> c, double alpha1, double alpha2,
                   const EpsilonConfig& eps, Side side) {
  double norm2 = 0.0;
  for (double v : c) norm2 += v * v;
  if (!(norm2 > 0.0)) throw ConfigError("xi_gl: c must be nonzero");
  const double c_gl = std::sqrt(norm2 / static_cast<double>(c.size()));
  TheoryResult res = xi_lp(alpha1, alpha2, eps, side);
  res.xi_over_sqrt_n *= c_gl;
  return res;
}

double truncated_second_moment(double theta) {
  if (theta < 0.0)
    throw ConfigError("truncated_second_moment: theta must be >= 0");
  return -2.0 * theta * std::exp(-0.5 * theta * theta) * kInvSqrt2Pi +
         (theta * theta + 1.0) * numerics::erfc(theta / std::sqrt(2.0));
}

double phi_bp(double theta, double beta, double d) {
  if (!(theta > 0.0)) throw ConfigError("phi_bp: theta must be positive");
  if (beta < 0.0 || beta > 1.0)
    throw ConfigError("phi_bp: beta must lie in [0, 1]");
  const double inner = (1.0 - beta) * truncated_second_moment(theta) +
                       beta * (1.0 + theta * theta);
  return (-std::sqrt(inner) + std::sqrt(d)) / theta;
}

TheoryResult xi_bp(double beta, double alpha1, double alpha2,
                   const EpsilonConfig& eps, Side side) {
  const double d = d_factor(alpha1, alpha2, eps, side);
  if (beta < 0.0 || beta > 1.0)
    throw ConfigError("xi_bp: beta must lie in [0, 1]");
#ifndef NDEBUG
  assert_unimodal(beta, d);
#endif
  const auto opt = numerics::maximize_scalar(
      [&](double theta) { return phi_bp(std::max(theta, kThetaFloor), beta, d); },
      kThetaFloor, 1.0, 1e-11);
  TheoryResult res;
  res.side = side;
  if (opt.value < 0.0) {
    res.xi_over_sqrt_n = opt.value;
    res.optimizer = opt.argopt;  // theta-hat
    res.branch = Branch::Interior;
  } else {
    res.xi_over_sqrt_n = 0.0;
    res.optimizer = opt.argopt;
    res.branch = Branch::ClampedZero;
  }
  return res;
}

TheoryResult xi_for(int objective_kind, std::span<const double> c, double beta,
                    double alpha1, double alpha2, const EpsilonConfig& eps,
                    Side side) {
  switch (objective_kind) {
    case 0:
      return xi_lp(alpha1, alpha2, eps, side);
    case 1:
      return xi_gl(c, alpha1, alpha2, eps, side);
    case 2:
      return xi_bp(beta, alpha1, alpha2, eps, side);
    default:
      throw ConfigError("xi_for: unknown objective kind");
  }
}

}  // namespace rrd::theory
