#include <doctest.h>

#include <cmath>
#include <functional>

#include "errors.hpp"
#include "theory.hpp"

using namespace rrd::theory;

namespace {

// Independent quadrature oracle for the truncated second moment:
// adaptive Simpson on 2 * int_theta^inf (t - theta)^2 phi(t) dt.
double simpson(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  return (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
}

double adaptive(const std::function<double(double)>& f, double a, double b,
                double whole, double tol, int depth) {
  const double c = 0.5 * (a + b);
  const double left = simpson(f, a, c);
  const double right = simpson(f, c, b);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive(f, a, c, left, tol / 2.0, depth - 1) +
         adaptive(f, c, b, right, tol / 2.0, depth - 1);
}

double tsm_quadrature(double theta) {
  const auto integrand = [theta](double t) {
    return 2.0 * (t - theta) * (t - theta) *
           std::exp(-0.5 * t * t) / std::sqrt(2.0 * M_PI);
  };
  const double hi = theta + 42.0;
  return adaptive(integrand, theta, hi, simpson(integrand, theta, hi), 1e-13,
                  48);
}

}  // namespace

TEST_SUITE_BEGIN("theory");

TEST_CASE("d factor") {
  CHECK(d_factor(0.5, 0.5, {}, Side::Lower) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(d_factor(0.5, 1.0, {}, Side::Lower) == doctest::Approx(1.0).epsilon(1e-14));
  const EpsilonConfig eps{0.01, 0.0};
  CHECK(d_factor(0.5, 0.5, eps, Side::Lower) < d_factor(0.5, 0.5, {}, Side::Lower));
  CHECK(d_factor(0.5, 0.5, {}, Side::Lower) < d_factor(0.5, 0.5, eps, Side::Upper));
  CHECK_THROWS_AS((void)d_factor(-0.1, 0.5, {}, Side::Lower), rrd::ConfigError);
}

TEST_CASE("purely linear predictions reproduce the reference sweep") {
  const double expected[] = {-0.5000, -0.4472, -0.3873, -0.3162, -0.2236, 0.0000};
  const double alpha2[] = {0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  for (int i = 0; i < 6; ++i) {
    const auto res = xi_lp(0.5, alpha2[i], {}, Side::Lower);
    CHECK(std::abs(res.xi_over_sqrt_n - expected[i]) < 5e-5);
  }
}

TEST_CASE("interior branch carries lambda-hat") {
  const auto res = xi_lp(0.5, 0.5, {}, Side::Lower);
  CHECK(res.branch == Branch::Interior);
  CHECK(res.optimizer == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("past the phase boundary the branch clamps") {
  const auto res = xi_lp(0.5, 1.2, {}, Side::Lower);
  CHECK(res.branch == Branch::ClampedZero);
  CHECK(res.xi_over_sqrt_n == 0.0);
  CHECK(res.optimizer == 0.0);
}

TEST_CASE("lower equals upper in the epsilon-zero limit") {
  for (double a2 = 0.1; a2 < 1.4; a2 += 0.07) {
    const auto lo = xi_lp(0.5, a2, {}, Side::Lower);
    const auto hi = xi_lp(0.5, a2, {}, Side::Upper);
    CHECK(lo.xi_over_sqrt_n == hi.xi_over_sqrt_n);
  }
}

TEST_CASE("nonzero epsilon widens the bounds") {
  const EpsilonConfig eps{0.01, 0.0};
  const double lo = xi_lp(0.5, 0.5, eps, Side::Lower).xi_over_sqrt_n;
  const double mid = xi_lp(0.5, 0.5, {}, Side::Lower).xi_over_sqrt_n;
  const double hi = xi_lp(0.5, 0.5, eps, Side::Upper).xi_over_sqrt_n;
  CHECK(lo < mid);  // lower-side D shrinks, bound falls further below
  CHECK(hi > mid);
}

TEST_CASE("general linear scales by C_gl") {
  const std::vector<double> ones(16, 1.0);
  const auto base = xi_lp(0.5, 0.5, {}, Side::Lower);
  const auto same = xi_gl(ones, 0.5, 0.5, {}, Side::Lower);
  CHECK(same.xi_over_sqrt_n == doctest::Approx(base.xi_over_sqrt_n).epsilon(1e-14));

  std::vector<double> doubled(16, 2.0);
  const auto two = xi_gl(doubled, 0.5, 0.5, {}, Side::Lower);
  CHECK(two.xi_over_sqrt_n == doctest::Approx(-1.0).epsilon(1e-9));

  // homogeneity in c
  std::vector<double> c{3.0, -1.0, 2.0, 0.5};
  const double v1 = xi_gl(c, 0.5, 0.6, {}, Side::Lower).xi_over_sqrt_n;
  for (double& v : c) v *= 1.7;
  const double v2 = xi_gl(c, 0.5, 0.6, {}, Side::Lower).xi_over_sqrt_n;
  CHECK(v2 == doctest::Approx(1.7 * v1).epsilon(1e-12));

  CHECK_THROWS_AS((void)xi_gl(std::vector<double>{0.0, 0.0}, 0.5, 0.5, {},
                              Side::Lower),
                  rrd::ConfigError);
}

TEST_CASE("truncated second moment endpoints") {
  CHECK(truncated_second_moment(0.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(truncated_second_moment(10.0) < 1e-20);
  CHECK_THROWS_AS((void)truncated_second_moment(-0.1), rrd::ConfigError);
}

TEST_CASE("truncated second moment matches the quadrature oracle") {
  for (const double theta : {0.1, 0.5, 1.0, 2.0, 4.0}) {
    CHECK(std::abs(truncated_second_moment(theta) - tsm_quadrature(theta)) <
          1e-9);
  }
}

TEST_CASE("phi at beta = 1 reduces to the purely linear expression") {
  const double d = 0.75;
  double best = -1e308;
  for (double theta = 0.05; theta < 8.0; theta += 1e-3) {
    best = std::max(best, phi_bp(theta, 1.0, d));
  }
  CHECK(std::abs(best - (-std::sqrt(1.0 - d))) < 1e-6);
}

TEST_CASE("phi rejects bad arguments") {
  CHECK_THROWS_AS((void)phi_bp(0.0, 0.5, 0.75), rrd::ConfigError);
  CHECK_THROWS_AS((void)phi_bp(1.0, 1.5, 0.75), rrd::ConfigError);
}

TEST_CASE("split-objective predictions reproduce the reference sweep") {
  const double betas[] = {0.42, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  const double expected[] = {-0.0189, -0.0936, -0.1825, -0.2672,
                             -0.3481, -0.4256, -0.5000};
  for (int i = 0; i < 7; ++i) {
    const auto res = xi_bp(betas[i], 0.5, 0.5, {}, Side::Lower);
    CHECK(std::abs(res.xi_over_sqrt_n - expected[i]) < 5e-5);
    CHECK(res.branch == Branch::Interior);
    CHECK(res.optimizer > 0.0);
  }
}

TEST_CASE("split objective at beta = 1 equals the purely linear theory") {
  for (int i = 0; i < 10; ++i) {
    const double a1 = 0.1 + 0.08 * i;
    const double a2 = 0.2 + 0.05 * i;
    const double bp = xi_bp(1.0, a1, a2, {}, Side::Lower).xi_over_sqrt_n;
    const double lp = xi_lp(a1, a2, {}, Side::Lower).xi_over_sqrt_n;
    CHECK(std::abs(bp - lp) < 1e-6);
  }
}

TEST_CASE("prediction magnitude shrinks as constraints grow") {
  double prev_lp = -2.0, prev_bp = -2.0;
  for (int i = 0; i < 20; ++i) {
    const double a2 = 0.2 + i * 0.065;
    const double lp = xi_lp(0.5, a2, {}, Side::Lower).xi_over_sqrt_n;
    const double bp = xi_bp(0.6, 0.5, a2, {}, Side::Lower).xi_over_sqrt_n;
    CHECK(std::abs(lp) <= std::abs(prev_lp) + 1e-12);
    CHECK(std::abs(bp) <= std::abs(prev_bp) + 1e-12);
    prev_lp = lp;
    prev_bp = bp;
  }
}

TEST_SUITE_END();
