#include <doctest.h>

#include <cmath>
#include <vector>

#include "errors.hpp"
#include "objective.hpp"
#include "rng.hpp"

using namespace rrd::problem;
using rrd::numerics::RngStream;
using rrd::numerics::gaussian_vector;

TEST_SUITE_BEGIN("objective");

TEST_CASE("purely linear sums the coordinates") {
  const std::vector<double> x{1.0, 1.0, 1.0};
  CHECK(evaluate_objective(ObjectiveSpec::purely_linear(), x) == 3.0);
}

TEST_CASE("split objective direct formula") {
  const auto obj = ObjectiveSpec::bp_split(2);
  const std::vector<double> x{-1.0, 2.0, -3.0, 4.0};
  CHECK(evaluate_objective(obj, x) == 4.0);
}

TEST_CASE("degree-1 homogeneity") {
  RngStream stream(11, 0);
  const auto x = gaussian_vector(stream, 12);
  std::vector<double> scaled(x);
  const double a = 2.5;
  for (double& v : scaled) v *= a;

  std::vector<ObjectiveSpec> objectives{
      ObjectiveSpec::purely_linear(),
      ObjectiveSpec::general_linear(gaussian_vector(stream, 12)),
      ObjectiveSpec::bp_split(5)};
  for (const auto& obj : objectives) {
    const double f = evaluate_objective(obj, x);
    const double fs = evaluate_objective(obj, scaled);
    CHECK(std::abs(fs - a * f) <= 1e-12 * std::max(1.0, std::abs(a * f)));
  }
}

TEST_CASE("zero c is rejected") {
  CHECK_THROWS_AS(ObjectiveSpec::general_linear({0.0, 0.0}), rrd::ConfigError);
}

TEST_CASE("dimension mismatches are rejected") {
  const auto gl = ObjectiveSpec::general_linear({1.0, 2.0});
  const std::vector<double> x{1.0, 2.0, 3.0};
  CHECK_THROWS_AS((void)evaluate_objective(gl, x), rrd::ConfigError);
  const auto bp = ObjectiveSpec::bp_split(9);
  CHECK_THROWS_AS((void)evaluate_objective(bp, x), rrd::ConfigError);
}

TEST_CASE("prox of the linear part shifts") {
  const std::vector<double> v{0.0, 0.0};
  const auto u = prox_objective(ObjectiveSpec::purely_linear(), v, 0.5);
  CHECK(u[0] == -0.5);
  CHECK(u[1] == -0.5);
}

TEST_CASE("prox soft-thresholds the absolute part") {
  const auto obj = ObjectiveSpec::bp_split(1);
  const std::vector<double> v{0.3, -0.9, 2.0};
  const auto u = prox_objective(obj, v, 0.5);
  CHECK(u[0] == 0.0);   // |0.3| <= t collapses
  CHECK(u[1] == doctest::Approx(-0.4));
  CHECK(u[2] == doctest::Approx(1.5));  // linear tail shifts
}

TEST_CASE("prox optimality: v - u lies in t * subgradient(u)") {
  RngStream stream(13, 0);
  for (const double t : {0.1, 0.7, 2.0}) {
    const auto v = gaussian_vector(stream, 10);
    const auto obj = ObjectiveSpec::bp_split(4);
    const auto u = prox_objective(obj, v, t);
    for (std::size_t i = 0; i < 10; ++i) {
      const double res = v[i] - u[i];
      if (i < 6) {  // absolute-value block
        if (u[i] != 0.0) {
          CHECK(res == doctest::Approx(t * (u[i] > 0 ? 1.0 : -1.0)));
        } else {
          CHECK(std::abs(res) <= t + 1e-12);
        }
      } else {  // linear block
        CHECK(res == doctest::Approx(t));
      }
    }
  }
}

TEST_SUITE_END();
