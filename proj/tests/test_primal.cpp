#include <doctest.h>

#include <cmath>
#include <vector>

#include "auxiliary.hpp"
#include "errors.hpp"
#include "primal.hpp"
#include "rng.hpp"

using namespace rrd;
using numerics::RngStream;
using problem::ObjectiveSpec;
using problem::ProblemInstance;
using problem::ShapeConfig;

namespace {

ProblemInstance pinned_instance(std::size_t n, double a1, double a2,
                                ObjectiveSpec obj, std::uint64_t id) {
  ShapeConfig cfg{n, a1, a2, 0.0};
  RngStream stream(777, id);
  return sample_instance(cfg, obj, stream);
}

}  // namespace

TEST_SUITE_BEGIN("primal");

TEST_CASE("ball-only linear program has the analytic optimum") {
  ShapeConfig cfg{3, 0.0, 0.0, 0.0};
  RngStream stream(1, 0);
  const auto ins = sample_instance(cfg, ObjectiveSpec::purely_linear(), stream);
  const auto sol = primal::solve_primal(ins);
  CHECK(sol.converged);
  CHECK(std::abs(sol.objective - (-std::sqrt(3.0))) < 1e-6);
}

TEST_CASE("all-ones equality row removes the descent direction") {
  ProblemInstance ins;
  ins.n = 3;
  ins.A = numerics::DenseMatrix(1, 3);
  ins.A.entries = {1.0, 1.0, 1.0};
  ins.B = numerics::DenseMatrix(0, 3);
  ins.a_vec = {0.0};
  ins.objective = ObjectiveSpec::purely_linear();
  const auto sol = primal::solve_primal(ins);
  CHECK(sol.converged);
  CHECK(std::abs(sol.objective) < 1e-5);
  for (double xi : sol.x) CHECK(std::abs(xi) < 1e-4);
}

TEST_CASE("certify trivial cases") {
  const auto ins = pinned_instance(5, 0.4, 0.4, ObjectiveSpec::purely_linear(), 0);
  const std::vector<double> zero(5, 0.0);
  const auto rep0 = primal::certify(ins, zero, 1e-12);
  CHECK(rep0.pass);
  CHECK(rep0.eq == 0.0);
  CHECK(rep0.ineq == 0.0);
  CHECK(rep0.ball == 0.0);

  std::vector<double> two(5, 0.0);
  two[0] = 2.0;
  const auto rep2 = primal::certify(ins, two, 1e-6);
  CHECK_FALSE(rep2.pass);
  CHECK(rep2.ball == doctest::Approx(1.0));
}

TEST_CASE("solver output certifies at 1e-6") {
  const auto ins = pinned_instance(12, 0.5, 0.5, ObjectiveSpec::purely_linear(), 1);
  const auto sol = primal::solve_primal(ins);
  REQUIRE(sol.converged);
  const auto rep = primal::certify(ins, sol.x, 1e-6);
  CHECK(rep.pass);
}

TEST_CASE("oracle stays above the solver within tolerance") {
  for (std::uint64_t id = 0; id < 5; ++id) {
    for (const auto& obj :
         {ObjectiveSpec::purely_linear(), ObjectiveSpec::bp_split(3)}) {
      ShapeConfig cfg{6, 1.0 / 3.0, 1.0 / 3.0, 0.0};
      RngStream stream(4242, id * 2 + (obj.kind == problem::ObjectiveKind::BpSplit));
      const auto ins = sample_instance(cfg, obj, stream);
      const auto sol = primal::solve_primal(ins);
      REQUIRE(sol.converged);
      RngStream oracle_stream(5555, id);
      const double oracle = primal::brute_force_oracle(ins, 200000, oracle_stream);
      CHECK(sol.objective <= oracle + 1e-2);
      CHECK(sol.objective >= oracle - 5e-2);
    }
  }
}

TEST_CASE("homogeneous oracle never exceeds zero") {
  const auto ins = pinned_instance(6, 0.5, 0.5, ObjectiveSpec::purely_linear(), 9);
  RngStream stream(6, 0);
  CHECK(primal::brute_force_oracle(ins, 1000, stream) <= 0.0);
}

TEST_CASE("ball-only oracle approaches the analytic optimum") {
  ShapeConfig cfg{3, 0.0, 0.0, 0.0};
  RngStream stream(7, 0);
  const auto ins = sample_instance(cfg, ObjectiveSpec::purely_linear(), stream);
  RngStream oracle_stream(8, 0);
  const double oracle = primal::brute_force_oracle(ins, 100000, oracle_stream);
  CHECK(std::abs(oracle - (-std::sqrt(3.0))) < 5e-2);
}

TEST_CASE("oracle rejects large dimensions") {
  const auto ins = pinned_instance(12, 0.5, 0.5, ObjectiveSpec::purely_linear(), 1);
  RngStream stream(9, 0);
  CHECK_THROWS_AS((void)primal::brute_force_oracle(ins, 10, stream),
                  rrd::ConfigError);
}

TEST_CASE("removing inequality rows never raises the optimum") {
  auto ins = pinned_instance(20, 0.25, 0.5, ObjectiveSpec::purely_linear(), 3);
  const auto full = primal::solve_primal(ins);
  REQUIRE(full.converged);
  // drop the last 4 rows of B
  auto reduced = ins;
  const std::size_t keep = ins.B.rows - 4;
  reduced.B.rows = keep;
  reduced.B.entries.resize(keep * ins.n);
  reduced.b_vec.resize(keep);
  const auto less = primal::solve_primal(reduced);
  REQUIRE(less.converged);
  CHECK(less.objective <= full.objective + 1e-5);
}

TEST_CASE("optimum scales with the ball radius") {
  const auto ins = pinned_instance(10, 0.4, 0.4, ObjectiveSpec::purely_linear(), 4);
  primal::SolverConfig cfg;
  const auto base = primal::solve_primal(ins, cfg);
  REQUIRE(base.converged);
  for (const double radius : {0.5, 2.0}) {
    cfg.ball_radius = radius;
    const auto scaled = primal::solve_primal(ins, cfg);
    REQUIRE(scaled.converged);
    CHECK(std::abs(scaled.objective - radius * base.objective) < 1e-5);
  }
}

TEST_CASE("windowed residual trend is nonincreasing") {
  const auto ins = pinned_instance(16, 0.5, 0.5, ObjectiveSpec::purely_linear(), 5);
  primal::SolverConfig cfg;
  cfg.record_history = true;
  const auto sol = primal::solve_primal(ins, cfg);
  REQUIRE(sol.history.size() > 100);
  const std::size_t window = 50;
  double prev = 1e308;
  for (std::size_t start = 0; start + window <= sol.history.size();
       start += window) {
    double acc = 0.0;
    for (std::size_t i = start; i < start + window; ++i) acc += sol.history[i];
    const double mean = acc / window;
    CHECK(mean <= prev * (1.0 + 1e-9) + 1e-15);
    prev = mean;
  }
}

TEST_CASE("rotated instance solves to the scaled optimum") {
  ShapeConfig cfg{20, 0.4, 0.4, 0.0};
  RngStream stream(10, 0);
  const auto c = numerics::gaussian_vector(stream, 20);
  const auto ins = sample_instance(cfg, ObjectiveSpec::general_linear(c), stream);
  const auto rot = problem::rotate_to_canonical(ins);
  const auto orig = primal::solve_primal(ins);
  const auto canon = primal::solve_primal(rot.instance);
  REQUIRE(orig.converged);
  REQUIRE(canon.converged);
  CHECK(std::abs(orig.objective - rot.scale * canon.objective) < 1e-4);
}

TEST_CASE("solver config validation") {
  primal::SolverConfig cfg;
  cfg.rho = -1.0;
  CHECK_THROWS_AS(cfg.validate(), rrd::ConfigError);
  cfg = {};
  cfg.over_relaxation = 2.5;
  CHECK_THROWS_AS(cfg.validate(), rrd::ConfigError);
}

TEST_SUITE_END();
