#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "errors.hpp"
#include "instance.hpp"

using namespace rrd::problem;
using rrd::numerics::RngStream;

TEST_SUITE_BEGIN("instance");

TEST_CASE("shape ratios round half up") {
  ShapeConfig cfg{200, 0.5, 0.5, 0.42};
  CHECK(cfg.m1() == 100);
  CHECK(cfg.m2() == 100);
  CHECK(cfg.k() == 84);
  ShapeConfig odd{5, 0.5, 0.3, 0.0};
  CHECK(odd.m1() == 3);  // 2.5 rounds up
  CHECK(odd.m2() == 2);  // 1.5 rounds... 1.5 + 0.5 = 2
}

TEST_CASE("paper-scale shapes") {
  ShapeConfig cfg{200, 0.5, 0.5, 0.0};
  RngStream stream(7, 0);
  const auto ins = sample_instance(cfg, ObjectiveSpec::purely_linear(), stream);
  CHECK(ins.A.rows == 100);
  CHECK(ins.A.cols == 200);
  CHECK(ins.B.rows == 100);
  CHECK(ins.B.cols == 200);
  CHECK(ins.ball_bound);
  CHECK(ins.homogeneous());
}

TEST_CASE("alpha1 = 0 drops the equality block") {
  ShapeConfig cfg{10, 0.0, 0.5, 0.0};
  RngStream stream(7, 1);
  const auto ins = sample_instance(cfg, ObjectiveSpec::purely_linear(), stream);
  CHECK(ins.A.rows == 0);
  CHECK(ins.m1() == 0);
}

TEST_CASE("sampling is deterministic per stream") {
  ShapeConfig cfg{12, 0.5, 0.25, 0.0};
  RngStream s1(99, 3), s2(99, 3);
  const auto a = sample_instance(cfg, ObjectiveSpec::purely_linear(), s1);
  const auto b = sample_instance(cfg, ObjectiveSpec::purely_linear(), s2);
  CHECK(a.A.entries == b.A.entries);
  CHECK(a.B.entries == b.B.entries);
}

TEST_CASE("no-ball configurations need the override") {
  ShapeConfig cfg{10, 0.5, 0.5, 0.0};
  RngStream stream(7, 2);
  CHECK_THROWS_AS((void)sample_instance(cfg, ObjectiveSpec::purely_linear(),
                                        stream, std::nullopt,
                                        /*ball_bound=*/false),
                  rrd::ConfigError);
  const auto ins = sample_instance(cfg, ObjectiveSpec::purely_linear(), stream,
                                   std::nullopt, /*ball_bound=*/false,
                                   /*allow_unbounded=*/true);
  CHECK_FALSE(ins.ball_bound);
}

TEST_CASE("offset dimensions are checked") {
  ShapeConfig cfg{10, 0.5, 0.5, 0.0};
  RngStream stream(7, 3);
  Offsets bad{{1.0}, {0.0, 0.0, 0.0, 0.0, 0.0}};
  CHECK_THROWS_AS((void)sample_instance(cfg, ObjectiveSpec::purely_linear(),
                                        stream, bad),
                  rrd::ConfigError);
}

TEST_CASE("pooled generator moments at the pinned seed") {
  ShapeConfig cfg{20, 0.5, 0.5, 0.0};
  double sum = 0.0, sq = 0.0;
  std::size_t count = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    RngStream stream(20240817, t);
    const auto ins = sample_instance(cfg, ObjectiveSpec::purely_linear(), stream);
    for (double v : ins.A.entries) {
      sum += v;
      sq += v * v;
      ++count;
    }
  }
  const double mean = sum / count;
  const double var = sq / count - mean * mean;
  CHECK(mean > -0.02);
  CHECK(mean < 0.02);
  CHECK(var > 0.98);
  CHECK(var < 1.02);
}

TEST_CASE("binary dump replays bit-exactly") {
  ShapeConfig cfg{14, 0.5, 0.5, 0.0};
  RngStream stream(31, 4);
  Offsets offs;
  offs.a_vec = {0.5, -1.0, 0.0, 2.0, 1.0, 0.0, 0.25};
  offs.b_vec = {1.0, 0.0, -0.5, 0.0, 0.0, 3.0, 0.0};
  const auto ins = sample_instance(cfg, ObjectiveSpec::bp_split(0), stream, offs);
  const std::string path = "/tmp/rrd_test_instance.rrdi";
  save_instance(ins, path);
  const auto back = load_instance(path);
  CHECK(back.n == ins.n);
  CHECK(back.A.entries == ins.A.entries);
  CHECK(back.B.entries == ins.B.entries);
  CHECK(back.a_vec == ins.a_vec);
  CHECK(back.b_vec == ins.b_vec);
  CHECK(back.objective.kind == ins.objective.kind);
  CHECK(back.objective.k == ins.objective.k);
  CHECK(back.ball_bound == ins.ball_bound);
  std::remove(path.c_str());
}

TEST_CASE("load rejects a truncated file") {
  const std::string path = "/tmp/rrd_test_trunc.rrdi";
  std::FILE* f = std::fopen(path.c_str(), "wb");
  std::fwrite("RRDI", 1, 4, f);
  std::fclose(f);
  CHECK_THROWS_AS((void)load_instance(path), rrd::IoError);
  std::remove(path.c_str());
}

TEST_CASE("canonical rotation of an aligned c is the identity") {
  ShapeConfig cfg{9, 0.4, 0.4, 0.0};
  RngStream stream(8, 0);
  const std::vector<double> ones(9, 1.0);
  const auto ins = sample_instance(cfg, ObjectiveSpec::general_linear(ones), stream);
  const auto rot = rotate_to_canonical(ins);
  CHECK(rot.scale == doctest::Approx(1.0));
  CHECK(rot.reflector.empty());
  CHECK(rot.instance.A.entries == ins.A.entries);
}

TEST_CASE("rotation identity c^T x = C_gl * ones^T (Q x)") {
  ShapeConfig cfg{11, 0.4, 0.4, 0.0};
  RngStream stream(8, 1);
  const auto c = rrd::numerics::gaussian_vector(stream, 11);
  const auto ins = sample_instance(cfg, ObjectiveSpec::general_linear(c), stream);
  const auto rot = rotate_to_canonical(ins);
  for (int rep = 0; rep < 5; ++rep) {
    const auto x = rrd::numerics::gaussian_vector(stream, 11);
    const auto qx = apply_rotation(rot.reflector, x);
    double ctx = 0.0, sum_qx = 0.0;
    for (std::size_t i = 0; i < 11; ++i) {
      ctx += c[i] * x[i];
      sum_qx += qx[i];
    }
    CHECK(std::abs(ctx - rot.scale * sum_qx) < 1e-10);
  }
}

TEST_CASE("rotation needs a GeneralLinear objective") {
  ShapeConfig cfg{6, 0.5, 0.5, 0.0};
  RngStream stream(8, 2);
  const auto ins = sample_instance(cfg, ObjectiveSpec::purely_linear(), stream);
  CHECK_THROWS_AS((void)rotate_to_canonical(ins), rrd::ConfigError);
}

TEST_SUITE_END();
