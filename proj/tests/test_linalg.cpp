#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "linalg.hpp"
#include "rng.hpp"

using rrd::numerics::DenseMatrix;
using rrd::numerics::NullspaceProjector;
using rrd::numerics::RngStream;

namespace {

DenseMatrix random_matrix(std::size_t rows, std::size_t cols,
                          std::uint64_t id) {
  DenseMatrix m(rows, cols);
  RngStream stream(314159, id);
  if (rows * cols) stream.fill_gaussian(m.entries.data(), rows * cols);
  return m;
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TEST_SUITE_BEGIN("linalg");

TEST_CASE("projector annihilates the row space") {
  const auto a = random_matrix(4, 10, 0);
  const NullspaceProjector p(a);
  RngStream stream(1, 0);
  const auto y = rrd::numerics::gaussian_vector(stream, 4);
  // x = A^T y
  std::vector<double> x(10, 0.0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 10; ++j) x[j] += a.at(i, j) * y[i];
  const auto px = p.apply(x);
  CHECK(norm(px) <= 1e-10 * norm(x));
}

TEST_CASE("idempotent to 1e-10") {
  const auto a = random_matrix(3, 8, 1);
  const NullspaceProjector p(a);
  RngStream stream(2, 0);
  const auto x = rrd::numerics::gaussian_vector(stream, 8);
  const auto px = p.apply(x);
  const auto ppx = p.apply(px);
  for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(ppx[i] - px[i]) < 1e-10);
}

TEST_CASE("empty constraint block acts as the identity") {
  const DenseMatrix a(0, 6);
  const NullspaceProjector p(a);
  RngStream stream(3, 0);
  const auto x = rrd::numerics::gaussian_vector(stream, 6);
  const auto px = p.apply(x);
  for (std::size_t i = 0; i < 6; ++i) CHECK(px[i] == x[i]);
}

TEST_CASE("self-adjoint on random pairs") {
  const auto a = random_matrix(5, 12, 2);
  const NullspaceProjector p(a);
  RngStream stream(4, 0);
  for (int rep = 0; rep < 8; ++rep) {
    const auto x = rrd::numerics::gaussian_vector(stream, 12);
    const auto y = rrd::numerics::gaussian_vector(stream, 12);
    const auto px = p.apply(x);
    const auto py = p.apply(y);
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < 12; ++i) {
      lhs += px[i] * y[i];
      rhs += x[i] * py[i];
    }
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("rank deficiency is reported") {
  auto a = random_matrix(3, 6, 3);
  for (std::size_t j = 0; j < 6; ++j) a.at(2, j) = a.at(0, j);  // repeat a row
  CHECK_THROWS_AS(NullspaceProjector{a}, rrd::SingularMatrixError);
}

TEST_CASE("matrix validation") {
  DenseMatrix m(2, 3);
  m.validate();
  m.entries[1] = std::nan("");
  CHECK_THROWS_AS(m.validate(), rrd::ConfigError);
  m.entries[1] = 0.0;
  m.entries.pop_back();
  CHECK_THROWS_AS(m.validate(), rrd::ConfigError);
}

TEST_SUITE_END();
