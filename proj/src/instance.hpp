#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "objective.hpp"
#include "rng.hpp"

namespace rrd::problem {

// Dimension ratios of the linear regime: m1 = round(alpha1 * n),
// m2 = round(alpha2 * n), and for BpSplit objectives k = round(beta * n).
struct ShapeConfig {
  std::size_t n = 0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double beta = 0.0;

  std::size_t m1() const;
  std::size_t m2() const;
  std::size_t k() const;
};

// round-half-up of alpha * n
std::size_t scaled_dim(double alpha, std::size_t n);

struct Offsets {
  std::vector<double> a_vec;
  std::vector<double> b_vec;
};

// One sampled random program
//   min f(x)  s.t.  A x = a, B x <= b, (||x||_2 <= 1 when ball_bound)
// with A, B filled with i.i.d. standard normals. a and b are zero in the
// homogeneous case.
struct ProblemInstance {
  std::size_t n = 0;
  numerics::DenseMatrix A;
  numerics::DenseMatrix B;
  std::vector<double> a_vec;
  std::vector<double> b_vec;
  ObjectiveSpec objective;
  bool ball_bound = true;

  std::size_t m1() const { return A.rows; }
  std::size_t m2() const { return B.rows; }
  bool homogeneous() const;
};

// Samples A then B row-major from the stream. For BpSplit objectives the
// split k is pinned to round(beta * n) and beta <= alpha1 is enforced.
// Refuses ball_bound = false unless allow_unbounded is set: without a
// bounding set the built-in homogeneous objectives diverge.
ProblemInstance sample_instance(const ShapeConfig& cfg,
                                const ObjectiveSpec& objective,
                                numerics::RngStream& stream,
                                std::optional<Offsets> offsets = std::nullopt,
                                bool ball_bound = true,
                                bool allow_unbounded = false);

// Rotation of a GeneralLinear instance onto the purely linear canonical form.
// Q is the Householder reflector swapping c/||c|| with ones/sqrt(n), so
// f_gl(x) = scale * f_lp(Q x) with scale = ||c||_2 / sqrt(n), and the rotated
// matrices A Q^T, B Q^T keep the Gaussian distribution.
struct CanonicalRotation {
  ProblemInstance instance;  // PurelyLinear objective
  double scale = 1.0;        // C_gl
  std::vector<double> reflector;  // q of Q = I - 2 q q^T / (q^T q); empty => Q = I
};

CanonicalRotation rotate_to_canonical(const ProblemInstance& instance);

// Applies the rotation Q to a vector (identity when reflector is empty).
std::vector<double> apply_rotation(const std::vector<double>& reflector,
                                   std::span<const double> x);

// Binary replay dump (see docs/instance-format.md). Little-endian 64-bit
// floats, matrices row-major.
void save_instance(const ProblemInstance& instance, const std::string& path);
ProblemInstance load_instance(const std::string& path);

}  // namespace rrd::problem
