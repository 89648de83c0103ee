#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "instance.hpp"
#include "splitting_solver.hpp"
#include "theory.hpp"

namespace rrd::auxiliary {

enum class AuxStatus { Ok, UnboundedAux, NonConverged, Infeasible };

// Configuration of one auxiliary-program evaluation. The lower side carries
// the constraint g^T x + K ||x|| <= 0, the upper side -g^T x + K ||x|| <= 0,
// with K built from the shape and epsilon constants (see
// constraint_threshold). The spherical bound is on by default; without it
// the homogeneous objectives are unbounded and the nonhomogeneous search
// expands its radius cap instead.
struct AuxSpec {
  theory::Side side = theory::Side::Lower;
  problem::ShapeConfig shape;
  theory::EpsilonConfig eps;
  problem::ObjectiveSpec objective;
  bool ball_bound = true;
  std::optional<problem::Offsets> offsets;  // nonhomogeneous a, b
};

struct AuxEvaluation {
  double value = 0.0;        // optimum before subtracting xi_D
  double dual_scalar = 0.0;  // lambda-hat (lp), theta-hat (bp), radius (nonhom)
  AuxStatus status = AuxStatus::Ok;
  std::uint64_t g_stream_id = 0;
  std::size_t n = 0;
};

// K = (1 -/+ eps1) sqrt(m1 + m2/2) -/+ eps5 sqrt(n), the finite-n threshold
// of the single random linear constraint.
double constraint_threshold(const AuxSpec& spec);

// max_{lambda >= 0} ( -||1 + lambda g'|| + lambda K ) with g' the
// side-adjusted g; solved by the stationarity quadratic. UnboundedAux when
// ||g||^2 <= K^2.
AuxEvaluation eval_aux_lp(std::span<const double> g, const AuxSpec& spec);

// sup_{theta > 0} theta^{-1} ( -sqrt( ||(theta 1_{n-k} - |g_head|)_-||^2 +
// ||theta 1_k + g_tail'||^2 ) + K ); coarse log-spaced scan plus
// golden-section refinement.
AuxEvaluation eval_aux_bp(std::span<const double> g, const AuxSpec& spec);

// Prox-route evaluation: min f(x) s.t. s_g g^T x + K <= 0, ||x|| <= 1 through
// the splitting solver. Works for every prox-capable objective and serves as
// the cross-check of the closed dual routes.
AuxEvaluation eval_aux_general(std::span<const double> g, const AuxSpec& spec,
                               const primal::SolverConfig& solver = {});

// Same program with an explicit threshold K replacing the spec-derived one
// (used by the Gordon check and the nonhomogeneous reduction tests).
AuxEvaluation eval_aux_general_with_threshold(
    std::span<const double> g, double threshold, theory::Side side,
    const problem::ObjectiveSpec& objective,
    const primal::SolverConfig& solver = {});

// Dual-route value of min f s.t. s_g g^T x + K <= 0 over the unit ball for
// linear f (c empty => all-ones) at an explicit threshold.
AuxEvaluation eval_aux_linear_with_threshold(std::span<const double> g,
                                             double threshold,
                                             theory::Side side,
                                             std::span<const double> c);
AuxEvaluation eval_aux_bp_with_threshold(std::span<const double> g,
                                         double threshold, theory::Side side,
                                         std::size_t k);

// Nonhomogeneous constraints: outer search over r = ||x||_2 of the inner
// closed-form minimum of a linear objective on the sphere of radius r under
// g^T x <= -K(r), K(r) = sqrt(||r h_A + a||^2 + ||(r h_B + b)_+||^2)
// -/+ r eps5 sqrt(n). With the ball bound the search stays on [0, 1];
// otherwise the radius cap starts at 10 (1 + max(||a||, ||b||)/sqrt(n)) and
// doubles on boundary hits.
AuxEvaluation eval_aux_nonhomogeneous(std::span<const double> g,
                                      std::span<const double> h_a,
                                      std::span<const double> h_b,
                                      const AuxSpec& spec);

// ---- Gordon comparison ------------------------------------------------

struct GordonCheckSpec {
  problem::ShapeConfig shape;
  problem::ObjectiveSpec objective;
  double offset_level = 0.0;  // threshold, absolute (not per sqrt(n))
  std::size_t trials = 500;
  std::uint64_t master_seed = 42;
  int threads = 0;
  primal::SolverConfig solver;
};

struct GordonReport {
  double p_left = 0.0;
  double p_right = 0.0;
  double left_ci_lo = 0.0, left_ci_hi = 0.0;
  double right_ci_lo = 0.0, right_ci_hi = 0.0;
  bool holds = false;  // p_left >= p_right - combined CI half-widths
  std::size_t left_failures = 0;
  std::size_t right_failures = 0;
  std::size_t trials = 0;
};

// Per-trial threshold-free values; event_{left,right}(xi) = value >= xi.
// Left values come from fresh (A, B, scalar) draws solved through the
// splitting solver on the comparison's min-max set; right values from fresh
// (g, h) draws through the dual route. NaN marks a solver failure.
struct GordonValues {
  std::vector<double> left;
  std::vector<double> right;
};

GordonValues gordon_trial_values(const GordonCheckSpec& spec);
GordonReport gordon_check(const GordonCheckSpec& spec);
GordonReport gordon_report_from_values(const GordonValues& values,
                                       double offset_level);

// Wilson 95% score interval.
std::pair<double, double> wilson_interval(std::size_t successes,
                                          std::size_t total);

}  // namespace rrd::auxiliary
