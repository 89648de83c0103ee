#pragma once

#include <span>

namespace rrd::theory {

enum class Side { Lower, Upper };
enum class Branch { Interior, ClampedZero };

// Slack constants of the bound derivation. Zero (the default) gives the
// asymptotic matching bounds; nonzero values widen the lower/upper gap.
struct EpsilonConfig {
  double eps1_m = 0.0;
  double eps5_g = 0.0;
};

struct TheoryResult {
  double xi_over_sqrt_n = 0.0;  // <= 0
  double optimizer = 0.0;       // lambda-hat or theta-hat; 0 when clamped
  Branch branch = Branch::Interior;
  Side side = Side::Lower;
};

// Signed constraint coefficient: (1 -/+ eps1) sqrt(alpha1 + alpha2/2) -/+ eps5
// (minus signs for the lower side, plus for the upper).
double sqrt_d_coefficient(double alpha1, double alpha2,
                          const EpsilonConfig& eps, Side side);

// D, the squared coefficient (clamped at zero before squaring).
double d_factor(double alpha1, double alpha2, const EpsilonConfig& eps,
                Side side);

// Purely linear objective: xi/sqrt(n) = -sqrt(1 - D) for D <= 1, else 0.
TheoryResult xi_lp(double alpha1, double alpha2, const EpsilonConfig& eps,
                   Side side);

// General linear c^T x: xi_lp scaled by C_gl = ||c||_2 / sqrt(n).
TheoryResult xi_gl(std::span<const double> c, double alpha1, double alpha2,
                   const EpsilonConfig& eps, Side side);

// 2 * integral_theta^inf (t - theta)^2 phi(t) dt for the standard normal
// density phi; equals 1 at theta = 0.
double truncated_second_moment(double theta);

// theta^{-1} (-sqrt((1-beta) * tsm(theta) + beta (1 + theta^2)) + sqrt(D)).
double phi_bp(double theta, double beta, double d);

// BpSplit objective: maximize phi_bp over theta > 0; the maximum is the
// prediction when negative, otherwise the branch clamps to zero. Emits a
// warning flag through the return when beta > alpha1 (outside the standing
// assumption) but still evaluates.
TheoryResult xi_bp(double beta, double alpha1, double alpha2,
                   const EpsilonConfig& eps, Side side);

// Dispatcher used by the harness/CLI: beta is consumed for BpSplit only,
// c for GeneralLinear only.
TheoryResult xi_for(int objective_kind, std::span<const double> c, double beta,
                    double alpha1, double alpha2, const EpsilonConfig& eps,
                    Side side);

}  // namespace rrd::theory
