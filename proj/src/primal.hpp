#pragma once

#include <vector>

#include "instance.hpp"
#include "rng.hpp"
#include "splitting_solver.hpp"

namespace rrd::primal {

struct Solution {
  std::vector<double> x;
  double objective = 0.0;
  double residual_eq = 0.0;    // ||A x - a||_2 / sqrt(n)
  double residual_ineq = 0.0;  // ||(B x - b)_+||_2 / sqrt(n)
  double residual_ball = 0.0;  // max(0, ||x||_2 - radius)
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;  // per-iteration combined residual (optional)
};

struct ResidualReport {
  double eq = 0.0;
  double ineq = 0.0;
  double ball = 0.0;
  bool pass = false;
};

// Residuals of x against the instance constraints; pass = all <= tol.
ResidualReport certify(const problem::ProblemInstance& instance,
                       std::span<const double> x, double tol,
                       double ball_radius = 1.0);

// Operator-splitting solve of the sampled program
//   min f(x)  s.t.  A x = a, B x <= b, ||x||_2 <= radius.
// The homogeneous problem is always feasible at x = 0, so converged = false
// only signals iteration exhaustion.
Solution solve_primal(const problem::ProblemInstance& instance,
                      const SolverConfig& cfg = {});

// Upper bound on the optimum from `budget` feasible candidates: uniform ball
// samples pushed through the nullspace projector of A with B-infeasible draws
// rejected, then projected-subgradient polish of the best candidates.
// Requires n <= 8.
double brute_force_oracle(const problem::ProblemInstance& instance,
                          std::size_t budget, numerics::RngStream& stream);

}  // namespace rrd::primal
