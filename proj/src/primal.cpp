#include "primal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "errors.hpp"

namespace rrd::primal {

namespace {

using Eigen::VectorXd;

ResidualReport residuals_of(const problem::ProblemInstance& instance,
                            const VectorXd& x, double ball_radius) {
  ResidualReport rep;
  const double sqrt_n = std::sqrt(static_cast<double>(instance.n));
  if (instance.m1() > 0) {
    const VectorXd r = numerics::as_eigen(instance.A) * x -
                       numerics::as_eigen(std::span<const double>(
                           instance.a_vec.data(), instance.a_vec.size()));
    rep.eq = r.norm() / sqrt_n;
  }
  if (instance.m2() > 0) {
    VectorXd r = numerics::as_eigen(instance.B) * x -
                 numerics::as_eigen(std::span<const double>(
                     instance.b_vec.data(), instance.b_vec.size()));
    r = r.cwiseMax(0.0);
    rep.ineq = r.norm() / sqrt_n;
  }
  if (instance.ball_bound)
    rep.ball = std::max(0.0, x.norm() - ball_radius);
  return rep;
}

}  // namespace

ResidualReport certify(const problem::ProblemInstance& instance,
                       std::span<const double> x, double tol,
                       double ball_radius) {
  if (x.size() != instance.n)
    throw ConfigError("certify: dimension mismatch");
  const VectorXd xe = numerics::as_eigen(x);
  ResidualReport rep = residuals_of(instance, xe, ball_radius);
  rep.pass = rep.eq <= tol && rep.ineq <= tol && rep.ball <= tol;
  return rep;
}

Solution solve_primal(const problem::ProblemInstance& instance,
                      const SolverConfig& cfg) {
  cfg.validate();
  const std::size_t n = instance.n;
  const std::size_t m1 = instance.m1();
  const std::size_t m2 = instance.m2();
  const std::size_t lifted = n + m2;  // slack s = b - B x rides along

  ProxObjectiveBlock prox_block(instance.objective, n);
  std::vector<const Block*> blocks{&prox_block};

  std::optional<AffineEqBlock> eq_block;
  if (m1 > 0) {
    eq_block.emplace(Eigen::MatrixXd(numerics::as_eigen(instance.A)),
                     Eigen::VectorXd(numerics::as_eigen(
                         std::span<const double>(instance.a_vec))));
    blocks.push_back(&*eq_block);
  }
  std::optional<IneqSlackBlock> ineq_block;
  if (m2 > 0) {
    ineq_block.emplace(Eigen::MatrixXd(numerics::as_eigen(instance.B)),
                       Eigen::VectorXd(numerics::as_eigen(
                           std::span<const double>(instance.b_vec))),
                       n);
    blocks.push_back(&*ineq_block);
  }
  std::optional<BallNonnegBlock> geom_block;
  if (instance.ball_bound || m2 > 0) {
    geom_block.emplace(instance.ball_bound
                           ? cfg.ball_radius
                           : std::numeric_limits<double>::infinity(),
                       n, m2);
    blocks.push_back(&*geom_block);
  }

  // Start at x = 0 with slack matching b.
  Eigen::VectorXd z0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(lifted));
  for (std::size_t i = 0; i < m2; ++i)
    z0[static_cast<Eigen::Index>(n + i)] = std::max(instance.b_vec[i], 0.0);

  auto feasible = [&](const Eigen::VectorXd& z) {
    const ResidualReport rep = residuals_of(
        instance, z.head(static_cast<Eigen::Index>(n)), cfg.ball_radius);
    return rep.eq <= cfg.tol_primal && rep.ineq <= cfg.tol_primal &&
           rep.ball <= cfg.tol_primal;
  };

  SplitResult split = run_consensus(blocks, lifted, cfg, feasible, &z0);

  Solution sol;
  const auto x = split.z.head(static_cast<Eigen::Index>(n));
  sol.x.assign(x.data(), x.data() + n);
  sol.objective = problem::evaluate_objective(
      instance.objective, std::span<const double>(sol.x));
  const ResidualReport rep = residuals_of(instance, x, cfg.ball_radius);
  sol.residual_eq = rep.eq;
  sol.residual_ineq = rep.ineq;
  sol.residual_ball = rep.ball;
  sol.iterations = split.iterations;
  sol.converged = split.converged;
  sol.history = std::move(split.history);
  return sol;
}

double brute_force_oracle(const problem::ProblemInstance& instance,
                          std::size_t budget, numerics::RngStream& stream) {
  const std::size_t n = instance.n;
  if (n > 8)
    throw ConfigError("brute_force_oracle: n must be <= 8");
  if (!instance.ball_bound)
    throw ConfigError("brute_force_oracle: needs the ball bound");
  const std::size_t m1 = instance.m1();
  const numerics::NullspaceProjector projector(instance.A);
  const Eigen::MatrixXd a_map = numerics::as_eigen(instance.A);
  const Eigen::MatrixXd b_map = numerics::as_eigen(instance.B);
  const VectorXd a_rhs =
      numerics::as_eigen(std::span<const double>(instance.a_vec));
  const VectorXd b_rhs =
      numerics::as_eigen(std::span<const double>(instance.b_vec));

  // Minimum-norm particular solution of A x = a (zero when homogeneous).
  VectorXd x_part = VectorXd::Zero(static_cast<Eigen::Index>(n));
  std::optional<Eigen::LLT<Eigen::MatrixXd>> gram;
  if (m1 > 0) {
    gram.emplace(Eigen::MatrixXd(a_map * a_map.transpose()));
    if (gram->info() != Eigen::Success)
      throw SingularMatrixError("brute_force_oracle: A A^T not factorizable");
    x_part = a_map.transpose() * gram->solve(a_rhs);
  }

  auto is_feasible = [&](const VectorXd& x, double tol) {
    if (x.norm() > 1.0 + tol) return false;
    if (m1 > 0 && (a_map * x - a_rhs).lpNorm<Eigen::Infinity>() > tol)
      return false;
    if (instance.m2() > 0 && b_map.rows() > 0 &&
        (b_map * x - b_rhs).maxCoeff() > tol)
      return false;
    return true;
  };
  auto value_at = [&](const VectorXd& x) {
    return problem::evaluate_objective(
        instance.objective, std::span<const double>(x.data(), n));
  };

  bool found = false;
  double best = 0.0;
  VectorXd best_x = VectorXd::Zero(static_cast<Eigen::Index>(n));
  if (is_feasible(best_x, 1e-12)) {
    found = true;
    best = value_at(best_x);
  }

  // Sampling pass: uniform ball draws through the nullspace projector,
  // shifted by the particular solution, B-infeasible draws rejected.
  std::vector<double> draw(n);
  VectorXd x(static_cast<Eigen::Index>(n));
  for (std::size_t it = 0; it < budget; ++it) {
    stream.fill_gaussian(draw.data(), n);
    x = numerics::as_eigen(std::span<const double>(draw));
    const double norm = x.norm();
    const double radius =
        std::pow(stream.uniform(), 1.0 / static_cast<double>(n));
    if (norm == 0.0) continue;
    x *= radius / norm;
    projector.apply_inplace(x);
    x += x_part;
    if (!is_feasible(x, 0.0)) continue;
    const double val = value_at(x);
    if (!found || val < best) {
      found = true;
      best = val;
      best_x = x;
    }
  }
  if (!found)
    throw NumericalError("brute_force_oracle: no feasible sample in budget");

  // Polish: projected subgradient from the best candidate, alternating
  // projections to stay feasible.
  auto reproject = [&](VectorXd& y) {
    for (int round = 0; round < 64; ++round) {
      if (m1 > 0) y.noalias() -= a_map.transpose() * gram->solve(a_map * y - a_rhs);
      bool clean = true;
      for (Eigen::Index i = 0; i < b_map.rows(); ++i) {
        const double viol = b_map.row(i).dot(y) - b_rhs[i];
        if (viol > 1e-14) {
          y.noalias() -=
              (viol / b_map.row(i).squaredNorm()) * b_map.row(i).transpose();
          clean = false;
        }
      }
      const double norm = y.norm();
      if (norm > 1.0) {
        y *= 1.0 / norm;
        clean = false;
      }
      if (clean) break;
    }
  };

  VectorXd cur = best_x;
  const int polish_steps = 4000;
  for (int t = 1; t <= polish_steps; ++t) {
    const auto grad = problem::subgradient(
        instance.objective, std::span<const double>(cur.data(), n));
    const double step = 0.5 / std::sqrt(static_cast<double>(t));
    for (std::size_t i = 0; i < n; ++i)
      cur[static_cast<Eigen::Index>(i)] -= step * grad[i];
    reproject(cur);
    if (is_feasible(cur, 1e-12)) {
      const double val = value_at(cur);
      if (val < best) {
        best = val;
        best_x = cur;
      }
    }
  }
  return best;
}

}  // namespace rrd::primal
