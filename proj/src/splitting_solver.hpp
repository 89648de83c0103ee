#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "objective.hpp"

namespace rrd::primal {

struct SolverConfig {
  double rho = 1.0;
  int max_iter = 50000;
  double tol_primal = 1e-7;
  double tol_dual = 1e-7;
  double over_relaxation = 1.6;  // in [1, 1.9]
  double ball_radius = 1.0;
  bool record_history = false;
  int check_interval = 10;

  void validate() const;
};

// One piece of the consensus splitting. apply() realizes
// argmin_z f_i(z) + (rho/2) ||z - v||_2^2 in place on the lifted vector;
// coordinates a block does not own pass through untouched.
class Block {
 public:
  virtual ~Block() = default;
  virtual void apply(Eigen::VectorXd& v, double rho) const = 0;
};

// Prox of the objective on the leading n coordinates.
class ProxObjectiveBlock final : public Block {
 public:
  ProxObjectiveBlock(problem::ObjectiveSpec objective, std::size_t n)
      : objective_(std::move(objective)), n_(n) {}
  void apply(Eigen::VectorXd& v, double rho) const override;

 private:
  problem::ObjectiveSpec objective_;
  std::size_t n_;
};

// Projection of the leading n coordinates onto {x : A x = a}.
class AffineEqBlock final : public Block {
 public:
  AffineEqBlock(Eigen::MatrixXd a_mat, Eigen::VectorXd a_rhs);
  void apply(Eigen::VectorXd& v, double rho) const override;

 private:
  Eigen::MatrixXd a_;
  Eigen::VectorXd rhs_;
  Eigen::LLT<Eigen::MatrixXd> llt_;  // of A A^T
};

// Projection of (x, s) onto {B x + s = b}; s lives at [n, n + m2).
class IneqSlackBlock final : public Block {
 public:
  IneqSlackBlock(Eigen::MatrixXd b_mat, Eigen::VectorXd b_rhs, std::size_t n);
  void apply(Eigen::VectorXd& v, double rho) const override;

 private:
  Eigen::MatrixXd b_;
  Eigen::VectorXd rhs_;
  std::size_t n_;
  Eigen::LLT<Eigen::MatrixXd> llt_;  // of I + B B^T
};

// Euclidean ball of given radius on the leading n coordinates plus, when
// slack_dim > 0, the nonnegative orthant on [n, n + slack_dim).
class BallNonnegBlock final : public Block {
 public:
  BallNonnegBlock(double radius, std::size_t n, std::size_t slack_dim)
      : radius_(radius), n_(n), slack_dim_(slack_dim) {}
  void apply(Eigen::VectorXd& v, double rho) const override;

 private:
  double radius_;
  std::size_t n_;
  std::size_t slack_dim_;
};

// Halfspace {x : d^T x <= c} on the leading n coordinates.
class HalfspaceBlock final : public Block {
 public:
  HalfspaceBlock(Eigen::VectorXd d, double c);
  void apply(Eigen::VectorXd& v, double rho) const override;

 private:
  Eigen::VectorXd d_;
  double c_;
  double dnorm2_;
};

// Coupling {(x, w) : M x = w} with w at [n, n + rows); cached factor of
// I + M^T M.
class CouplingBlock final : public Block {
 public:
  explicit CouplingBlock(Eigen::MatrixXd m);
  void apply(Eigen::VectorXd& v, double rho) const override;

 private:
  Eigen::MatrixXd m_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

// Ball on x plus the cap set {(y, z) : ||y||^2 + ||z_+||^2 <= cap^2} on w,
// where y is the first m1 and z the last m2 coordinates of w.
class BallCapBlock final : public Block {
 public:
  BallCapBlock(double radius, std::size_t n, std::size_t m1, std::size_t m2,
               double cap)
      : radius_(radius), n_(n), m1_(m1), m2_(m2), cap_(cap) {}
  void apply(Eigen::VectorXd& v, double rho) const override;

 private:
  double radius_;
  std::size_t n_, m1_, m2_;
  double cap_;
};

struct SplitResult {
  Eigen::VectorXd z;  // lifted consensus point
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;  // combined residual per iteration
};

// Consensus ADMM over the given blocks. feasible_at is evaluated on the
// consensus point every check_interval iterations; convergence requires it
// plus small consensus and dual residuals.
SplitResult run_consensus(const std::vector<const Block*>& blocks,
                          std::size_t lifted_dim, const SolverConfig& cfg,
                          const std::function<bool(const Eigen::VectorXd&)>&
                              feasible_at,
                          const Eigen::VectorXd* warm_start = nullptr);

}  // namespace rrd::primal
