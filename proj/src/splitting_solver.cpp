#include "splitting_solver.hpp"

#include <cmath>

#include "errors.hpp"

namespace rrd::primal {

void SolverConfig::validate() const {
  if (!(rho > 0.0)) throw ConfigError("SolverConfig: rho must be positive");
  if (max_iter < 1) throw ConfigError("SolverConfig: max_iter must be >= 1");
  if (!(tol_primal > 0.0) || !(tol_dual > 0.0))
    throw ConfigError("SolverConfig: tolerances must be positive");
  if (over_relaxation < 1.0 || over_relaxation > 1.9)
    throw ConfigError("SolverConfig: over_relaxation must lie in [1, 1.9]");
  if (!(ball_radius > 0.0))
    throw ConfigError("SolverConfig: ball_radius must be positive");
}

void ProxObjectiveBlock::apply(Eigen::VectorXd& v, double rho) const {
  problem::prox_objective_inplace(objective_, v.data(), n_, 1.0 / rho);
}

AffineEqBlock::AffineEqBlock(Eigen::MatrixXd a_mat, Eigen::VectorXd a_rhs)
    : a_(std::move(a_mat)), rhs_(std::move(a_rhs)) {
  llt_.compute(a_ * a_.transpose());
  if (llt_.info() != Eigen::Success)
    throw SingularMatrixError("AffineEqBlock: A A^T factorization failed");
}

void AffineEqBlock::apply(Eigen::VectorXd& v, double /*rho*/) const {
  const auto n = a_.cols();
  auto x = v.head(n);
  x.noalias() -= a_.transpose() * llt_.solve(a_ * x - rhs_);
}

IneqSlackBlock::IneqSlackBlock(Eigen::MatrixXd b_mat, Eigen::VectorXd b_rhs,
                               std::size_t n)
    : b_(std::move(b_mat)), rhs_(std::move(b_rhs)), n_(n) {
  Eigen::MatrixXd gram = b_ * b_.transpose();
  gram.diagonal().array() += 1.0;
  llt_.compute(gram);
  if (llt_.info() != Eigen::Success)
    throw SingularMatrixError("IneqSlackBlock: I + B B^T factorization failed");
}

void IneqSlackBlock::apply(Eigen::VectorXd& v, double /*rho*/) const {
  const auto m2 = b_.rows();
  auto x = v.head(static_cast<Eigen::Index>(n_));
  auto s = v.segment(static_cast<Eigen::Index>(n_), m2);
  const Eigen::VectorXd mu = llt_.solve(b_ * x + s - rhs_);
  x.noalias() -= b_.transpose() * mu;
  s -= mu;
}

void BallNonnegBlock::apply(Eigen::VectorXd& v, double /*rho*/) const {
  auto x = v.head(static_cast<Eigen::Index>(n_));
  const double norm = x.norm();
  if (norm > radius_) x *= radius_ / norm;
  if (slack_dim_ > 0) {
    auto s = v.segment(static_cast<Eigen::Index>(n_),
                       static_cast<Eigen::Index>(slack_dim_));
    s = s.cwiseMax(0.0);
  }
}

HalfspaceBlock::HalfspaceBlock(Eigen::VectorXd d, double c)
    : d_(std::move(d)), c_(c), dnorm2_(d_.squaredNorm()) {
  if (!(dnorm2_ > 0.0)) throw ConfigError("HalfspaceBlock: zero normal");
}

void HalfspaceBlock::apply(Eigen::VectorXd& v, double /*rho*/) const {
  auto x = v.head(d_.size());
  const double viol = d_.dot(x) - c_;
  if (viol > 0.0) x.noalias() -= (viol / dnorm2_) * d_;
}

CouplingBlock::CouplingBlock(Eigen::MatrixXd m) : m_(std::move(m)) {
  Eigen::MatrixXd gram = m_.transpose() * m_;
  gram.diagonal().array() += 1.0;
  llt_.compute(gram);
  if (llt_.info() != Eigen::Success)
    throw SingularMatrixError("CouplingBlock: I + M^T M factorization failed");
}

void CouplingBlock::apply(Eigen::VectorXd& v, double /*rho*/) const {
  const auto n = m_.cols();
  const auto rows = m_.rows();
  auto x = v.head(n);
  auto w = v.segment(n, rows);
  const Eigen::VectorXd xhat = llt_.solve(x + m_.transpose() * w);
  x = xhat;
  w.noalias() = m_ * xhat;
}

void BallCapBlock::apply(Eigen::VectorXd& v, double /*rho*/) const {
  auto x = v.head(static_cast<Eigen::Index>(n_));
  const double norm = x.norm();
  if (norm > radius_) x *= radius_ / norm;

  auto y = v.segment(static_cast<Eigen::Index>(n_),
                     static_cast<Eigen::Index>(m1_));
  auto z = v.segment(static_cast<Eigen::Index>(n_ + m1_),
                     static_cast<Eigen::Index>(m2_));
  double active2 = y.squaredNorm();
  for (Eigen::Index i = 0; i < z.size(); ++i)
    if (z[i] > 0.0) active2 += z[i] * z[i];
  const double active = std::sqrt(active2);
  if (active > cap_) {
    const double t = cap_ / active;
    y *= t;
    for (Eigen::Index i = 0; i < z.size(); ++i)
      if (z[i] > 0.0) z[i] *= t;
  }
}

SplitResult run_consensus(const std::vector<const Block*>& blocks,
                          std::size_t lifted_dim, const SolverConfig& cfg,
                          const std::function<bool(const Eigen::VectorXd&)>&
                              feasible_at,
                          const Eigen::VectorXd* warm_start) {
  cfg.validate();
  const std::size_t num_blocks = blocks.size();
  if (num_blocks == 0) throw ConfigError("run_consensus: no blocks");
  const auto dim = static_cast<Eigen::Index>(lifted_dim);
  const double alpha = cfg.over_relaxation;
  const double inv_sqrt_dim = 1.0 / std::sqrt(static_cast<double>(lifted_dim));

  SplitResult out;
  out.z = warm_start ? *warm_start : Eigen::VectorXd::Zero(dim);
  std::vector<Eigen::VectorXd> local(num_blocks, out.z);
  std::vector<Eigen::VectorXd> dual(num_blocks,
                                    Eigen::VectorXd::Zero(dim));
  Eigen::VectorXd z_prev(dim), accum(dim);

  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    z_prev = out.z;
    accum.setZero();
    for (std::size_t i = 0; i < num_blocks; ++i) {
      local[i] = out.z - dual[i];
      blocks[i]->apply(local[i], cfg.rho);
      // over-relaxed block output
      local[i] = alpha * local[i] + (1.0 - alpha) * z_prev;
      accum += local[i] + dual[i];
    }
    out.z = accum / static_cast<double>(num_blocks);

    double consensus2 = 0.0;
    for (std::size_t i = 0; i < num_blocks; ++i) {
      dual[i] += local[i] - out.z;
      consensus2 += (local[i] - out.z).squaredNorm();
    }
    out.iterations = iter;

    const double primal_rms =
        std::sqrt(consensus2 / static_cast<double>(num_blocks)) * inv_sqrt_dim;
    const double dual_rms = cfg.rho * (out.z - z_prev).norm() * inv_sqrt_dim;
    if (cfg.record_history) out.history.push_back(primal_rms + dual_rms);

    if (iter % cfg.check_interval == 0 || iter == cfg.max_iter) {
      if (primal_rms <= cfg.tol_primal && dual_rms <= cfg.tol_dual &&
          feasible_at(out.z)) {
        out.converged = true;
        break;
      }
    }
  }
  return out;
}

}  // namespace rrd::primal
