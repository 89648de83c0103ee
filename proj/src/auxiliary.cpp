#include "auxiliary.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "errors.hpp"
#include "rng.hpp"
#include "scalar_opt.hpp"
#include "thread_pool.hpp"

namespace rrd::auxiliary {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double side_sign(theory::Side side) {
  return side == theory::Side::Lower ? 1.0 : -1.0;
}

}  // namespace

double constraint_threshold(const AuxSpec& spec) {
  const double m1 = static_cast<double>(spec.shape.m1());
  const double m2 = static_cast<double>(spec.shape.m2());
  const double root = std::sqrt(m1 + m2 / 2.0);
  const double sqrt_n = std::sqrt(static_cast<double>(spec.shape.n));
  return spec.side == theory::Side::Lower
             ? (1.0 - spec.eps.eps1_m) * root - spec.eps.eps5_g * sqrt_n
             : (1.0 + spec.eps.eps1_m) * root + spec.eps.eps5_g * sqrt_n;
}

AuxEvaluation eval_aux_linear_with_threshold(std::span<const double> g,
                                             double threshold,
                                             theory::Side side,
                                             std::span<const double> c) {
  const std::size_t n = g.size();
  if (n == 0) throw ConfigError("eval_aux: empty g");
  if (!c.empty() && c.size() != n)
    throw ConfigError("eval_aux: c dimension mismatch");
  const double sg = side_sign(side);
  const double k_thr = threshold;

  double big_g = 0.0, s = 0.0, c2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ge = sg * g[i];
    const double ci = c.empty() ? 1.0 : c[i];
    big_g += ge * ge;
    s += ci * ge;
    c2 += ci * ci;
  }

  AuxEvaluation out;
  out.n = n;
  if (big_g <= k_thr * k_thr) {
    out.status = AuxStatus::UnboundedAux;
    out.value = kInf;
    return out;
  }

  auto value_at = [&](double lam) {
    return -std::sqrt(c2 + 2.0 * lam * s + lam * lam * big_g) + lam * k_thr;
  };

  double best_lam = 0.0;
  double best_val = value_at(0.0);
  const double c0 = (s * s - k_thr * k_thr * c2) / (big_g - k_thr * k_thr);
  const double disc = s * s - big_g * c0;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    for (const double lam : {(-s + root) / big_g, (-s - root) / big_g}) {
      if (lam > 0.0 && std::isfinite(lam)) {
        const double val = value_at(lam);
        if (val > best_val) {
          best_val = val;
          best_lam = lam;
        }
      }
    }
  } else if (k_thr - s / std::sqrt(c2) > 0.0) {
    // No real stationary point should exist in the bounded case; fall back
    // to the bracketing maximizer.
    const auto opt = numerics::maximize_scalar(value_at, 0.0, 1.0, 1e-11);
    best_val = opt.value;
    best_lam = opt.argopt;
  }
  out.value = best_val;
  out.dual_scalar = best_lam;
  out.status = AuxStatus::Ok;
  return out;
}

AuxEvaluation eval_aux_lp(std::span<const double> g, const AuxSpec& spec) {
  if (spec.objective.kind != problem::ObjectiveKind::PurelyLinear)
    throw ConfigError("eval_aux_lp: objective is not PurelyLinear");
  if (g.size() != spec.shape.n)
    throw ConfigError("eval_aux_lp: g dimension mismatch");
  return eval_aux_linear_with_threshold(g, constraint_threshold(spec),
                                        spec.side, {});
}

AuxEvaluation eval_aux_bp_with_threshold(std::span<const double> g,
                                         double threshold, theory::Side side,
                                         std::size_t k) {
  const std::size_t n = g.size();
  if (n == 0) throw ConfigError("eval_aux_bp: empty g");
  if (k > n) throw ConfigError("eval_aux_bp: k exceeds dimension");
  const double sg = side_sign(side);
  const std::size_t split = n - k;

  double big_g = 0.0;
  for (double v : g) big_g += v * v;

  AuxEvaluation out;
  out.n = n;
  if (big_g <= threshold * threshold) {
    out.status = AuxStatus::UnboundedAux;
    out.value = kInf;
    return out;
  }

  auto value_at = [&](double theta) {
    double norm2 = 0.0;
    for (std::size_t i = 0; i < split; ++i) {
      const double d = theta - std::abs(g[i]);
      if (d < 0.0) norm2 += d * d;
    }
    for (std::size_t i = split; i < n; ++i) {
      const double d = theta + sg * g[i];
      norm2 += d * d;
    }
    return (-std::sqrt(norm2) + threshold) / theta;
  };

  // Coarse log-spaced scan, then golden-section refinement in the best cell.
  constexpr int kScan = 64;
  constexpr double kLogLo = -13.8155105579643;  // ln 1e-6
  constexpr double kLogHi = 13.8155105579643;   // ln 1e+6
  double best_scan = -kInf;
  int best_i = 0;
  double scan_vals[kScan];
  for (int i = 0; i < kScan; ++i) {
    const double theta =
        std::exp(kLogLo + (kLogHi - kLogLo) * i / (kScan - 1));
    scan_vals[i] = value_at(theta);
    if (scan_vals[i] > best_scan) {
      best_scan = scan_vals[i];
      best_i = i;
    }
  }
#ifndef NDEBUG
  {
    bool falling = false;
    for (int i = 1; i < kScan; ++i) {
      if (scan_vals[i] < scan_vals[i - 1] - 1e-12) falling = true;
      assert(!(falling && scan_vals[i] > scan_vals[i - 1] + 1e-9) &&
             "eval_aux_bp: scan not unimodal");
    }
  }
#endif
  auto theta_of = [&](int i) {
    return std::exp(kLogLo + (kLogHi - kLogLo) *
                                 std::clamp(i, 0, kScan - 1) / (kScan - 1));
  };
  double a = theta_of(best_i - 1);
  double b = theta_of(best_i + 1);
  constexpr double kGolden = 0.6180339887498949;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = value_at(x1);
  double f2 = value_at(x2);
  while (b - a > 1e-12 * std::max(1.0, b)) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = value_at(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = value_at(x2);
    }
  }
  out.dual_scalar = 0.5 * (a + b);
  out.value = value_at(out.dual_scalar);
  out.status = AuxStatus::Ok;
  return out;
}

AuxEvaluation eval_aux_bp(std::span<const double> g, const AuxSpec& spec) {
  if (spec.objective.kind != problem::ObjectiveKind::BpSplit)
    throw ConfigError("eval_aux_bp: objective is not BpSplit");
  if (g.size() != spec.shape.n)
    throw ConfigError("eval_aux_bp: g dimension mismatch");
  return eval_aux_bp_with_threshold(g, constraint_threshold(spec), spec.side,
                                    spec.objective.k);
}

AuxEvaluation eval_aux_general_with_threshold(
    std::span<const double> g, double threshold, theory::Side side,
    const problem::ObjectiveSpec& objective,
    const primal::SolverConfig& solver) {
  const std::size_t n = g.size();
  if (n == 0) throw ConfigError("eval_aux_general: empty g");
  const double sg = side_sign(side);

  Eigen::VectorXd d(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    d[static_cast<Eigen::Index>(i)] = sg * g[i];
  const double gnorm = d.norm();

  AuxEvaluation out;
  out.n = n;
  if (gnorm < threshold) {
    // No point of the unit ball satisfies the constraint: the dual view of
    // the same event is an unbounded maximization.
    out.status = AuxStatus::UnboundedAux;
    out.value = kInf;
    return out;
  }

  primal::ProxObjectiveBlock prox(objective, n);
  primal::HalfspaceBlock halfspace(d, -threshold);
  primal::BallNonnegBlock ball(1.0, n, 0);
  const std::vector<const primal::Block*> blocks{&prox, &halfspace, &ball};

  // Feasible warm start on the constraint boundary.
  Eigen::VectorXd z0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  if (threshold > 0.0 && gnorm > 0.0)
    z0 = -(threshold / (gnorm * gnorm)) * d;

  auto feasible = [&](const Eigen::VectorXd& z) {
    const double viol = std::max(0.0, d.dot(z) + threshold);
    const double ball_viol = std::max(0.0, z.norm() - 1.0);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    return viol * scale <= solver.tol_primal &&
           ball_viol <= solver.tol_primal;
  };

  const primal::SplitResult split =
      primal::run_consensus(blocks, n, solver, feasible, &z0);
  out.value = problem::evaluate_objective(
      objective, std::span<const double>(split.z.data(), n));
  out.status = split.converged ? AuxStatus::Ok : AuxStatus::NonConverged;
  return out;
}

AuxEvaluation eval_aux_general(std::span<const double> g, const AuxSpec& spec,
                               const primal::SolverConfig& solver) {
  if (g.size() != spec.shape.n)
    throw ConfigError("eval_aux_general: g dimension mismatch");
  problem::ObjectiveSpec obj = spec.objective;
  if (obj.kind == problem::ObjectiveKind::BpSplit && obj.k == 0)
    obj.k = spec.shape.k();
  return eval_aux_general_with_threshold(g, constraint_threshold(spec),
                                         spec.side, obj, solver);
}

namespace {

// min c^T x over { ||x||_2 = r, geff^T x <= -k_eff }, by the two-vector
// reduction in span{c, geff}. Returns +inf when infeasible.
double nonhom_inner(double r, double k_eff, double gnorm, double c_norm,
                    double c_par) {
  if (r == 0.0) return k_eff <= 0.0 ? 0.0 : kInf;
  if (gnorm * r < k_eff) return kInf;
  // Unconstrained sphere minimizer -r c / ||c|| feasible?
  if (-r * c_par >= k_eff || gnorm == 0.0) return -r * c_norm;
  const double alpha = -k_eff / gnorm;  // coordinate along geff / ||geff||
  const double rem2 = std::max(0.0, r * r - alpha * alpha);
  const double c_perp = std::sqrt(std::max(0.0, c_norm * c_norm - c_par * c_par));
  return alpha * c_par - std::sqrt(rem2) * c_perp;
}

}  // namespace

AuxEvaluation eval_aux_nonhomogeneous(std::span<const double> g,
                                      std::span<const double> h_a,
                                      std::span<const double> h_b,
                                      const AuxSpec& spec) {
  const std::size_t n = spec.shape.n;
  if (g.size() != n) throw ConfigError("eval_aux_nonhomogeneous: bad g size");
  if (!spec.offsets)
    throw ConfigError("eval_aux_nonhomogeneous: offsets missing");
  if (spec.objective.kind == problem::ObjectiveKind::BpSplit)
    throw ConfigError(
        "eval_aux_nonhomogeneous: only linear objectives are supported");
  const auto& a = spec.offsets->a_vec;
  const auto& b = spec.offsets->b_vec;
  if (h_a.size() != a.size() || h_b.size() != b.size())
    throw ConfigError("eval_aux_nonhomogeneous: offset/h dimension mismatch");

  const double sg = side_sign(spec.side);
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double eps5 = spec.eps.eps5_g;

  // Projections of the objective onto the g direction.
  double gnorm2 = 0.0, cg = 0.0, c2 = 0.0;
  const bool ones = spec.objective.kind == problem::ObjectiveKind::PurelyLinear;
  for (std::size_t i = 0; i < n; ++i) {
    const double ge = sg * g[i];
    const double ci = ones ? 1.0 : spec.objective.c[i];
    gnorm2 += ge * ge;
    cg += ci * ge;
    c2 += ci * ci;
  }
  const double gnorm = std::sqrt(gnorm2);
  const double c_norm = std::sqrt(c2);
  const double c_par = gnorm > 0.0 ? cg / gnorm : 0.0;

  auto k_eff = [&](double r) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double v = r * h_a[i] + a[i];
      acc += v * v;
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
      const double v = r * h_b[i] + b[i];
      if (v > 0.0) acc += v * v;
    }
    const double eps_term = r * eps5 * sqrt_n;
    return spec.side == theory::Side::Lower ? std::sqrt(acc) - eps_term
                                            : std::sqrt(acc) + eps_term;
  };
  auto value_at = [&](double r) {
    return nonhom_inner(r, k_eff(r), gnorm, c_norm, c_par);
  };

  double norm_a = 0.0, norm_b = 0.0;
  for (double v : a) norm_a += v * v;
  for (double v : b) norm_b += v * v;
  double cap = spec.ball_bound
                   ? 1.0
                   : 10.0 * (1.0 + std::sqrt(std::max(norm_a, norm_b)) / sqrt_n);

  AuxEvaluation out;
  out.n = n;
  constexpr int kGridIntervals = 512;
  for (int expansion = 0;; ++expansion) {
    double best_val = kInf;
    int best_i = 0;
    for (int i = 0; i <= kGridIntervals; ++i) {
      const double r = cap * i / kGridIntervals;
      const double v = value_at(r);
      if (v < best_val) {
        best_val = v;
        best_i = i;
      }
    }
    if (!std::isfinite(best_val)) {
      out.status = AuxStatus::Infeasible;
      out.value = kInf;
      return out;
    }
    const bool boundary = best_i >= kGridIntervals - kGridIntervals / 50;
    if (!spec.ball_bound && boundary && expansion < 40) {
      cap *= 2.0;
      continue;
    }
    // Golden refinement around the best cell (minimization).
    double a_r = cap * std::max(0, best_i - 1) / kGridIntervals;
    double b_r = cap * std::min(kGridIntervals, best_i + 1) / kGridIntervals;
    constexpr double kGolden = 0.6180339887498949;
    double x1 = b_r - kGolden * (b_r - a_r);
    double x2 = a_r + kGolden * (b_r - a_r);
    double f1 = value_at(x1);
    double f2 = value_at(x2);
    for (int it = 0; it < 120 && b_r - a_r > 1e-13 * cap; ++it) {
      if (f1 <= f2) {
        b_r = x2;
        x2 = x1;
        f2 = f1;
        x1 = b_r - kGolden * (b_r - a_r);
        f1 = value_at(x1);
      } else {
        a_r = x1;
        x1 = x2;
        f1 = f2;
        x2 = a_r + kGolden * (b_r - a_r);
        f2 = value_at(x2);
      }
    }
    const double r_hat = 0.5 * (a_r + b_r);
    const double refined = value_at(r_hat);
    if (refined <= best_val) {
      out.value = refined;
      out.dual_scalar = r_hat;
    } else {
      out.value = best_val;
      out.dual_scalar = cap * best_i / kGridIntervals;
    }
    out.status = (!spec.ball_bound && boundary) ? AuxStatus::UnboundedAux
                                                : AuxStatus::Ok;
    return out;
  }
}

// ---- Gordon comparison -------------------------------------------------

std::pair<double, double> wilson_interval(std::size_t successes,
                                          std::size_t total) {
  if (total == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  const double nn = static_cast<double>(total);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

GordonValues gordon_trial_values(const GordonCheckSpec& spec) {
  if (spec.trials < 100)
    throw ConfigError("gordon_check: needs at least 100 trials");
  const std::size_t n = spec.shape.n;
  const std::size_t m1 = spec.shape.m1();
  const std::size_t m2 = spec.shape.m2();

  problem::ObjectiveSpec obj = spec.objective;
  if (obj.kind == problem::ObjectiveKind::BpSplit) obj.k = spec.shape.k();

  GordonValues values;
  values.left.assign(spec.trials, kNan);
  values.right.assign(spec.trials, kNan);

  numerics::parallel_trials(spec.trials, spec.threads, [&](std::size_t t) {
    // Left: fresh (A, B, scalar g); the comparison's min-max collapses to a
    // norm-capped primal solve when the scalar lands negative.
    numerics::RngStream stream(spec.master_seed, t);
    const problem::ProblemInstance ins =
        sample_instance(spec.shape, obj, stream);
    const double scalar = stream.gaussian();
    if (scalar > 0.0) {
      values.left[t] = 0.0;
    } else {
      const double cap_level = -scalar;
      Eigen::MatrixXd coupled(m1 + m2, n);
      if (m1 > 0) coupled.topRows(m1) = numerics::as_eigen(ins.A);
      if (m2 > 0) coupled.bottomRows(m2) = numerics::as_eigen(ins.B);
      primal::ProxObjectiveBlock prox(obj, n);
      primal::CouplingBlock coupling(coupled);
      primal::BallCapBlock cap(1.0, n, m1, m2, cap_level);
      const std::vector<const primal::Block*> blocks{&prox, &coupling, &cap};
      const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
      auto feasible = [&](const Eigen::VectorXd& z) {
        const auto x = z.head(static_cast<Eigen::Index>(n));
        double active2 = 0.0;
        if (m1 > 0) active2 += (coupled.topRows(m1) * x).squaredNorm();
        for (std::size_t i = 0; i < m2; ++i) {
          const double v = coupled.row(m1 + i).dot(x);
          if (v > 0.0) active2 += v * v;
        }
        const double cap_viol =
            std::max(0.0, std::sqrt(active2) - cap_level) * inv_sqrt_n;
        const double ball_viol = std::max(0.0, x.norm() - 1.0);
        return cap_viol <= spec.solver.tol_primal &&
               ball_viol <= spec.solver.tol_primal;
      };
      const primal::SplitResult split = primal::run_consensus(
          blocks, n + m1 + m2, spec.solver, feasible, nullptr);
      if (split.converged) {
        const double val = problem::evaluate_objective(
            obj, std::span<const double>(split.z.data(), n));
        values.left[t] = std::min(0.0, val);
      }
    }

    // Right: fresh (g, h) through the dual route at the h-based threshold.
    numerics::RngStream stream_r(spec.master_seed, spec.trials + t);
    const std::vector<double> g = numerics::gaussian_vector(stream_r, n);
    std::vector<double> h(m1 + m2);
    if (!h.empty()) stream_r.fill_gaussian(h.data(), h.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < m1; ++i) acc += h[i] * h[i];
    for (std::size_t i = m1; i < m1 + m2; ++i)
      if (h[i] > 0.0) acc += h[i] * h[i];
    const double threshold = std::sqrt(acc);

    AuxEvaluation eval;
    switch (obj.kind) {
      case problem::ObjectiveKind::PurelyLinear:
        eval = eval_aux_linear_with_threshold(g, threshold,
                                              theory::Side::Lower, {});
        break;
      case problem::ObjectiveKind::GeneralLinear:
        eval = eval_aux_linear_with_threshold(g, threshold,
                                              theory::Side::Lower, obj.c);
        break;
      case problem::ObjectiveKind::BpSplit:
        eval = eval_aux_bp_with_threshold(g, threshold, theory::Side::Lower,
                                          obj.k);
        break;
    }
    values.right[t] = eval.status == AuxStatus::UnboundedAux
                          ? 0.0
                          : std::min(0.0, eval.value);
  });
  return values;
}

GordonReport gordon_report_from_values(const GordonValues& values,
                                       double offset_level) {
  GordonReport rep;
  rep.trials = values.left.size();
  std::size_t left_hits = 0, left_valid = 0;
  for (double v : values.left) {
    if (std::isnan(v)) {
      ++rep.left_failures;
      continue;
    }
    ++left_valid;
    if (v >= offset_level) ++left_hits;
  }
  std::size_t right_hits = 0, right_valid = 0;
  for (double v : values.right) {
    if (std::isnan(v)) {
      ++rep.right_failures;
      continue;
    }
    ++right_valid;
    if (v >= offset_level) ++right_hits;
  }
  rep.p_left = left_valid ? static_cast<double>(left_hits) / left_valid : 0.0;
  rep.p_right =
      right_valid ? static_cast<double>(right_hits) / right_valid : 0.0;
  std::tie(rep.left_ci_lo, rep.left_ci_hi) =
      wilson_interval(left_hits, left_valid);
  std::tie(rep.right_ci_lo, rep.right_ci_hi) =
      wilson_interval(right_hits, right_valid);
  const double slack = 0.5 * (rep.left_ci_hi - rep.left_ci_lo) +
                       0.5 * (rep.right_ci_hi - rep.right_ci_lo);
  rep.holds = rep.p_left >= rep.p_right - slack;
  return rep;
}

GordonReport gordon_check(const GordonCheckSpec& spec) {
  return gordon_report_from_values(gordon_trial_values(spec),
                                   spec.offset_level);
}

}  // namespace rrd::auxiliary
