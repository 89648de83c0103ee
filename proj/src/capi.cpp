#include "rrd/rrd.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "auxiliary.hpp"
#include "errors.hpp"
#include "harness.hpp"
#include "instance.hpp"
#include "primal.hpp"
#include "special_functions.hpp"
#include "theory.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

int code_of(const std::exception& e) {
  if (dynamic_cast<const rrd::ConfigError*>(&e)) return RRD_ERROR_CONFIG;
  if (dynamic_cast<const rrd::IoError*>(&e)) return RRD_ERROR_IO;
  return RRD_ERROR_NUMERIC;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return RRD_OK;
  } catch (const std::exception& e) {
    set_error(e.what());
    return code_of(e);
  } catch (...) {
    set_error("unknown error");
    return RRD_ERROR_NUMERIC;
  }
}

template <typename T, typename Fn>
T* guarded_new(Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  } catch (...) {
    set_error("unknown error");
    return nullptr;
  }
}

rrd::theory::Side side_of(int side) {
  return side == RRD_SIDE_UPPER ? rrd::theory::Side::Upper
                                : rrd::theory::Side::Lower;
}

rrd::harness::Format format_of(int format) {
  return format == RRD_FORMAT_JSON ? rrd::harness::Format::Json
                                   : rrd::harness::Format::Csv;
}

}  // namespace

struct rrd_objective {
  rrd::problem::ObjectiveSpec spec;
};

struct rrd_experiment {
  rrd::harness::ExperimentSpec spec;
};

struct rrd_report {
  rrd::harness::ExperimentReport report;
};

struct rrd_table {
  std::vector<rrd::harness::TableRow> rows;
};

struct rrd_instance {
  rrd::problem::ProblemInstance instance;
};

extern "C" {

const char* rrd_version(void) { return "1.0.0"; }

const char* rrd_last_error(void) { return g_last_error.c_str(); }

rrd_objective* rrd_objective_lp(void) {
  return guarded_new<rrd_objective>([] {
    return new rrd_objective{rrd::problem::ObjectiveSpec::purely_linear()};
  });
}

rrd_objective* rrd_objective_gl(const double* c, size_t len) {
  return guarded_new<rrd_objective>([&]() -> rrd_objective* {
    if (c == nullptr || len == 0)
      throw rrd::ConfigError("rrd_objective_gl: empty c");
    return new rrd_objective{rrd::problem::ObjectiveSpec::general_linear(
        std::vector<double>(c, c + len))};
  });
}

rrd_objective* rrd_objective_bp(size_t k) {
  return guarded_new<rrd_objective>(
      [&] { return new rrd_objective{rrd::problem::ObjectiveSpec::bp_split(k)}; });
}

void rrd_objective_free(rrd_objective* obj) { delete obj; }

int rrd_theory_eval(const rrd_objective* obj, double alpha1, double alpha2,
                    double beta, double eps1, double eps5, int side,
                    rrd_theory_result* out) {
  return guarded([&] {
    if (obj == nullptr || out == nullptr)
      throw rrd::ConfigError("rrd_theory_eval: null argument");
    rrd::theory::EpsilonConfig eps{eps1, eps5};
    const auto res = rrd::theory::xi_for(static_cast<int>(obj->spec.kind),
                                         obj->spec.c, beta, alpha1, alpha2,
                                         eps, side_of(side));
    out->xi_over_sqrt_n = res.xi_over_sqrt_n;
    out->optimizer = res.optimizer;
    out->branch = res.branch == rrd::theory::Branch::ClampedZero
                      ? RRD_BRANCH_CLAMPED_ZERO
                      : RRD_BRANCH_INTERIOR;
    out->side = side;
  });
}

double rrd_erfc(double x) { return rrd::numerics::erfc(x); }

double rrd_truncated_second_moment(double theta) {
  try {
    return rrd::theory::truncated_second_moment(theta);
  } catch (const std::exception& e) {
    set_error(e.what());
    return -1.0;
  }
}

rrd_experiment* rrd_experiment_new(void) {
  return guarded_new<rrd_experiment>([] { return new rrd_experiment{}; });
}

void rrd_experiment_free(rrd_experiment* exp) { delete exp; }

int rrd_experiment_set_mode(rrd_experiment* exp, int mode) {
  return guarded([&] {
    if (exp == nullptr) throw rrd::ConfigError("null experiment");
    switch (mode) {
      case RRD_MODE_PRIMAL:
        exp->spec.mode = rrd::harness::Mode::PrimalSim;
        break;
      case RRD_MODE_AUX:
        exp->spec.mode = rrd::harness::Mode::AuxSim;
        break;
      case RRD_MODE_THEORY:
        exp->spec.mode = rrd::harness::Mode::TheoryOnly;
        break;
      default:
        throw rrd::ConfigError("rrd_experiment_set_mode: unknown mode");
    }
  });
}

int rrd_experiment_set_shape(rrd_experiment* exp, size_t n, double alpha1,
                             double alpha2, double beta) {
  return guarded([&] {
    if (exp == nullptr) throw rrd::ConfigError("null experiment");
    exp->spec.shape.n = n;
    exp->spec.shape.alpha1 = alpha1;
    exp->spec.shape.alpha2 = alpha2;
    exp->spec.shape.beta = beta;
  });
}

int rrd_experiment_set_objective(rrd_experiment* exp,
                                 const rrd_objective* obj) {
  return guarded([&] {
    if (exp == nullptr || obj == nullptr)
      throw rrd::ConfigError("null argument");
    exp->spec.objective = obj->spec;
  });
}

int rrd_experiment_set_trials(rrd_experiment* exp, uint64_t trials) {
  return guarded([&] {
    if (exp == nullptr) throw rrd::ConfigError("null experiment");
    exp->spec.trials = trials;
  });
}

int rrd_experiment_set_seed(rrd_experiment* exp, uint64_t seed) {
  return guarded([&] {
    if (exp == nullptr) throw rrd::ConfigError("null experiment");
    exp->spec.master_seed = seed;
  });
}

int rrd_experiment_set_epsilon(rrd_experiment* exp, double eps1, double eps5) {
  return guarded([&] {
    if (exp == nullptr) throw rrd::ConfigError("null experiment");
    exp->spec.eps.eps1_m = eps1;
    exp->spec.eps.eps5_g = eps5;
  });
}

int rrd_experiment_set_solver(rrd_experiment* exp, double rho, int max_iter,
                              double tol_primal, double tol_dual,
                              double over_relaxation) {
  return guarded([&] {
    if (exp == nullptr) throw rrd::ConfigError("null experiment");
    exp->spec.solver.rho = rho;
    exp->spec.solver.max_iter = max_iter;
    exp->spec.solver.tol_primal = tol_primal;
    exp->spec.solver.tol_dual = tol_dual;
    exp->spec.solver.over_relaxation = over_relaxation;
    exp->spec.solver.validate();
  });
}

int rrd_experiment_set_threads(rrd_experiment* exp, int threads) {
  return guarded([&] {
    if (exp == nullptr) throw rrd::ConfigError("null experiment");
    exp->spec.threads = threads;
  });
}

int rrd_experiment_run(const rrd_experiment* exp, rrd_report** out) {
  return guarded([&] {
    if (exp == nullptr || out == nullptr)
      throw rrd::ConfigError("null argument");
    auto report = rrd::harness::run_experiment(exp->spec);
    *out = new rrd_report{std::move(report)};
  });
}

void rrd_report_free(rrd_report* rep) { delete rep; }

double rrd_report_mean(const rrd_report* rep) {
  return rep ? rep->report.sim_mean : 0.0;
}
double rrd_report_std(const rrd_report* rep) {
  return rep ? rep->report.sim_std : 0.0;
}
double rrd_report_ci95(const rrd_report* rep) {
  return rep ? rep->report.ci95 : 0.0;
}
double rrd_report_theory(const rrd_report* rep, int side) {
  if (rep == nullptr) return 0.0;
  return side == RRD_SIDE_UPPER ? rep->report.theory_upper
                                : rep->report.theory_lower;
}
uint64_t rrd_report_trials_used(const rrd_report* rep) {
  return rep ? rep->report.trials_used : 0;
}
uint64_t rrd_report_trials_excluded(const rrd_report* rep) {
  return rep ? rep->report.trials_excluded : 0;
}
int rrd_report_unreliable(const rrd_report* rep) {
  return rep && rep->report.unreliable ? 1 : 0;
}

int rrd_report_write(const rrd_report* rep, int format, const char* path) {
  return guarded([&] {
    if (rep == nullptr || path == nullptr)
      throw rrd::ConfigError("rrd_report_write: null argument");
    rrd::harness::emit_report(rep->report, format_of(format), path);
  });
}

int rrd_table_run(int which, size_t n, uint64_t trials, uint64_t seed,
                  int aux_mode, int threads, rrd_table** out) {
  return guarded([&] {
    if (out == nullptr) throw rrd::ConfigError("rrd_table_run: null out");
    rrd::harness::TableOverrides ov;
    ov.n = n;
    ov.trials = trials;
    ov.seed = seed;
    ov.aux = aux_mode != 0;
    ov.threads = threads;
    auto rows = rrd::harness::reproduce_table(which, ov);
    *out = new rrd_table{std::move(rows)};
  });
}

void rrd_table_free(rrd_table* tab) { delete tab; }

size_t rrd_table_rows(const rrd_table* tab) {
  return tab ? tab->rows.size() : 0;
}

int rrd_table_row(const rrd_table* tab, size_t i, double* param,
                  double* sim_mean, double* sim_std, double* ci95,
                  double* theory_lower, double* theory_upper,
                  uint64_t* excluded) {
  return guarded([&] {
    if (tab == nullptr || i >= tab->rows.size())
      throw rrd::ConfigError("rrd_table_row: bad index");
    const auto& r = tab->rows[i];
    if (param) *param = r.param;
    if (sim_mean) *sim_mean = r.sim_mean;
    if (sim_std) *sim_std = r.sim_std;
    if (ci95) *ci95 = r.ci95;
    if (theory_lower) *theory_lower = r.theory_lower;
    if (theory_upper) *theory_upper = r.theory_upper;
    if (excluded) *excluded = r.trials_excluded;
  });
}

int rrd_table_write(const rrd_table* tab, int format, const char* path) {
  return guarded([&] {
    if (tab == nullptr || path == nullptr)
      throw rrd::ConfigError("rrd_table_write: null argument");
    rrd::harness::emit_table(tab->rows, format_of(format), path);
  });
}

int rrd_gordon_run(size_t n, double alpha1, double alpha2,
                   const rrd_objective* obj, double offset_over_sqrt_n,
                   uint64_t trials, uint64_t seed, int threads,
                   rrd_gordon_result* out) {
  return guarded([&] {
    if (obj == nullptr || out == nullptr)
      throw rrd::ConfigError("rrd_gordon_run: null argument");
    rrd::auxiliary::GordonCheckSpec spec;
    spec.shape.n = n;
    spec.shape.alpha1 = alpha1;
    spec.shape.alpha2 = alpha2;
    spec.objective = obj->spec;
    spec.offset_level =
        offset_over_sqrt_n * std::sqrt(static_cast<double>(n));
    spec.trials = trials;
    spec.master_seed = seed;
    spec.threads = threads;
    const auto rep = rrd::auxiliary::gordon_check(spec);
    out->p_left = rep.p_left;
    out->p_right = rep.p_right;
    out->left_ci_lo = rep.left_ci_lo;
    out->left_ci_hi = rep.left_ci_hi;
    out->right_ci_lo = rep.right_ci_lo;
    out->right_ci_hi = rep.right_ci_hi;
    out->holds = rep.holds ? 1 : 0;
    out->left_failures = rep.left_failures;
    out->right_failures = rep.right_failures;
    out->trials = rep.trials;
  });
}

int rrd_gordon_write(const rrd_gordon_result* res, int format,
                     const char* path) {
  return guarded([&] {
    if (res == nullptr || path == nullptr)
      throw rrd::ConfigError("rrd_gordon_write: null argument");
    rrd::auxiliary::GordonReport rep;
    rep.p_left = res->p_left;
    rep.p_right = res->p_right;
    rep.left_ci_lo = res->left_ci_lo;
    rep.left_ci_hi = res->left_ci_hi;
    rep.right_ci_lo = res->right_ci_lo;
    rep.right_ci_hi = res->right_ci_hi;
    rep.holds = res->holds != 0;
    rep.left_failures = res->left_failures;
    rep.right_failures = res->right_failures;
    rep.trials = res->trials;
    rrd::harness::emit_gordon(rep, 0, 0.0, format_of(format), path);
  });
}

rrd_instance* rrd_instance_sample(size_t n, double alpha1, double alpha2,
                                  const rrd_objective* obj, double beta,
                                  uint64_t seed, uint64_t stream_id) {
  return guarded_new<rrd_instance>([&]() -> rrd_instance* {
    if (obj == nullptr) throw rrd::ConfigError("rrd_instance_sample: null obj");
    rrd::problem::ShapeConfig shape{n, alpha1, alpha2, beta};
    rrd::numerics::RngStream stream(seed, stream_id);
    return new rrd_instance{
        rrd::problem::sample_instance(shape, obj->spec, stream)};
  });
}

void rrd_instance_free(rrd_instance* ins) { delete ins; }

size_t rrd_instance_dim(const rrd_instance* ins) {
  return ins ? ins->instance.n : 0;
}

int rrd_instance_save(const rrd_instance* ins, const char* path) {
  return guarded([&] {
    if (ins == nullptr || path == nullptr)
      throw rrd::ConfigError("rrd_instance_save: null argument");
    rrd::problem::save_instance(ins->instance, path);
  });
}

rrd_instance* rrd_instance_load(const char* path) {
  return guarded_new<rrd_instance>([&]() -> rrd_instance* {
    if (path == nullptr) throw rrd::ConfigError("rrd_instance_load: null path");
    return new rrd_instance{rrd::problem::load_instance(path)};
  });
}

int rrd_instance_solve(const rrd_instance* ins, double rho, int max_iter,
                       double tol_primal, double tol_dual,
                       double over_relaxation, rrd_solve_result* out,
                       double* x_out) {
  return guarded([&] {
    if (ins == nullptr || out == nullptr)
      throw rrd::ConfigError("rrd_instance_solve: null argument");
    rrd::primal::SolverConfig cfg;
    cfg.rho = rho;
    cfg.max_iter = max_iter;
    cfg.tol_primal = tol_primal;
    cfg.tol_dual = tol_dual;
    cfg.over_relaxation = over_relaxation;
    const auto sol = rrd::primal::solve_primal(ins->instance, cfg);
    out->objective = sol.objective;
    out->residual_eq = sol.residual_eq;
    out->residual_ineq = sol.residual_ineq;
    out->residual_ball = sol.residual_ball;
    out->iterations = sol.iterations;
    out->converged = sol.converged ? 1 : 0;
    if (x_out != nullptr)
      std::memcpy(x_out, sol.x.data(), sol.x.size() * sizeof(double));
  });
}

}  // extern "C"
