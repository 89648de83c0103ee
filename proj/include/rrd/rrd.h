#ifndef RRD_RRD_H
#define RRD_RRD_H

/* rrd -- random linearly-constrained program duality toolkit.
 *
 * C interface to the rrd shared library. All functions returning int use
 * the RRD_* status codes below; on failure rrd_last_error() describes the
 * problem. Handles are opaque and owned by the caller until passed to the
 * matching *_free function.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RRD_API __declspec(dllexport)
#else
#define RRD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. The CLI reuses them as exit codes. */
enum {
  RRD_OK = 0,
  RRD_ERROR_CONFIG = 2,
  RRD_ERROR_NUMERIC = 3,
  RRD_ERROR_IO = 4
};

enum { RRD_OBJECTIVE_LP = 0, RRD_OBJECTIVE_GL = 1, RRD_OBJECTIVE_BP = 2 };
enum { RRD_SIDE_LOWER = 0, RRD_SIDE_UPPER = 1 };
enum { RRD_BRANCH_INTERIOR = 0, RRD_BRANCH_CLAMPED_ZERO = 1 };
enum { RRD_MODE_PRIMAL = 0, RRD_MODE_AUX = 1, RRD_MODE_THEORY = 2 };
enum { RRD_FORMAT_CSV = 0, RRD_FORMAT_JSON = 1 };

typedef struct rrd_objective rrd_objective;
typedef struct rrd_experiment rrd_experiment;
typedef struct rrd_report rrd_report;
typedef struct rrd_table rrd_table;
typedef struct rrd_instance rrd_instance;

typedef struct rrd_theory_result {
  double xi_over_sqrt_n; /* predicted optimum scaled by 1/sqrt(n), <= 0 */
  double optimizer;      /* lambda-hat or theta-hat; 0 when branch is clamped */
  int branch;            /* RRD_BRANCH_* */
  int side;              /* RRD_SIDE_* */
} rrd_theory_result;

typedef struct rrd_solve_result {
  double objective;
  double residual_eq;   /* ||Ax - a||_2 / sqrt(n) */
  double residual_ineq; /* ||(Bx - b)_+||_2 / sqrt(n) */
  double residual_ball; /* max(0, ||x||_2 - radius) */
  int iterations;
  int converged;
} rrd_solve_result;

typedef struct rrd_gordon_result {
  double p_left;
  double p_right;
  double left_ci_lo, left_ci_hi;   /* Wilson 95% interval for p_left */
  double right_ci_lo, right_ci_hi; /* Wilson 95% interval for p_right */
  int holds; /* p_left >= p_right - combined CI half-widths */
  uint64_t left_failures, right_failures;
  uint64_t trials;
} rrd_gordon_result;

RRD_API const char* rrd_version(void);

/* Message for the most recent failure on this thread. */
RRD_API const char* rrd_last_error(void);

/* ---- objectives ------------------------------------------------------ */

RRD_API rrd_objective* rrd_objective_lp(void);
RRD_API rrd_objective* rrd_objective_gl(const double* c, size_t len);
RRD_API rrd_objective* rrd_objective_bp(size_t k);
RRD_API void rrd_objective_free(rrd_objective* obj);

/* ---- closed-form asymptotic predictions ------------------------------ */

/* beta is consumed only for BP objectives; GL reads the c vector stored in
 * the objective handle. */
RRD_API int rrd_theory_eval(const rrd_objective* obj, double alpha1,
                            double alpha2, double beta, double eps1,
                            double eps5, int side, rrd_theory_result* out);

RRD_API double rrd_erfc(double x);
RRD_API double rrd_truncated_second_moment(double theta);

/* ---- Monte Carlo experiments ----------------------------------------- */

RRD_API rrd_experiment* rrd_experiment_new(void);
RRD_API void rrd_experiment_free(rrd_experiment* exp);
RRD_API int rrd_experiment_set_mode(rrd_experiment* exp, int mode);
RRD_API int rrd_experiment_set_shape(rrd_experiment* exp, size_t n,
                                     double alpha1, double alpha2, double beta);
RRD_API int rrd_experiment_set_objective(rrd_experiment* exp,
                                         const rrd_objective* obj);
RRD_API int rrd_experiment_set_trials(rrd_experiment* exp, uint64_t trials);
RRD_API int rrd_experiment_set_seed(rrd_experiment* exp, uint64_t seed);
RRD_API int rrd_experiment_set_epsilon(rrd_experiment* exp, double eps1,
                                       double eps5);
RRD_API int rrd_experiment_set_solver(rrd_experiment* exp, double rho,
                                      int max_iter, double tol_primal,
                                      double tol_dual, double over_relaxation);
/* threads = 0 -> honor RRD_THREADS, else hardware count */
RRD_API int rrd_experiment_set_threads(rrd_experiment* exp, int threads);
RRD_API int rrd_experiment_run(const rrd_experiment* exp, rrd_report** out);

RRD_API void rrd_report_free(rrd_report* rep);
RRD_API double rrd_report_mean(const rrd_report* rep);
RRD_API double rrd_report_std(const rrd_report* rep);
RRD_API double rrd_report_ci95(const rrd_report* rep);
RRD_API double rrd_report_theory(const rrd_report* rep, int side);
RRD_API uint64_t rrd_report_trials_used(const rrd_report* rep);
RRD_API uint64_t rrd_report_trials_excluded(const rrd_report* rep);
RRD_API int rrd_report_unreliable(const rrd_report* rep);
/* path "-" writes to stdout */
RRD_API int rrd_report_write(const rrd_report* rep, int format,
                             const char* path);

/* ---- table reproduction ---------------------------------------------- */

RRD_API int rrd_table_run(int which, size_t n, uint64_t trials, uint64_t seed,
                          int aux_mode, int threads, rrd_table** out);
RRD_API void rrd_table_free(rrd_table* tab);
RRD_API size_t rrd_table_rows(const rrd_table* tab);
RRD_API int rrd_table_row(const rrd_table* tab, size_t i, double* param,
                          double* sim_mean, double* sim_std, double* ci95,
                          double* theory_lower, double* theory_upper,
                          uint64_t* excluded);
RRD_API int rrd_table_write(const rrd_table* tab, int format, const char* path);

/* ---- Gordon comparison check ----------------------------------------- */

/* offset_over_sqrt_n is the threshold divided by sqrt(n). */
RRD_API int rrd_gordon_run(size_t n, double alpha1, double alpha2,
                           const rrd_objective* obj, double offset_over_sqrt_n,
                           uint64_t trials, uint64_t seed, int threads,
                           rrd_gordon_result* out);
RRD_API int rrd_gordon_write(const rrd_gordon_result* res, int format,
                             const char* path);

/* ---- sampled instances (replay) --------------------------------------- */

RRD_API rrd_instance* rrd_instance_sample(size_t n, double alpha1,
                                          double alpha2,
                                          const rrd_objective* obj,
                                          double beta, uint64_t seed,
                                          uint64_t stream_id);
RRD_API void rrd_instance_free(rrd_instance* ins);
RRD_API size_t rrd_instance_dim(const rrd_instance* ins);
RRD_API int rrd_instance_save(const rrd_instance* ins, const char* path);
RRD_API rrd_instance* rrd_instance_load(const char* path);
/* x_out may be NULL; otherwise it must hold rrd_instance_dim doubles. */
RRD_API int rrd_instance_solve(const rrd_instance* ins, double rho,
                               int max_iter, double tol_primal,
                               double tol_dual, double over_relaxation,
                               rrd_solve_result* out, double* x_out);

#ifdef __cplusplus
}
#endif

#endif /* RRD_RRD_H */
