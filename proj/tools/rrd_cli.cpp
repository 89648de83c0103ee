// rrd command-line harness: closed-form predictions, Monte Carlo simulation,
// table reproduction, and the Gordon comparison check, all through the C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rrd/rrd.h"

namespace {

struct ObjectiveDeleter {
  void operator()(rrd_objective* o) const { rrd_objective_free(o); }
};
using ObjectivePtr = std::unique_ptr<rrd_objective, ObjectiveDeleter>;

int fail(int code, const std::string& what) {
  std::fprintf(stderr, "rrd: %s\n", what.c_str());
  if (code == RRD_ERROR_CONFIG) return 2;
  return 3;
}

int fail_api(int code) { return fail(code, rrd_last_error()); }

std::vector<double> read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--c-file", "cannot open " + path);
  std::vector<double> values;
  double v;
  while (in >> v) values.push_back(v);
  if (values.empty())
    throw CLI::ValidationError("--c-file", "no numbers in " + path);
  return values;
}

ObjectivePtr make_objective(const std::string& kind,
                            const std::string& c_file) {
  if (kind == "lp") return ObjectivePtr(rrd_objective_lp());
  if (kind == "gl") {
    if (c_file.empty())
      throw CLI::ValidationError("--objective", "gl requires --c-file");
    const auto c = read_vector_file(c_file);
    return ObjectivePtr(rrd_objective_gl(c.data(), c.size()));
  }
  if (kind == "bp") return ObjectivePtr(rrd_objective_bp(0));
  throw CLI::ValidationError("--objective", "must be lp, gl, or bp");
}

std::string g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int write_text(const std::string& path, const std::string& text) {
  if (path == "-" || path.empty()) {
    std::fputs(text.c_str(), stdout);
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) return fail(RRD_ERROR_IO, "cannot open " + path);
  out << text;
  if (!out) return fail(RRD_ERROR_IO, "write failed for " + path);
  return 0;
}

struct CommonFlags {
  std::string objective = "lp";
  std::string c_file;
  double alpha1 = 0.5;
  double alpha2 = 0.5;
  double beta = 0.5;
  double eps1 = 0.0;
  double eps5 = 0.0;
  std::string format = "csv";
  std::string out = "-";
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonFlags* flags, bool with_eps = true) {
  cmd->add_option("--objective", flags->objective, "objective: lp, gl, bp")
      ->check(CLI::IsMember({"lp", "gl", "bp"}));
  cmd->add_option("--c-file", flags->c_file,
                  "whitespace-separated coefficients for gl");
  cmd->add_option("--alpha1", flags->alpha1, "equality-row ratio m1/n");
  cmd->add_option("--alpha2", flags->alpha2, "inequality-row ratio m2/n");
  cmd->add_option("--beta", flags->beta, "split ratio k/n (bp only)");
  if (with_eps) {
    cmd->add_option("--eps1", flags->eps1, "slack constant eps1");
    cmd->add_option("--eps5", flags->eps5, "slack constant eps5");
  }
  cmd->add_option("--format", flags->format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", flags->out, "output path, - for stdout");
  cmd->add_option("--threads", flags->threads,
                  "worker threads (0 = RRD_THREADS or hardware)");
}

void warn_beta(const CommonFlags& flags) {
  if (flags.objective == "bp" && flags.beta > flags.alpha1)
    std::fprintf(stderr,
                 "rrd: warning: beta = %g exceeds alpha1 = %g; outside the "
                 "standing assumption\n",
                 flags.beta, flags.alpha1);
}

int run_theory(const CommonFlags& flags, const std::string& side) {
  warn_beta(flags);
  ObjectivePtr obj = make_objective(flags.objective, flags.c_file);
  if (!obj) return fail_api(RRD_ERROR_CONFIG);

  std::vector<int> sides;
  if (side == "lower" || side == "both") sides.push_back(RRD_SIDE_LOWER);
  if (side == "upper" || side == "both") sides.push_back(RRD_SIDE_UPPER);

  std::string text;
  const bool csv = flags.format == "csv";
  if (csv)
    text += "objective,side,alpha1,alpha2,beta,xi_over_sqrt_n,optimizer,"
            "branch\n";
  else
    text += "{\"rows\":[";
  bool first = true;
  for (int s : sides) {
    rrd_theory_result res;
    const int rc = rrd_theory_eval(obj.get(), flags.alpha1, flags.alpha2,
                                   flags.beta, flags.eps1, flags.eps5, s,
                                   &res);
    if (rc != RRD_OK) return fail_api(rc);
    const char* side_name = s == RRD_SIDE_LOWER ? "lower" : "upper";
    const char* branch =
        res.branch == RRD_BRANCH_CLAMPED_ZERO ? "clamped_zero" : "interior";
    if (csv) {
      text += flags.objective + "," + side_name + "," + g6(flags.alpha1) +
              "," + g6(flags.alpha2) + "," + g6(flags.beta) + "," +
              g6(res.xi_over_sqrt_n) + "," + g6(res.optimizer) + "," +
              branch + "\n";
    } else {
      if (!first) text += ",";
      first = false;
      text += std::string("{\"objective\":\"") + flags.objective +
              "\",\"side\":\"" + side_name + "\",\"alpha1\":" +
              g6(flags.alpha1) + ",\"alpha2\":" + g6(flags.alpha2) +
              ",\"beta\":" + g6(flags.beta) + ",\"xi_over_sqrt_n\":" +
              g6(res.xi_over_sqrt_n) + ",\"optimizer\":" + g6(res.optimizer) +
              ",\"branch\":\"" + branch + "\"}";
    }
  }
  if (!csv) text += "]}\n";
  return write_text(flags.out, text);
}

int run_simulate(const CommonFlags& flags, const std::string& mode,
                 std::size_t n, std::uint64_t trials, std::uint64_t seed,
                 double rho, int max_iter) {
  warn_beta(flags);
  ObjectivePtr obj = make_objective(flags.objective, flags.c_file);
  if (!obj) return fail_api(RRD_ERROR_CONFIG);

  std::unique_ptr<rrd_experiment, void (*)(rrd_experiment*)> exp(
      rrd_experiment_new(), rrd_experiment_free);
  if (!exp) return fail_api(RRD_ERROR_CONFIG);
  int rc = RRD_OK;
  rc = rrd_experiment_set_mode(
      exp.get(), mode == "aux" ? RRD_MODE_AUX : RRD_MODE_PRIMAL);
  if (rc == RRD_OK)
    rc = rrd_experiment_set_shape(exp.get(), n, flags.alpha1, flags.alpha2,
                                  flags.beta);
  if (rc == RRD_OK) rc = rrd_experiment_set_objective(exp.get(), obj.get());
  if (rc == RRD_OK) rc = rrd_experiment_set_trials(exp.get(), trials);
  if (rc == RRD_OK) rc = rrd_experiment_set_seed(exp.get(), seed);
  if (rc == RRD_OK)
    rc = rrd_experiment_set_epsilon(exp.get(), flags.eps1, flags.eps5);
  if (rc == RRD_OK)
    rc = rrd_experiment_set_solver(exp.get(), rho, max_iter, 1e-7, 1e-7, 1.6);
  if (rc == RRD_OK) rc = rrd_experiment_set_threads(exp.get(), flags.threads);
  if (rc != RRD_OK) return fail_api(rc);

  rrd_report* report = nullptr;
  rc = rrd_experiment_run(exp.get(), &report);
  if (rc != RRD_OK) return fail_api(rc);
  std::unique_ptr<rrd_report, void (*)(rrd_report*)> guard(report,
                                                           rrd_report_free);
  if (rrd_report_unreliable(report))
    std::fprintf(stderr,
                 "rrd: warning: more than 20%% of trials were excluded; "
                 "treat the report as unreliable\n");
  rc = rrd_report_write(report,
                        flags.format == "json" ? RRD_FORMAT_JSON
                                               : RRD_FORMAT_CSV,
                        flags.out.c_str());
  if (rc != RRD_OK) return fail_api(rc);
  return 0;
}

int run_table(const CommonFlags& flags, int which, std::size_t n,
              std::uint64_t trials, std::uint64_t seed, bool aux) {
  rrd_table* table = nullptr;
  int rc = rrd_table_run(which, n, trials, seed, aux ? 1 : 0, flags.threads,
                         &table);
  if (rc != RRD_OK) return fail_api(rc);
  std::unique_ptr<rrd_table, void (*)(rrd_table*)> guard(table,
                                                         rrd_table_free);
  rc = rrd_table_write(table,
                       flags.format == "json" ? RRD_FORMAT_JSON
                                              : RRD_FORMAT_CSV,
                       flags.out.c_str());
  if (rc != RRD_OK) return fail_api(rc);
  return 0;
}

int run_gordon(const CommonFlags& flags, std::size_t n, std::uint64_t trials,
               double offset, std::uint64_t seed) {
  ObjectivePtr obj = make_objective(flags.objective, flags.c_file);
  if (!obj) return fail_api(RRD_ERROR_CONFIG);
  rrd_gordon_result res;
  int rc = rrd_gordon_run(n, flags.alpha1, flags.alpha2, obj.get(), offset,
                          trials, seed, flags.threads, &res);
  if (rc != RRD_OK) return fail_api(rc);

  std::string text;
  if (flags.format == "csv") {
    text +=
        "n,trials,offset,p_left,p_left_lo,p_left_hi,p_right,p_right_lo,"
        "p_right_hi,left_failures,right_failures,holds\n";
    text += std::to_string(n) + "," + std::to_string(res.trials) + "," +
            g6(offset) + "," + g6(res.p_left) + "," + g6(res.left_ci_lo) +
            "," + g6(res.left_ci_hi) + "," + g6(res.p_right) + "," +
            g6(res.right_ci_lo) + "," + g6(res.right_ci_hi) + "," +
            std::to_string(res.left_failures) + "," +
            std::to_string(res.right_failures) + "," +
            (res.holds ? "1" : "0") + "\n";
  } else {
    text += std::string("{\"n\":") + std::to_string(n) +
            ",\"trials\":" + std::to_string(res.trials) +
            ",\"offset\":" + g6(offset) + ",\"p_left\":" + g6(res.p_left) +
            ",\"p_left_lo\":" + g6(res.left_ci_lo) +
            ",\"p_left_hi\":" + g6(res.left_ci_hi) +
            ",\"p_right\":" + g6(res.p_right) +
            ",\"p_right_lo\":" + g6(res.right_ci_lo) +
            ",\"p_right_hi\":" + g6(res.right_ci_hi) +
            ",\"left_failures\":" + std::to_string(res.left_failures) +
            ",\"right_failures\":" + std::to_string(res.right_failures) +
            ",\"holds\":" + (res.holds ? "true" : "false") + "}\n";
  }
  return write_text(flags.out, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random linearly-constrained program duality harness"};
  app.require_subcommand(1);

  CommonFlags theory_flags, sim_flags, table_flags, gordon_flags;

  auto* theory_cmd =
      app.add_subcommand("theory", "closed-form asymptotic predictions");
  std::string side = "both";
  add_common(theory_cmd, &theory_flags);
  theory_cmd->add_option("--side", side, "lower, upper, or both")
      ->check(CLI::IsMember({"lower", "upper", "both"}));

  auto* sim_cmd =
      app.add_subcommand("simulate", "Monte Carlo estimate of one config");
  std::string mode = "primal";
  std::size_t sim_n = 200;
  std::uint64_t sim_trials = 200, sim_seed = 42;
  double rho = 1.0;
  int max_iter = 50000;
  add_common(sim_cmd, &sim_flags);
  sim_cmd->add_option("--mode", mode, "primal or aux")
      ->check(CLI::IsMember({"primal", "aux"}));
  sim_cmd->add_option("--n", sim_n, "problem dimension");
  sim_cmd->add_option("--trials", sim_trials, "Monte Carlo trials");
  sim_cmd->add_option("--seed", sim_seed, "master seed");
  sim_cmd->add_option("--rho", rho, "splitting penalty");
  sim_cmd->add_option("--max-iter", max_iter, "iteration cap");

  auto* table_cmd =
      app.add_subcommand("table", "simulation-vs-theory sweep");
  int which = 1;
  std::size_t table_n = 200;
  std::uint64_t table_trials = 200, table_seed = 42;
  bool aux = false;
  add_common(table_cmd, &table_flags, /*with_eps=*/false);
  table_cmd->add_option("--which", which, "1 or 2")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  table_cmd->add_option("--n", table_n, "problem dimension");
  table_cmd->add_option("--trials", table_trials, "Monte Carlo trials");
  table_cmd->add_option("--seed", table_seed, "master seed");
  table_cmd->add_flag("--aux", aux,
                      "report the auxiliary-program quantity instead of the "
                      "primal solve");

  auto* gordon_cmd = app.add_subcommand(
      "gordon", "Monte Carlo check of the comparison inequality");
  std::size_t gordon_n = 30;
  std::uint64_t gordon_trials = 500, gordon_seed = 42;
  double offset = 0.0;
  add_common(gordon_cmd, &gordon_flags, /*with_eps=*/false);
  gordon_cmd->add_option("--n", gordon_n, "problem dimension");
  gordon_cmd->add_option("--trials", gordon_trials, "Monte Carlo trials");
  gordon_cmd
      ->add_option("--offset", offset, "threshold divided by sqrt(n)")
      ->required();
  gordon_cmd->add_option("--seed", gordon_seed, "master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (theory_cmd->parsed()) return run_theory(theory_flags, side);
    if (sim_cmd->parsed())
      return run_simulate(sim_flags, mode, sim_n, sim_trials, sim_seed, rho,
                          max_iter);
    if (table_cmd->parsed())
      return run_table(table_flags, which, table_n, table_trials, table_seed,
                       aux);
    if (gordon_cmd->parsed())
      return run_gordon(gordon_flags, gordon_n, gordon_trials, offset,
                        gordon_seed);
  } catch (const CLI::ValidationError& e) {
    return fail(RRD_ERROR_CONFIG, e.what());
  }
  return 2;
}
