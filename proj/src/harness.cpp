#include "harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "errors.hpp"
#include "rng.hpp"
#include "thread_pool.hpp"

namespace rrd::harness {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double param_of(const ExperimentSpec& spec) {
  return spec.objective.kind == problem::ObjectiveKind::BpSplit
             ? spec.shape.beta
             : spec.shape.alpha2;
}

theory::TheoryResult theory_of(const ExperimentSpec& spec, theory::Side side) {
  const int kind = static_cast<int>(spec.objective.kind);
  return theory::xi_for(kind, spec.objective.c, spec.shape.beta,
                        spec.shape.alpha1, spec.shape.alpha2, spec.eps, side);
}

struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t used = 0;
  std::size_t excluded = 0;
};

// Compensated sums in trial order; identical for every worker count.
Moments reduce(const std::vector<double>& values) {
  Moments m;
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    if (std::isnan(v)) {
      ++m.excluded;
      continue;
    }
    ++m.used;
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  if (m.used == 0) return m;
  m.mean = sum / static_cast<double>(m.used);
  double acc = 0.0, acc_comp = 0.0;
  for (double v : values) {
    if (std::isnan(v)) continue;
    const double d = (v - m.mean) * (v - m.mean);
    const double y = d - acc_comp;
    const double t = acc + y;
    acc_comp = (t - acc) - y;
    acc = t;
  }
  if (m.used > 1)
    m.stddev = std::sqrt(acc / static_cast<double>(m.used - 1));
  return m;
}

}  // namespace

void ExperimentSpec::validate() const {
  if (trials < 1) throw ConfigError("ExperimentSpec: trials must be >= 1");
  if (shape.n < 1) throw ConfigError("ExperimentSpec: n must be >= 1");
  solver.validate();
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const std::size_t n = spec.shape.n;
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  ExperimentReport rep;
  rep.param = param_of(spec);
  rep.n = n;
  rep.trials = spec.trials;
  rep.theory_lower = theory_of(spec, theory::Side::Lower).xi_over_sqrt_n;
  rep.theory_upper = theory_of(spec, theory::Side::Upper).xi_over_sqrt_n;

  if (spec.mode == Mode::TheoryOnly) {
    rep.sim_mean = rep.theory_lower;
    rep.sim_std = 0.0;
    rep.ci95 = 0.0;
    rep.trials_used = spec.trials;
    return rep;
  }

  if (spec.mode == Mode::GordonCheck) {
    auxiliary::GordonCheckSpec gspec;
    gspec.shape = spec.shape;
    gspec.objective = spec.objective;
    gspec.offset_level = spec.gordon_offset_over_sqrt_n * sqrt_n;
    gspec.trials = spec.trials;
    gspec.master_seed = spec.master_seed;
    gspec.threads = spec.threads;
    gspec.solver = spec.solver;
    const auxiliary::GordonReport grep = auxiliary::gordon_check(gspec);
    rep.sim_mean = grep.p_left;
    rep.theory_lower = grep.p_right;
    rep.theory_upper = grep.p_right;
    rep.trials_used = spec.trials - grep.left_failures;
    rep.trials_excluded = grep.left_failures;
    if (rep.trials_used > 1) {
      rep.sim_std = std::sqrt(grep.p_left * (1.0 - grep.p_left) *
                              static_cast<double>(rep.trials_used) /
                              static_cast<double>(rep.trials_used - 1));
      rep.ci95 =
          1.96 * rep.sim_std / std::sqrt(static_cast<double>(rep.trials_used));
    }
    rep.unreliable = rep.trials_excluded * 5 > rep.trials;
    return rep;
  }

  problem::ObjectiveSpec obj = spec.objective;
  if (obj.kind == problem::ObjectiveKind::BpSplit) obj.k = spec.shape.k();

  std::vector<double> values(spec.trials, kNan);
  const Mode mode = spec.mode;
  numerics::parallel_trials(spec.trials, spec.threads, [&](std::size_t t) {
    numerics::RngStream stream(spec.master_seed, t);
    if (mode == Mode::PrimalSim) {
      const problem::ProblemInstance ins =
          problem::sample_instance(spec.shape, obj, stream);
      const primal::Solution sol = primal::solve_primal(ins, spec.solver);
      if (sol.converged) values[t] = sol.objective / sqrt_n;
    } else {
      const std::vector<double> g = numerics::gaussian_vector(stream, n);
      auxiliary::AuxSpec aspec;
      aspec.side = theory::Side::Lower;
      aspec.shape = spec.shape;
      aspec.eps = spec.eps;
      aspec.objective = obj;
      auxiliary::AuxEvaluation eval;
      switch (obj.kind) {
        case problem::ObjectiveKind::PurelyLinear:
          eval = auxiliary::eval_aux_lp(g, aspec);
          break;
        case problem::ObjectiveKind::GeneralLinear:
          eval = auxiliary::eval_aux_linear_with_threshold(
              g, auxiliary::constraint_threshold(aspec), aspec.side, obj.c);
          break;
        case problem::ObjectiveKind::BpSplit:
          eval = auxiliary::eval_aux_bp(g, aspec);
          break;
      }
      if (eval.status == auxiliary::AuxStatus::Ok)
        values[t] = eval.value / sqrt_n;
    }
  });

  const Moments m = reduce(values);
  rep.sim_mean = m.mean;
  rep.sim_std = m.stddev;
  rep.trials_used = m.used;
  rep.trials_excluded = m.excluded;
  if (m.used > 0)
    rep.ci95 = 1.96 * m.stddev / std::sqrt(static_cast<double>(m.used));
  rep.unreliable = m.excluded * 5 > spec.trials;
  return rep;
}

std::vector<TableRow> reproduce_table(int which, const TableOverrides& ov) {
  std::vector<TableRow> rows;
  ExperimentSpec spec;
  spec.mode = ov.aux ? Mode::AuxSim : Mode::PrimalSim;
  spec.trials = ov.trials;
  spec.master_seed = ov.seed;
  spec.solver = ov.solver;
  spec.threads = ov.threads;
  spec.shape.n = ov.n;
  spec.shape.alpha1 = 0.5;

  if (which == 1) {
    spec.objective = problem::ObjectiveSpec::purely_linear();
    for (const double alpha2 : {0.5, 0.6, 0.7, 0.8, 0.9, 1.0}) {
      spec.shape.alpha2 = alpha2;
      rows.push_back(run_experiment(spec));
    }
  } else if (which == 2) {
    spec.shape.alpha2 = 0.5;
    spec.objective = problem::ObjectiveSpec::bp_split(0);
    for (const double beta : {0.42, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}) {
      spec.shape.beta = beta;
      rows.push_back(run_experiment(spec));
    }
  } else {
    throw ConfigError("reproduce_table: which must be 1 or 2");
  }
  return rows;
}

void write_rows_csv(std::span<const TableRow> rows, std::ostream& os) {
  os << "param,n,trials,sim_mean,sim_std,ci95,theory_lower,theory_upper,"
        "excluded\n";
  for (const TableRow& r : rows) {
    os << g6(r.param) << ',' << r.n << ',' << r.trials << ','
       << g6(r.sim_mean) << ',' << g6(r.sim_std) << ',' << g6(r.ci95) << ','
       << g6(r.theory_lower) << ',' << g6(r.theory_upper) << ','
       << r.trials_excluded << '\n';
  }
}

namespace {

void write_row_json_fields(const TableRow& r, std::ostream& os) {
  os << "{\"param\":" << g6(r.param) << ",\"n\":" << r.n
     << ",\"trials\":" << r.trials << ",\"sim_mean\":" << g6(r.sim_mean)
     << ",\"sim_std\":" << g6(r.sim_std) << ",\"ci95\":" << g6(r.ci95)
     << ",\"theory_lower\":" << g6(r.theory_lower)
     << ",\"theory_upper\":" << g6(r.theory_upper)
     << ",\"excluded\":" << r.trials_excluded
     << ",\"unreliable\":" << (r.unreliable ? "true" : "false") << "}";
}

}  // namespace

void write_report_json(const ExperimentReport& report, std::ostream& os) {
  write_row_json_fields(report, os);
  os << '\n';
}

void write_table_json(std::span<const TableRow> rows, std::ostream& os) {
  os << "{\"rows\":[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) os << ',';
    write_row_json_fields(rows[i], os);
  }
  os << "]}\n";
}

void write_gordon_csv(const auxiliary::GordonReport& rep, std::size_t n,
                      double offset_over_sqrt_n, std::ostream& os) {
  os << "n,trials,offset,p_left,p_left_lo,p_left_hi,p_right,p_right_lo,"
        "p_right_hi,left_failures,right_failures,holds\n";
  os << n << ',' << rep.trials << ',' << g6(offset_over_sqrt_n) << ','
     << g6(rep.p_left) << ',' << g6(rep.left_ci_lo) << ','
     << g6(rep.left_ci_hi) << ',' << g6(rep.p_right) << ','
     << g6(rep.right_ci_lo) << ',' << g6(rep.right_ci_hi) << ','
     << rep.left_failures << ',' << rep.right_failures << ','
     << (rep.holds ? 1 : 0) << '\n';
}

void write_gordon_json(const auxiliary::GordonReport& rep, std::size_t n,
                       double offset_over_sqrt_n, std::ostream& os) {
  os << "{\"n\":" << n << ",\"trials\":" << rep.trials
     << ",\"offset\":" << g6(offset_over_sqrt_n)
     << ",\"p_left\":" << g6(rep.p_left)
     << ",\"p_left_lo\":" << g6(rep.left_ci_lo)
     << ",\"p_left_hi\":" << g6(rep.left_ci_hi)
     << ",\"p_right\":" << g6(rep.p_right)
     << ",\"p_right_lo\":" << g6(rep.right_ci_lo)
     << ",\"p_right_hi\":" << g6(rep.right_ci_hi)
     << ",\"left_failures\":" << rep.left_failures
     << ",\"right_failures\":" << rep.right_failures
     << ",\"holds\":" << (rep.holds ? "true" : "false") << "}\n";
}

namespace {

void with_output(const std::string& path,
                 const std::function<void(std::ostream&)>& body) {
  if (path == "-" || path.empty()) {
    body(std::cout);
    std::cout.flush();
    if (!std::cout) throw IoError("emit: stdout write failed");
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("emit: cannot open " + path);
  body(file);
  file.flush();
  if (!file) throw IoError("emit: write failed for " + path);
}

}  // namespace

void emit_report(const ExperimentReport& report, Format format,
                 const std::string& path) {
  with_output(path, [&](std::ostream& os) {
    if (format == Format::Csv)
      write_rows_csv(std::span<const TableRow>(&report, 1), os);
    else
      write_report_json(report, os);
  });
}

void emit_table(std::span<const TableRow> rows, Format format,
                const std::string& path) {
  with_output(path, [&](std::ostream& os) {
    if (format == Format::Csv)
      write_rows_csv(rows, os);
    else
      write_table_json(rows, os);
  });
}

void emit_gordon(const auxiliary::GordonReport& rep, std::size_t n,
                 double offset_over_sqrt_n, Format format,
                 const std::string& path) {
  with_output(path, [&](std::ostream& os) {
    if (format == Format::Csv)
      write_gordon_csv(rep, n, offset_over_sqrt_n, os);
    else
      write_gordon_json(rep, n, offset_over_sqrt_n, os);
  });
}

}  // namespace rrd::harness
