#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "auxiliary.hpp"
#include "primal.hpp"

namespace rrd::harness {

enum class Mode { PrimalSim, AuxSim, TheoryOnly, GordonCheck };
enum class Format { Csv, Json };

struct ExperimentSpec {
  Mode mode = Mode::PrimalSim;
  problem::ShapeConfig shape;
  problem::ObjectiveSpec objective;
  std::size_t trials = 200;
  std::uint64_t master_seed = 42;
  theory::EpsilonConfig eps;
  primal::SolverConfig solver;
  int threads = 0;  // 0 -> RRD_THREADS / hardware
  // GordonCheck only: threshold divided by sqrt(n).
  double gordon_offset_over_sqrt_n = 0.0;

  void validate() const;
};

// Per-configuration Monte Carlo statistics. For GordonCheck the mean carries
// p_left and the theory columns carry p_right (the comparison target).
struct ExperimentReport {
  double param = 0.0;  // alpha2 for linear objectives, beta for BpSplit
  std::size_t n = 0;
  std::size_t trials = 0;
  double sim_mean = 0.0;  // mean of objective / sqrt(n)
  double sim_std = 0.0;
  double ci95 = 0.0;  // 1.96 * std / sqrt(trials_used)
  double theory_lower = 0.0;
  double theory_upper = 0.0;
  std::size_t trials_used = 0;
  std::size_t trials_excluded = 0;  // unbounded / non-converged
  bool unreliable = false;          // more than 20% excluded
};

// Trial t draws from stream_id = t of the master seed: PrimalSim samples an
// instance and solves it, AuxSim evaluates the auxiliary program on a fresh
// g, TheoryOnly echoes the closed form.
ExperimentReport run_experiment(const ExperimentSpec& spec);

using TableRow = ExperimentReport;

struct TableOverrides {
  std::size_t n = 200;
  std::size_t trials = 200;
  std::uint64_t seed = 42;
  bool aux = false;  // report the auxiliary quantity instead of the primal
  int threads = 0;
  primal::SolverConfig solver;
};

// which = 1 sweeps alpha2 over {0.5 .. 1.0} at alpha1 = 0.5 with the purely
// linear objective; which = 2 sweeps beta over {0.42, 0.5 .. 1.0} at
// alpha1 = alpha2 = 0.5 with the split objective.
std::vector<TableRow> reproduce_table(int which, const TableOverrides& ov = {});

// CSV columns: param,n,trials,sim_mean,sim_std,ci95,theory_lower,
// theory_upper,excluded. Floats carry 6 significant digits; output is
// byte-identical across runs and worker counts for a fixed seed.
void write_rows_csv(std::span<const TableRow> rows, std::ostream& os);
void write_report_json(const ExperimentReport& report, std::ostream& os);
void write_table_json(std::span<const TableRow> rows, std::ostream& os);

void write_gordon_csv(const auxiliary::GordonReport& rep, std::size_t n,
                      double offset_over_sqrt_n, std::ostream& os);
void write_gordon_json(const auxiliary::GordonReport& rep, std::size_t n,
                       double offset_over_sqrt_n, std::ostream& os);

// path "-" writes to stdout. Throws IoError on failure.
void emit_report(const ExperimentReport& report, Format format,
                 const std::string& path);
void emit_table(std::span<const TableRow> rows, Format format,
                const std::string& path);
void emit_gordon(const auxiliary::GordonReport& rep, std::size_t n,
                 double offset_over_sqrt_n, Format format,
                 const std::string& path);

}  // namespace rrd::harness
