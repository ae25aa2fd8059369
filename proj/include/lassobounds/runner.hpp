#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lassobounds/concentration.hpp"
#include "lassobounds/config.hpp"
#include "lassobounds/metrics.hpp"

namespace lassobounds {

/// One solved replicate, as written to replicates.csv.
struct ReplicateRecord {
  long n = 0;
  long p = 0;
  double K = 0.0;
  long replicate = 0;
  ReplicateReport report;
  bool converged = true;
  long iterations = 0;
  double l2_error = 0.0;  // ||beta~ - beta*||^2
  double l2_bound = 0.0;  // mspe_exact / lambda_min(Sigma); NaN when Sigma is singular
};

/// Aggregate over the replicates of one (n, p) cell, as written to summary.csv.
struct SummaryRow {
  long n = 0;
  long p = 0;
  double K = 0.0;
  long replicates = 0;
  double mean_mspe = 0.0;
  double se_mspe = 0.0;
  double mean_mspe_hat = 0.0;
  double se_mspe_hat = 0.0;
  double thm1_bound = 0.0;
  double thm2_bound = 0.0;
  double frac_est1_holds = 0.0;
  double frac_est3_holds = 0.0;
  double mean_max_U = 0.0;
  double u_bound = 0.0;
  double mean_max_V = 0.0;
  double v_bound = 0.0;
};

struct SimulationResult {
  std::vector<ReplicateRecord> replicates;  // ordered by (n, replicate)
  std::vector<SummaryRow> summary;          // one row per n
};

struct RunOptions {
  unsigned threads = 1;
};

/// Solves and evaluates one replicate. The data stream depends only on
/// (master_seed, n, replicate).
ReplicateRecord run_replicate(const ModelSpec& spec, const SecondMomentMatrix& sigma_mat, double K, long n,
                              long replicate, const SolverOptions& solver, const Stream& master);

/// Mean and standard error for each column of one n's replicates.
SummaryRow summarize(const std::vector<ReplicateRecord>& records, double M, double sigma);

/// Runs every (n, replicate) cell of the config. Output is identical for any
/// thread count. Solver non-convergence is recorded, never thrown.
SimulationResult run_simulate(const ExperimentConfig& config, const RunOptions& options = {});

/// Writes replicates.csv and summary.csv into dir (created if needed).
void write_simulation_outputs(const SimulationResult& result, const std::filesystem::path& dir);

/// simulate over several p values. Each p gets its own sub-directory; the
/// concatenated summary is returned. beta_star must be given as a sparse spec.
std::vector<SummaryRow> run_sweep(const ExperimentConfig& config, const std::vector<long>& p_grid,
                                  const RunOptions& options = {});

struct TraceProofResult {
  SimulationResult simulation;
  double frac_est1_holds = 0.0;
  double frac_est3_holds = 0.0;
  std::optional<ReplicateRecord> first_violation;

  [[nodiscard]] bool all_hold() const { return !first_violation.has_value(); }
};

/// Like run_simulate, but first requires ||beta*||_1 <= K (PreconditionError
/// otherwise) and reports the first replicate breaking est1 or est3.
TraceProofResult run_trace_proof(const ExperimentConfig& config, const RunOptions& options = {});

struct NamedVerdict {
  std::string name;
  LemmaVerdict verdict;
};

struct LemmaGrid {
  std::vector<long> m_values{1, 10, 1000};
  std::vector<double> L_values{0.5, 1.0, 2.0};
  long reps = 20000;
  /// Scales every bound; values < 1 give a negative control.
  double bound_scale = 1.0;
  /// Model used for the max|U_j| and max|V_jk| checks.
  ModelParams uv_model{100, SparseBeta{5, 1.0}, 1.0, IidRademacher{}, 1.0};
  std::vector<long> uv_n_grid{100, 400, 1600, 6400};
  long uv_reps = 200;
};

struct LemmaReport {
  std::vector<NamedVerdict> verdicts;
  [[nodiscard]] bool all_pass() const;
};

LemmaReport run_verify_lemmas(const LemmaGrid& grid, std::uint64_t seed);

}  // namespace lassobounds
