// Command-line driver: simulate, sweep, verify-lemmas, trace-proof, plot.
//
// Exit codes: 0 success, 1 a checked inequality failed, 2 configuration or
// I/O error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "lassobounds/csv.hpp"
#include "lassobounds/errors.hpp"
#include "lassobounds/plot.hpp"
#include "lassobounds/runner.hpp"

namespace lb = lassobounds;

namespace {

constexpr int kOk = 0;
constexpr int kAssertionFailed = 1;
constexpr int kConfigError = 2;

constexpr const char* kOutputDirEnv = "LASSO_BOUNDS_OUTPUT_DIR";

struct Common {
  std::string config_path;
  std::string out_dir;
  unsigned threads = 1;
};

lb::ExperimentConfig load(const Common& common) {
  lb::ExperimentConfig config = lb::load_config(common.config_path);
  if (!common.out_dir.empty()) {
    config.output_dir = common.out_dir;
  } else if (const char* env = std::getenv(kOutputDirEnv); env && *env) {
    config.output_dir = env;
  }
  return config;
}

void print_summary(const std::vector<lb::SummaryRow>& rows) {
  std::cout << std::setw(7) << "n" << std::setw(6) << "p" << std::setw(12) << "mean_mspe" << std::setw(12)
            << "thm1_bound" << std::setw(14) << "mean_mspe_hat" << std::setw(12) << "thm2_bound" << std::setw(8)
            << "est1" << std::setw(8) << "est3" << '\n';
  for (const auto& r : rows) {
    std::cout << std::setw(7) << r.n << std::setw(6) << r.p << std::setw(12) << std::setprecision(5) << r.mean_mspe
              << std::setw(12) << r.thm1_bound << std::setw(14) << r.mean_mspe_hat << std::setw(12) << r.thm2_bound
              << std::setw(8) << r.frac_est1_holds << std::setw(8) << r.frac_est3_holds << '\n';
  }
}

void print_record(const lb::ReplicateRecord& rec) {
  const auto& r = rec.report;
  std::cerr << "first violating replicate: n=" << rec.n << " p=" << rec.p << " K=" << rec.K
            << " replicate=" << rec.replicate << '\n'
            << std::setprecision(17) << "  est1_lhs=" << r.est1_lhs << " est1_rhs=" << r.est1_rhs << " gap=" << r.gap
            << " est1_holds=" << r.est1_holds << '\n'
            << "  est3_lhs=" << r.est3_lhs << " est3_rhs=" << r.est3_rhs << " est3_holds=" << r.est3_holds << '\n'
            << "  mspe_exact=" << r.mspe_exact << " mspe_hat=" << r.mspe_hat << " max_abs_U=" << r.max_abs_U
            << " max_abs_V=" << r.max_abs_V << " converged=" << rec.converged << '\n';
}

int cmd_simulate(const Common& common) {
  const auto config = load(common);
  const auto result = lb::run_simulate(config, {common.threads});
  lb::write_simulation_outputs(result, config.output_dir);
  print_summary(result.summary);
  const auto unconverged = std::count_if(result.replicates.begin(), result.replicates.end(),
                                         [](const lb::ReplicateRecord& r) { return !r.converged; });
  if (unconverged) std::cerr << "warning: " << unconverged << " replicate(s) hit max_iterations\n";
  std::cout << "wrote " << (config.output_dir / "summary.csv").string() << '\n';
  return kOk;
}

int cmd_sweep(const Common& common, const std::vector<long>& p_grid) {
  const auto config = load(common);
  const auto rows = lb::run_sweep(config, p_grid, {common.threads});
  std::filesystem::create_directories(config.output_dir);
  lb::write_summary_csv(config.output_dir / "summary.csv", rows);
  print_summary(rows);
  return kOk;
}

int cmd_trace_proof(const Common& common) {
  const auto config = load(common);
  const auto result = lb::run_trace_proof(config, {common.threads});
  lb::write_simulation_outputs(result.simulation, config.output_dir);
  std::cout << "replicates: " << result.simulation.replicates.size() << '\n'
            << "frac_est1_holds: " << result.frac_est1_holds << '\n'
            << "frac_est3_holds: " << result.frac_est3_holds << '\n';
  if (!result.all_hold()) {
    print_record(*result.first_violation);
    return kAssertionFailed;
  }
  return kOk;
}

int cmd_verify_lemmas(std::uint64_t seed, long reps, double bound_scale, const std::string& out) {
  lb::LemmaGrid grid;
  grid.reps = reps;
  grid.bound_scale = bound_scale;
  const auto report = lb::run_verify_lemmas(grid, seed);
  for (const auto& v : report.verdicts) {
    std::cout << (v.verdict.passes ? "PASS " : "FAIL ") << std::left << std::setw(58) << v.name << std::right
              << " empirical=" << std::setprecision(6) << v.verdict.empirical_value
              << " bound=" << v.verdict.bound_value << " se=" << v.verdict.std_error << '\n';
  }
  if (!out.empty()) {
    std::filesystem::create_directories(out);
    std::ofstream csv(std::filesystem::path(out) / "lemmas.csv", std::ios::binary | std::ios::trunc);
    csv << "name,empirical_value,bound_value,std_error,replicates,passes\n";
    for (const auto& v : report.verdicts)
      csv << v.name << ',' << lb::format_double(v.verdict.empirical_value) << ','
          << lb::format_double(v.verdict.bound_value) << ',' << lb::format_double(v.verdict.std_error) << ','
          << v.verdict.replicates << ',' << int(v.verdict.passes) << '\n';
    if (!csv) throw lb::IoError("cannot write lemmas.csv");
  }
  const bool ok = report.all_pass();
  std::cout << (ok ? "all lemma checks passed" : "lemma check FAILED") << '\n';
  return ok ? kOk : kAssertionFailed;
}

int cmd_plot(const std::string& summary, const std::string& out) {
  lb::emit_plot_data(lb::read_summary_csv(summary), out);
  std::cout << "wrote " << (std::filesystem::path(out) / "summary.svg").string() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained Lasso: solver, simulation harness and prediction-error bound checks"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", common.out_dir,
                    std::string("Output directory (overrides $") + kOutputDirEnv + " and the config)");
    sub->add_option("--threads", common.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  };

  auto* simulate = app.add_subcommand("simulate", "Run the replicate grid and write replicates.csv/summary.csv");
  add_common(simulate);

  std::vector<long> p_grid;
  auto* sweep = app.add_subcommand("sweep", "simulate over several values of p");
  add_common(sweep);
  sweep->add_option("--p", p_grid, "Comma-separated p values")->required()->delimiter(',');

  auto* trace = app.add_subcommand("trace-proof", "Check the two deterministic inequalities on every replicate");
  add_common(trace);

  std::uint64_t seed = 20130101;
  long reps = 20000;
  double bound_scale = 1.0;
  std::string lemma_out;
  auto* lemmas = app.add_subcommand("verify-lemmas", "Monte Carlo checks of the maximal and mgf inequalities");
  lemmas->add_option("--seed", seed, "Master seed");
  lemmas->add_option("--reps", reps, "Replicates per check (large m is capped)")->check(CLI::Range(100L, 100000000L));
  lemmas->add_option("--out", lemma_out, "Directory for lemmas.csv");
  lemmas->add_option("--bound-scale", bound_scale)->group("");

  std::string summary_path, plot_out;
  auto* plot = app.add_subcommand("plot", "Write summary.dat (gnuplot) and summary.svg from a summary.csv");
  plot->add_option("--summary", summary_path, "summary.csv")->required()->check(CLI::ExistingFile);
  plot->add_option("--out", plot_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*simulate) return cmd_simulate(common);
    if (*sweep) return cmd_sweep(common, p_grid);
    if (*trace) return cmd_trace_proof(common);
    if (*lemmas) return cmd_verify_lemmas(seed, reps, bound_scale, lemma_out);
    if (*plot) return cmd_plot(summary_path, plot_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}
