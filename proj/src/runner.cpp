#include "lassobounds/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "lassobounds/csv.hpp"
#include "lassobounds/errors.hpp"

namespace lassobounds {

namespace {

// Runs body(i) for i in [0, count) on up to `threads` workers. The first
// exception thrown by any task is rethrown after all workers stop.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& values) {
  MeanSe out;
  const auto count = static_cast<double>(values.size());
  if (values.empty()) return out;
  for (double v : values) out.mean += v;
  out.mean /= count;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.se = std::sqrt(ss / (count - 1.0) / count);
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

}  // namespace

ReplicateRecord run_replicate(const ModelSpec& spec, const SecondMomentMatrix& sigma_mat, double K, long n,
                              long replicate, const SolverOptions& solver, const Stream& master) {
  const Dataset data = sample_dataset(spec, n, master.derive({static_cast<std::uint64_t>(n),
                                                              static_cast<std::uint64_t>(replicate)}));
  const LassoProblem problem{data.X, data.y, K};
  const LassoSolution solution = solve(problem, solver);

  ReplicateRecord rec;
  rec.n = n;
  rec.p = static_cast<long>(spec.p());
  rec.K = K;
  rec.replicate = replicate;
  rec.report = trace_proof(data, solution, spec, sigma_mat, K, PreconditionPolicy::Record);
  rec.converged = solution.converged;
  rec.iterations = solution.iterations;
  rec.l2_error = (solution.beta - spec.beta_star()).squaredNorm();
  const double lambda_min = sigma_mat.smallest_eigenvalue();
  rec.l2_bound = lambda_min > 1e-12 ? l2_error_bound(rec.report.mspe_exact, lambda_min)
                                    : std::numeric_limits<double>::quiet_NaN();
  return rec;
}

SummaryRow summarize(const std::vector<ReplicateRecord>& records, double M, double sigma) {
  if (records.empty()) throw std::invalid_argument("summarize: no replicates");
  const ReplicateRecord& first = records.front();
  std::vector<double> mspe, mspe_hat, max_u, max_v;
  double est1 = 0.0, est3 = 0.0;
  for (const auto& rec : records) {
    if (rec.n != first.n || rec.p != first.p) throw std::invalid_argument("summarize: mixed (n, p) cells");
    mspe.push_back(rec.report.mspe_exact);
    mspe_hat.push_back(rec.report.mspe_hat);
    max_u.push_back(rec.report.max_abs_U);
    max_v.push_back(rec.report.max_abs_V);
    est1 += rec.report.est1_holds;
    est3 += rec.report.est3_holds;
  }
  const auto count = static_cast<double>(records.size());
  SummaryRow row;
  row.n = first.n;
  row.p = first.p;
  row.K = first.K;
  row.replicates = static_cast<long>(records.size());
  const MeanSe a = mean_se(mspe), b = mean_se(mspe_hat);
  row.mean_mspe = a.mean;
  row.se_mspe = a.se;
  row.mean_mspe_hat = b.mean;
  row.se_mspe_hat = b.se;
  row.thm1_bound = theorem1_bound(first.K, M, sigma, first.p, first.n);
  row.thm2_bound = theorem2_bound(first.K, M, sigma, first.p, first.n);
  row.frac_est1_holds = est1 / count;
  row.frac_est3_holds = est3 / count;
  row.mean_max_U = mean_se(max_u).mean;
  row.u_bound = u_max_bound(M, sigma, first.p, first.n);
  row.mean_max_V = mean_se(max_v).mean;
  row.v_bound = v_max_bound(M, first.p, first.n);
  return row;
}

SimulationResult run_simulate(const ExperimentConfig& config, const RunOptions& options) {
  validate(config);
  const ModelSpec spec = config.model.build();
  const SecondMomentMatrix sigma_mat = second_moment(spec);
  const double K = resolve_K(config.k_rule, spec.beta_star());
  const Stream master(config.master_seed);

  const std::size_t reps = static_cast<std::size_t>(config.replicates);
  SimulationResult result;
  result.replicates.resize(config.n_grid.size() * reps);
  parallel_for(result.replicates.size(), options.threads, [&](std::size_t task) {
    const long n = config.n_grid[task / reps];
    const long i = static_cast<long>(task % reps);
    result.replicates[task] = run_replicate(spec, sigma_mat, K, n, i, config.solver, master);
  });

  for (std::size_t g = 0; g < config.n_grid.size(); ++g) {
    const std::vector<ReplicateRecord> cell(result.replicates.begin() + static_cast<std::ptrdiff_t>(g * reps),
                                            result.replicates.begin() + static_cast<std::ptrdiff_t>((g + 1) * reps));
    result.summary.push_back(summarize(cell, spec.bound(), spec.sigma()));
  }
  return result;
}

void write_simulation_outputs(const SimulationResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  write_replicates_csv(dir / "replicates.csv", result.replicates);
  write_summary_csv(dir / "summary.csv", result.summary);
}

std::vector<SummaryRow> run_sweep(const ExperimentConfig& config, const std::vector<long>& p_grid,
                                  const RunOptions& options) {
  if (p_grid.empty()) throw ConfigError("sweep: p grid is empty");
  std::vector<SummaryRow> all;
  for (long p : p_grid) {
    ExperimentConfig cell = config;
    cell.model = config.model.with_p(p);
    cell.output_dir = config.output_dir / ("p_" + std::to_string(p));
    const SimulationResult result = run_simulate(cell, options);
    write_simulation_outputs(result, cell.output_dir);
    all.insert(all.end(), result.summary.begin(), result.summary.end());
  }
  return all;
}

TraceProofResult run_trace_proof(const ExperimentConfig& config, const RunOptions& options) {
  validate(config);
  const ModelSpec spec = config.model.build();
  const double K = resolve_K(config.k_rule, spec.beta_star());
  const double l1 = spec.beta_star().lpNorm<1>();
  if (l1 > K)
    throw PreconditionError("trace-proof: K = " + fmt(K) + " is below ||beta*||_1 = " + fmt(l1) +
                            "; both inequalities assume the true predictor is feasible");

  TraceProofResult out;
  out.simulation = run_simulate(config, options);
  double est1 = 0.0, est3 = 0.0;
  for (const auto& rec : out.simulation.replicates) {
    est1 += rec.report.est1_holds;
    est3 += rec.report.est3_holds;
    if ((!rec.report.est1_holds || !rec.report.est3_holds) && !out.first_violation) out.first_violation = rec;
  }
  const auto count = static_cast<double>(out.simulation.replicates.size());
  out.frac_est1_holds = est1 / count;
  out.frac_est3_holds = est3 / count;
  return out;
}

bool LemmaReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const NamedVerdict& v) { return v.verdict.passes; });
}

LemmaReport run_verify_lemmas(const LemmaGrid& grid, std::uint64_t seed) {
  const Stream master(seed);
  constexpr long kMaxDrawsPerCheck = 4'000'000;
  auto reps_for = [&](long m) { return std::clamp(kMaxDrawsPerCheck / m, 1000L, std::max(grid.reps, 1000L)); };
  const double scale = grid.bound_scale;

  LemmaReport report;
  auto add = [&](std::string name, LemmaVerdict v) { report.verdicts.push_back({std::move(name), v}); };

  for (std::size_t mi = 0; mi < grid.m_values.size(); ++mi) {
    const long m = grid.m_values[mi];
    for (std::size_t li = 0; li < grid.L_values.size(); ++li) {
      const double L = grid.L_values[li];
      const std::string cell = " m=" + std::to_string(m) + " L=" + fmt(L);

      // Heterogeneous scales in [L/2, L]; the maximum is L.
      Eigen::VectorXd sigmas =
          m == 1 ? Eigen::VectorXd::Constant(1, L) : Eigen::VectorXd::LinSpaced(m, 0.5 * L, L).eval();
      for (int corr = 0; corr < 2; ++corr) {
        add("gauss_max" + cell + (corr ? " correlated" : " independent"),
            verify_gauss_max(m, sigmas, corr == 1, reps_for(m), master.derive({1, mi, li, std::uint64_t(corr)}),
                             scale));
      }
      for (int d = 0; d < 2; ++d) {
        const BoundedDist dist = d ? BoundedDist::Rademacher : BoundedDist::Uniform;
        const std::string dname = d ? " rademacher" : " uniform";
        add("subgauss_max" + cell + dname,
            verify_subgauss_max(m, L, dist, reps_for(m), master.derive({2, mi, li, std::uint64_t(d)}), scale));
        const double c_values[] = {-1.0, 0.5, 1.0};
        for (std::size_t ci = 0; ci < 3; ++ci) {
          const double beta = c_values[ci] / (L * std::sqrt(static_cast<double>(m)));
          add("hoeffding_mgf" + cell + dname + " beta=" + fmt(beta),
              hoeffding_mgf_check(m, L, beta, dist, reps_for(m), master.derive({3, mi, li, std::uint64_t(d), ci}),
                                  scale));
        }
      }
    }
  }

  // cosh(beta L) <= exp(beta^2 L^2 / 2), the last step of the mgf argument.
  const double betas[] = {-3.0, -1.0, -0.1, 0.1, 1.0, 3.0};
  for (std::size_t bi = 0; bi < 6; ++bi) {
    const double beta = betas[bi];
    const LemmaVerdict mc = hoeffding_mgf_check(1, 1.0, beta, BoundedDist::Rademacher, grid.reps,
                                                master.derive({4, bi}), scale);
    add("hoeffding_mgf m=1 L=1 rademacher beta=" + fmt(beta), mc);
    LemmaVerdict exact;
    exact.empirical_value = *mc.exact_value;
    exact.bound_value = mc.bound_value;
    exact.replicates = 1;
    exact.passes = exact.empirical_value <= exact.bound_value;
    exact.exact_value = mc.exact_value;
    add("cosh_bound beta=" + fmt(beta), exact);
  }

  // max|U_j| and max|V_jk| against their expectation bounds.
  const ModelSpec spec = grid.uv_model.build();
  const SecondMomentMatrix sigma_mat = second_moment(spec);
  const long p = static_cast<long>(spec.p());
  for (long n : grid.uv_n_grid) {
    Eigen::VectorXd max_u(grid.uv_reps), max_v(grid.uv_reps);
    for (long r = 0; r < grid.uv_reps; ++r) {
      const Dataset data =
          sample_dataset(spec, n, master.derive({5, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r)}));
      max_u(r) = compute_U(data).cwiseAbs().maxCoeff();
      max_v(r) = compute_V(data, sigma_mat).cwiseAbs().maxCoeff();
    }
    const std::string cell = " n=" + std::to_string(n) + " p=" + std::to_string(p);
    add("max_abs_U" + cell, make_verdict(max_u, scale * u_max_bound(spec.bound(), spec.sigma(), p, n)));
    add("max_abs_V" + cell, make_verdict(max_v, scale * v_max_bound(spec.bound(), p, n)));
  }
  return report;
}

}  // namespace lassobounds
