#include "lassobounds/concentration.hpp"

#include <cmath>
#include <stdexcept>

namespace lassobounds {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

double draw_bounded(BoundedDist dist, double L, Engine& engine) {
  if (dist == BoundedDist::Rademacher) {
    std::bernoulli_distribution coin(0.5);
    return coin(engine) ? L : -L;
  }
  std::uniform_real_distribution<double> unif(-L, L);
  return unif(engine);
}

// Largest exponent that std::exp keeps finite, with headroom for summation.
constexpr double kMaxExponent = 700.0;

}  // namespace

LemmaVerdict make_verdict(const Eigen::Ref<const Eigen::VectorXd>& samples, double bound) {
  const long reps = static_cast<long>(samples.size());
  require(reps >= 1, "make_verdict: no samples");
  LemmaVerdict v;
  v.replicates = reps;
  v.bound_value = bound;
  v.empirical_value = samples.mean();
  if (reps > 1) {
    const double var = (samples.array() - v.empirical_value).square().sum() / static_cast<double>(reps - 1);
    v.std_error = std::sqrt(var / static_cast<double>(reps));
  }
  v.passes = v.empirical_value <= v.bound_value + 3.0 * v.std_error;
  return v;
}

double max_bound(double L, long m) {
  require(m >= 1, "max_bound: m must be >= 1");
  return L * std::sqrt(2.0 * std::log(2.0 * static_cast<double>(m)));
}

LemmaVerdict verify_gauss_max(long m, const Eigen::Ref<const Eigen::VectorXd>& sigmas, bool correlated, long reps,
                              const Stream& stream, double bound_scale) {
  require(m >= 1, "verify_gauss_max: m must be >= 1");
  require(sigmas.size() == m, "verify_gauss_max: need one sigma per variable");
  require((sigmas.array() >= 0.0).all() && sigmas.allFinite(), "verify_gauss_max: sigmas must be finite and >= 0");
  require(reps >= 100, "verify_gauss_max: need at least 100 replicates");

  const double rho = kSharedFactorCorrelation;
  const double idio = std::sqrt(1.0 - rho * rho);
  Engine engine = stream.engine();
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd maxima(reps);
  for (long r = 0; r < reps; ++r) {
    const double shared = correlated ? normal(engine) : 0.0;
    double best = 0.0;
    for (long i = 0; i < m; ++i) {
      const double z = correlated ? rho * shared + idio * normal(engine) : normal(engine);
      best = std::max(best, std::abs(sigmas(i) * z));
    }
    maxima(r) = best;
  }
  return make_verdict(maxima, bound_scale * max_bound(sigmas.maxCoeff(), m));
}

LemmaVerdict verify_subgauss_max(long m, double L, BoundedDist dist, long reps, const Stream& stream,
                                 double bound_scale) {
  require(m >= 1, "verify_subgauss_max: m must be >= 1");
  require(L >= 0.0 && std::isfinite(L), "verify_subgauss_max: L must be finite and >= 0");
  require(reps >= 100, "verify_subgauss_max: need at least 100 replicates");

  Engine engine = stream.engine();
  Eigen::VectorXd maxima(reps);
  for (long r = 0; r < reps; ++r) {
    double best = 0.0;
    for (long i = 0; i < m; ++i) best = std::max(best, std::abs(draw_bounded(dist, L, engine)));
    maxima(r) = best;
  }
  return make_verdict(maxima, bound_scale * max_bound(L, m));
}

LemmaVerdict hoeffding_mgf_check(long m, double L, double beta, BoundedDist dist, long reps, const Stream& stream,
                                 double bound_scale) {
  require(m >= 1, "hoeffding_mgf_check: m must be >= 1");
  require(L >= 0.0 && std::isfinite(L) && std::isfinite(beta), "hoeffding_mgf_check: L and beta must be finite");
  require(reps >= 100, "hoeffding_mgf_check: need at least 100 replicates");
  const double md = static_cast<double>(m);
  const double bound_exponent = beta * beta * md * L * L / 2.0;
  if (std::abs(beta) * md * L > kMaxExponent || bound_exponent > kMaxExponent)
    throw std::invalid_argument("hoeffding_mgf_check: |beta| m L too large, exp would overflow");

  Engine engine = stream.engine();
  Eigen::VectorXd values(reps);
  for (long r = 0; r < reps; ++r) {
    double sum = 0.0;
    for (long i = 0; i < m; ++i) sum += draw_bounded(dist, L, engine);
    values(r) = std::exp(beta * sum);
  }
  LemmaVerdict v = make_verdict(values, bound_scale * std::exp(bound_exponent));
  if (dist == BoundedDist::Rademacher && m == 1) v.exact_value = std::cosh(beta * L);
  return v;
}

double u_max_bound(double M, double sigma, long p, long n) {
  require(p >= 1 && n >= 1, "u_max_bound: p and n must be >= 1");
  return M * sigma * std::sqrt(2.0 * static_cast<double>(n) * std::log(2.0 * static_cast<double>(p)));
}

double v_max_bound(double M, long p, long n) {
  require(p >= 1 && n >= 1, "v_max_bound: p and n must be >= 1");
  const double pd = static_cast<double>(p);
  return 2.0 * M * M * std::sqrt(2.0 * std::log(2.0 * pd * pd) / static_cast<double>(n));
}

}  // namespace lassobounds
