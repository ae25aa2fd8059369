#pragma once

#include <Eigen/Dense>
#include <optional>

#include "lassobounds/rng.hpp"

namespace lassobounds {

/// Outcome of comparing a Monte Carlo mean to a one-sided expectation bound.
struct LemmaVerdict {
  double empirical_value = 0.0;
  double bound_value = 0.0;
  double std_error = 0.0;
  bool passes = false;  // empirical_value <= bound_value + 3 std_error
  long replicates = 0;
  /// Closed-form value when one is known (Rademacher mgf: cosh(beta L)).
  std::optional<double> exact_value;
};

/// Builds a verdict from a sample of replicate values.
LemmaVerdict make_verdict(const Eigen::Ref<const Eigen::VectorXd>& samples, double bound);

enum class BoundedDist { Rademacher, Uniform };

/// L sqrt(2 log(2m)).
double max_bound(double L, long m);

/// E max_i |xi_i| for xi_i ~ N(0, sigma_i^2). With correlated set, the xi_i
/// share a common factor: xi_i = sigma_i (rho Z_0 + sqrt(1 - rho^2) Z_i).
LemmaVerdict verify_gauss_max(long m, const Eigen::Ref<const Eigen::VectorXd>& sigmas, bool correlated, long reps,
                              const Stream& stream, double bound_scale = 1.0);

inline constexpr double kSharedFactorCorrelation = 0.7;

/// E max_i |xi_i| for independent centered variables bounded by L (uniform on
/// [-L, L] or L times a fair sign).
LemmaVerdict verify_subgauss_max(long m, double L, BoundedDist dist, long reps, const Stream& stream,
                                 double bound_scale = 1.0);

/// E exp(beta sum_i eta_i) against exp(beta^2 m L^2 / 2). Throws
/// std::invalid_argument when either exponent would overflow a double.
LemmaVerdict hoeffding_mgf_check(long m, double L, double beta, BoundedDist dist, long reps, const Stream& stream,
                                 double bound_scale = 1.0);

/// M sigma sqrt(2 n log(2p)); bounds E max_j |U_j|.
double u_max_bound(double M, double sigma, long p, long n);

/// 2 M^2 sqrt(2 log(2 p^2) / n); bounds E max_jk |V_jk|.
double v_max_bound(double M, long p, long n);

}  // namespace lassobounds
