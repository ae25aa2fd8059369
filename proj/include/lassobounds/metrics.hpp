#pragma once

#include <Eigen/Dense>

#include "lassobounds/model.hpp"
#include "lassobounds/solver.hpp"

namespace lassobounds {

/// Per-replicate error measures, bounds, and the two deterministic proof
/// inequalities evaluated on this replicate.
struct ReplicateReport {
  double mspe_exact = 0.0;  // ||beta* - beta~||^2_Sigma
  double mspe_hat = 0.0;    // (1/n) ||X (beta* - beta~)||^2
  double thm1_bound = 0.0;
  double thm2_bound = 0.0;
  double max_abs_U = 0.0;
  double max_abs_V = 0.0;
  double est1_lhs = 0.0;  // ||Yhat - Y~||^2
  double est1_rhs = 0.0;  // 2 K max |U_j|
  double est3_lhs = 0.0;  // ||.||^2_Sigma - (1/n) ||Yhat - Y~||^2
  double est3_rhs = 0.0;  // 4 K^2 max |V_jk|
  double gap = 0.0;
  bool est1_holds = false;
  bool est3_holds = false;
  /// ||beta*||_1 <= K; when false neither inequality is guaranteed.
  bool precondition_holds = true;
};

/// Relative float slack on the proof inequalities.
inline constexpr double kProofSlack = 1e-8;

/// (beta* - beta~)' Sigma (beta* - beta~). Throws DimensionError on size
/// mismatch and std::invalid_argument if Sigma has an eigenvalue below -1e-12.
double mspe_sigma_norm(const Eigen::Ref<const Eigen::VectorXd>& beta_tilde,
                       const Eigen::Ref<const Eigen::VectorXd>& beta_star, const SecondMomentMatrix& sigma_mat);

/// (1/n) ||X (beta* - beta~)||^2.
double estimated_mspe(const Dataset& dataset, const Eigen::Ref<const Eigen::VectorXd>& beta_tilde,
                      const Eigen::Ref<const Eigen::VectorXd>& beta_star);

/// K M sigma sqrt(2 log(2p) / n) + 8 K^2 M^2 sqrt(2 log(2p^2) / n).
double theorem1_bound(double K, double M, double sigma, long p, long n);

/// K M sigma sqrt(2 log(2p) / n).
double theorem2_bound(double K, double M, double sigma, long p, long n);

/// mspe / lambda_min; the l2 error bound implied by a lower eigenvalue bound.
double l2_error_bound(double mspe, double lambda_min);

/// U_j = sum_i eps_i X_ij.
Eigen::VectorXd compute_U(const Dataset& dataset);

/// V_jk = E(X_j X_k) - (1/n) sum_i X_ij X_ik.
Eigen::MatrixXd compute_V(const Dataset& dataset, const SecondMomentMatrix& sigma_mat);

enum class PreconditionPolicy {
  Enforce,  // throw PreconditionError when ||beta*||_1 > K
  Record,   // evaluate anyway, set precondition_holds = false
};

/// Evaluates both proof inequalities on one replicate.
///
/// est1 is checked as lhs <= rhs + gap/2 + slack: for an approximate minimizer
/// with Frank-Wolfe gap g, the obtuse-angle step weakens to
/// (Yhat - Y~).(Y - Y~) <= g/2. est3 needs no solver slack. In both cases
/// slack = kProofSlack * (1 + est1_rhs + |est3_rhs|).
ReplicateReport trace_proof(const Dataset& dataset, const LassoSolution& solution, const ModelSpec& spec,
                            double K, PreconditionPolicy policy = PreconditionPolicy::Enforce);

/// Same, reusing a precomputed Sigma.
ReplicateReport trace_proof(const Dataset& dataset, const LassoSolution& solution, const ModelSpec& spec,
                            const SecondMomentMatrix& sigma_mat, double K,
                            PreconditionPolicy policy = PreconditionPolicy::Enforce);

}  // namespace lassobounds
