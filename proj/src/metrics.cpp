#include "lassobounds/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lassobounds/errors.hpp"

namespace lassobounds {

namespace {

void check_sigma(const SecondMomentMatrix& sigma_mat, Eigen::Index p, const char* who) {
  const auto& S = sigma_mat.sigma_mat;
  if (S.rows() != p || S.cols() != p)
    throw DimensionError(std::string(who) + ": Sigma is " + std::to_string(S.rows()) + "x" +
                         std::to_string(S.cols()) + ", expected " + std::to_string(p));
}

void check_args(long p, long n) {
  if (p < 1 || n < 1) throw std::invalid_argument("bound: p and n must be >= 1");
}

}  // namespace

double mspe_sigma_norm(const Eigen::Ref<const Eigen::VectorXd>& beta_tilde,
                       const Eigen::Ref<const Eigen::VectorXd>& beta_star, const SecondMomentMatrix& sigma_mat) {
  if (beta_tilde.size() != beta_star.size()) throw DimensionError("mspe_sigma_norm: beta lengths differ");
  check_sigma(sigma_mat, beta_star.size(), "mspe_sigma_norm");
  if (sigma_mat.smallest_eigenvalue() < -1e-12)
    throw std::invalid_argument("mspe_sigma_norm: Sigma is not positive semidefinite");
  const Eigen::VectorXd d = beta_star - beta_tilde;
  return std::max(d.dot(sigma_mat.sigma_mat * d), 0.0);
}

double estimated_mspe(const Dataset& dataset, const Eigen::Ref<const Eigen::VectorXd>& beta_tilde,
                      const Eigen::Ref<const Eigen::VectorXd>& beta_star) {
  if (beta_tilde.size() != dataset.p() || beta_star.size() != dataset.p())
    throw DimensionError("estimated_mspe: beta length does not match X");
  return (dataset.X * (beta_star - beta_tilde)).squaredNorm() / static_cast<double>(dataset.n());
}

double theorem1_bound(double K, double M, double sigma, long p, long n) {
  check_args(p, n);
  const double pd = static_cast<double>(p);
  return theorem2_bound(K, M, sigma, p, n) +
         8.0 * K * K * M * M * std::sqrt(2.0 * std::log(2.0 * pd * pd) / static_cast<double>(n));
}

double theorem2_bound(double K, double M, double sigma, long p, long n) {
  check_args(p, n);
  return K * M * sigma * std::sqrt(2.0 * std::log(2.0 * static_cast<double>(p)) / static_cast<double>(n));
}

double l2_error_bound(double mspe, double lambda_min) {
  if (!(lambda_min > 0.0)) throw std::invalid_argument("l2_error_bound: lambda_min must be > 0");
  return mspe / lambda_min;
}

Eigen::VectorXd compute_U(const Dataset& dataset) {
  if (dataset.epsilon.size() != dataset.n())
    throw std::invalid_argument("compute_U: dataset does not carry its noise vector");
  return dataset.X.transpose() * dataset.epsilon;
}

Eigen::MatrixXd compute_V(const Dataset& dataset, const SecondMomentMatrix& sigma_mat) {
  check_sigma(sigma_mat, dataset.p(), "compute_V");
  Eigen::MatrixXd empirical(dataset.p(), dataset.p());
  empirical.setZero();
  empirical.selfadjointView<Eigen::Lower>().rankUpdate(dataset.X.transpose());
  empirical = empirical.selfadjointView<Eigen::Lower>();
  return sigma_mat.sigma_mat - empirical / static_cast<double>(dataset.n());
}

ReplicateReport trace_proof(const Dataset& dataset, const LassoSolution& solution, const ModelSpec& spec, double K,
                            PreconditionPolicy policy) {
  return trace_proof(dataset, solution, spec, second_moment(spec), K, policy);
}

ReplicateReport trace_proof(const Dataset& dataset, const LassoSolution& solution, const ModelSpec& spec,
                            const SecondMomentMatrix& sigma_mat, double K, PreconditionPolicy policy) {
  const Eigen::VectorXd& beta_star = spec.beta_star();
  if (dataset.p() != spec.p() || solution.beta.size() != spec.p())
    throw DimensionError("trace_proof: dataset, solution and model disagree on p");

  ReplicateReport r;
  r.precondition_holds = beta_star.lpNorm<1>() <= K;
  if (!r.precondition_holds && policy == PreconditionPolicy::Enforce)
    throw PreconditionError("trace_proof: ||beta*||_1 = " + std::to_string(beta_star.lpNorm<1>()) +
                            " exceeds K = " + std::to_string(K) + "; the oracle predictor is not in the feasible set");
  if (solution.beta.lpNorm<1>() > K * (1.0 + kFeasibilitySlack))
    throw PreconditionError("trace_proof: solution is not feasible for K");

  const long n = static_cast<long>(dataset.n());
  const long p = static_cast<long>(dataset.p());
  const double M = spec.bound();

  const Eigen::VectorXd residual_fit = dataset.X * (beta_star - solution.beta);  // Yhat - Y~
  r.est1_lhs = residual_fit.squaredNorm();
  r.mspe_hat = r.est1_lhs / static_cast<double>(n);
  r.mspe_exact = mspe_sigma_norm(solution.beta, beta_star, sigma_mat);
  r.thm1_bound = theorem1_bound(K, M, spec.sigma(), p, n);
  r.thm2_bound = theorem2_bound(K, M, spec.sigma(), p, n);
  r.max_abs_U = compute_U(dataset).cwiseAbs().maxCoeff();
  r.max_abs_V = compute_V(dataset, sigma_mat).cwiseAbs().maxCoeff();
  r.est1_rhs = 2.0 * K * r.max_abs_U;
  r.est3_lhs = r.mspe_exact - r.mspe_hat;
  r.est3_rhs = 4.0 * K * K * r.max_abs_V;
  r.gap = solution.gap;

  const double slack = kProofSlack * (1.0 + r.est1_rhs + std::abs(r.est3_rhs));
  r.est1_holds = r.est1_lhs <= r.est1_rhs + r.gap / 2.0 + slack;
  r.est3_holds = r.est3_lhs <= r.est3_rhs + slack;
  return r;
}

}  // namespace lassobounds
