#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string_view>
#include <vector>

namespace lassobounds {

/// min ||y - X beta||^2 subject to ||beta||_1 <= K.
///
/// Non-owning: X and y must outlive the problem.
struct LassoProblem {
  Eigen::Ref<const Eigen::MatrixXd> X;
  Eigen::Ref<const Eigen::VectorXd> y;
  double K;
};

/// Throws DimensionError / std::invalid_argument if the problem is malformed.
void validate(const LassoProblem& problem);

enum class Algorithm { ProjectedGradient, FrankWolfe };

std::string_view to_string(Algorithm algorithm);
Algorithm algorithm_from_string(std::string_view name);

struct SolverOptions {
  /// Absolute Frank-Wolfe gap at termination. Unset means 1e-8 * (1 + ||y||^2).
  std::optional<double> gap_tolerance;
  long max_iterations = 200000;
  Algorithm algorithm = Algorithm::ProjectedGradient;
  /// Record f(beta_t) after every iteration (tests only; costs memory).
  bool record_objective_trace = false;
};

double default_gap_tolerance(const Eigen::Ref<const Eigen::VectorXd>& y);
double resolve_gap_tolerance(const SolverOptions& opts, const Eigen::Ref<const Eigen::VectorXd>& y);

struct LassoSolution {
  Eigen::VectorXd beta;
  double objective = 0.0;  // ||y - X beta||^2, recomputed from scratch
  double gap = 0.0;        // certified: objective - min <= gap
  long iterations = 0;
  double gap_tolerance = 0.0;
  /// False when max_iterations ran out with gap > gap_tolerance; beta is then
  /// the iterate with the smallest gap seen.
  bool converged = true;
  std::vector<double> objective_trace;
};

/// Euclidean projection onto {beta : ||beta||_1 <= K} by sort-and-threshold.
Eigen::VectorXd project_l1_ball(const Eigen::Ref<const Eigen::VectorXd>& v, double K);

/// Deterministic solve from beta = 0. Never throws on non-convergence; check
/// LassoSolution::converged.
LassoSolution solve(const LassoProblem& problem, const SolverOptions& opts = {});

/// g(beta) = grad f(beta) . beta + K ||grad f(beta)||_inf, clamped at 0.
/// Throws PreconditionError if ||beta||_1 > K (1 + 1e-10).
double frank_wolfe_gap(const LassoProblem& problem, const Eigen::Ref<const Eigen::VectorXd>& beta);

/// X * beta.
Eigen::VectorXd fitted_values(const LassoProblem& problem, const Eigen::Ref<const Eigen::VectorXd>& beta);

/// Slack allowed on ||beta||_1 <= K for floating-point rounding.
inline constexpr double kFeasibilitySlack = 1e-10;

}  // namespace lassobounds
