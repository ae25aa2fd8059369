#include "lassobounds/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "lassobounds/errors.hpp"

namespace lassobounds {

namespace {

// f(beta) = yy - 2 b.beta + beta' G beta with G = X'X, b = X'y.
struct Quadratic {
  Eigen::MatrixXd G;
  Eigen::VectorXd b;
  double yy;

  explicit Quadratic(const LassoProblem& problem)
      : G(problem.X.transpose() * problem.X), b(problem.X.transpose() * problem.y), yy(problem.y.squaredNorm()) {}

  double objective(const Eigen::VectorXd& beta, const Eigen::VectorXd& Gbeta) const {
    return yy - 2.0 * b.dot(beta) + beta.dot(Gbeta);
  }
};

double gap_from_gradient(const Eigen::VectorXd& grad, const Eigen::VectorXd& beta, double K) {
  return grad.dot(beta) + K * grad.cwiseAbs().maxCoeff();
}

struct Iterate {
  Eigen::VectorXd beta;
  double gap = std::numeric_limits<double>::infinity();
};

LassoSolution finish(const LassoProblem& problem, Iterate best, long iterations, double tol,
                     std::vector<double> trace) {
  LassoSolution sol;
  sol.beta = std::move(best.beta);
  sol.objective = (problem.y - problem.X * sol.beta).squaredNorm();
  sol.gap = frank_wolfe_gap(problem, sol.beta);
  sol.iterations = iterations;
  sol.gap_tolerance = tol;
  sol.converged = sol.gap <= tol;
  sol.objective_trace = std::move(trace);
  return sol;
}

LassoSolution solve_projected_gradient(const LassoProblem& problem, const SolverOptions& opts, double tol) {
  const Eigen::Index p = problem.X.cols();
  Quadratic q(problem);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q.G, Eigen::EigenvaluesOnly);
  const double lambda_max = std::max(es.eigenvalues()(p - 1), 0.0);
  // The computed eigenvalue may sit a few ulps low; trace(G) is a hard cap.
  const double lipschitz = std::min(2.0 * lambda_max * (1.0 + 1e-10), 2.0 * q.G.trace());

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd Gbeta = Eigen::VectorXd::Zero(p);
  std::vector<double> trace;
  Iterate best{beta};

  long it = 0;
  for (;; ++it) {
    const Eigen::VectorXd grad = 2.0 * (Gbeta - q.b);
    const double gap = std::max(gap_from_gradient(grad, beta, problem.K), 0.0);
    if (gap < best.gap) best = {beta, gap};
    if (gap <= tol || it >= opts.max_iterations || lipschitz <= 0.0) break;
    beta = project_l1_ball(beta - grad / lipschitz, problem.K);
    Gbeta.noalias() = q.G * beta;
    if (opts.record_objective_trace) trace.push_back(q.objective(beta, Gbeta));
  }
  return finish(problem, std::move(best), it, tol, std::move(trace));
}

// Away-step Frank-Wolfe over the atoms {+K e_j, -K e_j} plus the origin, with
// exact line search on the quadratic. All per-iteration work is O(p) once
// G = X'X is formed.
LassoSolution solve_frank_wolfe(const LassoProblem& problem, const SolverOptions& opts, double tol) {
  const Eigen::Index p = problem.X.cols();
  const double K = problem.K;
  Quadratic q(problem);

  // Atom a < 2p is sign(a) K e_{a/2}, sign = + for even a; atom 2p is 0.
  const Eigen::Index origin = 2 * p;
  Eigen::VectorXd weight = Eigen::VectorXd::Zero(2 * p + 1);
  weight(origin) = 1.0;
  std::vector<Eigen::Index> active{origin};

  auto atom_sign = [](Eigen::Index a) { return (a % 2 == 0) ? 1.0 : -1.0; };
  // grad . atom
  auto atom_dot = [&](const Eigen::VectorXd& v, Eigen::Index a) {
    return a == origin ? 0.0 : atom_sign(a) * K * v(a / 2);
  };

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd Gbeta = Eigen::VectorXd::Zero(p);
  std::vector<double> trace;
  Iterate best{beta};

  auto rebuild_from_weights = [&] {
    beta.setZero();
    for (Eigen::Index a : active)
      if (a != origin) beta(a / 2) += atom_sign(a) * K * weight(a);
    Gbeta.noalias() = q.G * beta;
  };

  long it = 0;
  for (;; ++it) {
    const Eigen::VectorXd grad = 2.0 * (Gbeta - q.b);
    Eigen::Index j_star = 0;
    const double grad_inf = grad.cwiseAbs().maxCoeff(&j_star);
    const double gap = std::max(grad.dot(beta) + K * grad_inf, 0.0);
    if (gap < best.gap) best = {beta, gap};
    if (gap <= tol || it >= opts.max_iterations || K == 0.0) break;

    const Eigen::Index fw_atom = 2 * j_star + (grad(j_star) > 0.0 ? 1 : 0);

    Eigen::Index away_atom = active.front();
    double away_score = -std::numeric_limits<double>::infinity();
    for (Eigen::Index a : active) {
      const double s = atom_dot(grad, a);
      if (s > away_score) {
        away_score = s;
        away_atom = a;
      }
    }
    const double grad_beta = grad.dot(beta);
    const double away_decrease = away_score - grad_beta;
    const bool fw_step = gap >= away_decrease;

    // Direction d and G d, built from the chosen atom.
    const Eigen::Index atom = fw_step ? fw_atom : away_atom;
    Eigen::VectorXd atom_vec = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd G_atom = Eigen::VectorXd::Zero(p);
    if (atom != origin) {
      const double scaled = atom_sign(atom) * K;
      atom_vec(atom / 2) = scaled;
      G_atom = scaled * q.G.col(atom / 2);
    }
    const double sign_d = fw_step ? 1.0 : -1.0;
    const Eigen::VectorXd d = sign_d * (atom_vec - beta);
    const Eigen::VectorXd Gd = sign_d * (G_atom - Gbeta);

    double gamma_max = 1.0;
    if (!fw_step) {
      const double w = weight(away_atom);
      gamma_max = w < 1.0 ? w / (1.0 - w) : std::numeric_limits<double>::infinity();
    }
    const double slope = grad.dot(d);  // < 0 along a descent direction
    const double curvature = d.dot(Gd);
    double gamma = curvature > 0.0 ? -slope / (2.0 * curvature) : gamma_max;
    gamma = std::clamp(gamma, 0.0, gamma_max);
    if (!std::isfinite(gamma) || gamma == 0.0) {
      // No progress possible along either direction at this precision.
      break;
    }

    beta += gamma * d;
    Gbeta += gamma * Gd;
    if (fw_step) {
      weight *= (1.0 - gamma);
      weight(fw_atom) += gamma;
      if (gamma >= 1.0) {
        weight.setZero();
        weight(fw_atom) = 1.0;
        active.assign(1, fw_atom);
      } else if (std::find(active.begin(), active.end(), fw_atom) == active.end()) {
        active.push_back(fw_atom);
      }
    } else {
      weight *= (1.0 + gamma);
      weight(away_atom) -= gamma;
      if (gamma >= gamma_max) {
        weight(away_atom) = 0.0;
        active.erase(std::find(active.begin(), active.end(), away_atom));
      }
    }
    if ((it + 1) % 512 == 0) rebuild_from_weights();
    if (opts.record_objective_trace) trace.push_back(q.objective(beta, Gbeta));
  }
  return finish(problem, std::move(best), it, tol, std::move(trace));
}

}  // namespace

void validate(const LassoProblem& problem) {
  if (problem.X.rows() != problem.y.size())
    throw DimensionError("lasso problem: X has " + std::to_string(problem.X.rows()) + " rows but y has " +
                         std::to_string(problem.y.size()) + " entries");
  if (problem.X.cols() < 1) throw DimensionError("lasso problem: X has no columns");
  if (!(problem.K >= 0.0) || !std::isfinite(problem.K))
    throw std::invalid_argument("lasso problem: K must be finite and >= 0");
  if (!problem.X.allFinite() || !problem.y.allFinite())
    throw std::invalid_argument("lasso problem: non-finite entries in X or y");
}

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::ProjectedGradient:
      return "projected_gradient";
    case Algorithm::FrankWolfe:
      return "frank_wolfe";
  }
  return "unknown";
}

Algorithm algorithm_from_string(std::string_view name) {
  if (name == "projected_gradient") return Algorithm::ProjectedGradient;
  if (name == "frank_wolfe") return Algorithm::FrankWolfe;
  throw std::invalid_argument("unknown solver algorithm '" + std::string(name) + "'");
}

double default_gap_tolerance(const Eigen::Ref<const Eigen::VectorXd>& y) { return 1e-8 * (1.0 + y.squaredNorm()); }

double resolve_gap_tolerance(const SolverOptions& opts, const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (!opts.gap_tolerance) return default_gap_tolerance(y);
  if (!(*opts.gap_tolerance > 0.0)) throw std::invalid_argument("solver: gap_tolerance must be > 0");
  return *opts.gap_tolerance;
}

Eigen::VectorXd project_l1_ball(const Eigen::Ref<const Eigen::VectorXd>& v, double K) {
  if (!(K >= 0.0)) throw std::invalid_argument("project_l1_ball: K must be >= 0");
  const Eigen::Index p = v.size();
  if (K == 0.0) return Eigen::VectorXd::Zero(p);
  if (v.lpNorm<1>() <= K) return v;

  std::vector<double> u(v.data(), v.data() + p);
  for (double& x : u) x = std::abs(x);
  std::sort(u.begin(), u.end(), std::greater<>());

  // Largest rho with u_rho > (sum_{i<=rho} u_i - K) / rho.
  double cumsum = 0.0;
  double theta = 0.0;
  for (Eigen::Index r = 0; r < p; ++r) {
    cumsum += u[r];
    const double candidate = (cumsum - K) / static_cast<double>(r + 1);
    if (u[r] > candidate) theta = candidate;
  }
  Eigen::VectorXd w(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const double mag = std::max(std::abs(v(j)) - theta, 0.0);
    w(j) = v(j) < 0.0 ? -mag : mag;
  }
  return w;
}

LassoSolution solve(const LassoProblem& problem, const SolverOptions& opts) {
  validate(problem);
  if (opts.max_iterations < 1) throw std::invalid_argument("solver: max_iterations must be >= 1");
  const double tol = resolve_gap_tolerance(opts, problem.y);
  switch (opts.algorithm) {
    case Algorithm::ProjectedGradient:
      return solve_projected_gradient(problem, opts, tol);
    case Algorithm::FrankWolfe:
      return solve_frank_wolfe(problem, opts, tol);
  }
  throw std::logic_error("solver: unhandled algorithm");
}

double frank_wolfe_gap(const LassoProblem& problem, const Eigen::Ref<const Eigen::VectorXd>& beta) {
  validate(problem);
  if (beta.size() != problem.X.cols()) throw DimensionError("frank_wolfe_gap: beta has the wrong length");
  if (beta.lpNorm<1>() > problem.K * (1.0 + kFeasibilitySlack))
    throw PreconditionError("frank_wolfe_gap: beta lies outside the l1 ball");
  const Eigen::VectorXd grad = -2.0 * (problem.X.transpose() * (problem.y - problem.X * beta));
  return std::max(gap_from_gradient(grad, beta, problem.K), 0.0);
}

Eigen::VectorXd fitted_values(const LassoProblem& problem, const Eigen::Ref<const Eigen::VectorXd>& beta) {
  if (beta.size() != problem.X.cols())
    throw DimensionError("fitted_values: beta has " + std::to_string(beta.size()) + " entries, X has " +
                         std::to_string(problem.X.cols()) + " columns");
  return problem.X * beta;
}

}  // namespace lassobounds
