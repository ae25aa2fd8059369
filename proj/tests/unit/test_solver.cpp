#include <gtest/gtest.h>

#include <random>

#include "../oracles.hpp"
#include "lassobounds/errors.hpp"
#include "lassobounds/solver.hpp"

namespace lb = lassobounds;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

struct Instance {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  double K;
};

Instance random_instance(std::mt19937_64& gen, int max_n, int max_p) {
  std::uniform_int_distribution<int> dn(1, max_n), dp(1, max_p);
  std::normal_distribution<double> z(0.0, 1.0);
  std::uniform_real_distribution<double> dk(0.1, 3.0);
  Instance inst;
  const int n = dn(gen), p = dp(gen);
  inst.X = Eigen::MatrixXd::NullaryExpr(n, p, [&] { return z(gen); });
  inst.y = Eigen::VectorXd::NullaryExpr(n, [&] { return 2.0 * z(gen); });
  inst.K = dk(gen);
  return inst;
}

// X rows (1,0),(0,1),(1,1),(1,-1), y = (1,1,2,0), K = 1.
Instance small_instance() {
  Instance inst;
  inst.X.resize(4, 2);
  inst.X << 1, 0, 0, 1, 1, 1, 1, -1;
  inst.y = vec({1, 1, 2, 0});
  inst.K = 1.0;
  return inst;
}

}  // namespace

TEST(ProjectL1Ball, Examples) {
  EXPECT_TRUE(lb::project_l1_ball(vec({3, 0}), 1).isApprox(vec({1, 0})));
  EXPECT_EQ(lb::project_l1_ball(vec({0.2, -0.3}), 1), vec({0.2, -0.3}));
  EXPECT_TRUE(lb::project_l1_ball(vec({1, 1}), 1).isApprox(vec({0.5, 0.5})));
  EXPECT_EQ(lb::project_l1_ball(vec({4, -2, 1}), 0), Eigen::VectorXd::Zero(3));
}

TEST(ProjectL1Ball, ThreeDimensionalCaseAgreesWithBothOracles) {
  const Eigen::VectorXd v = vec({0.9, 0.5, -0.1});
  const Eigen::VectorXd got = lb::project_l1_ball(v, 1.0);

  const Eigen::Vector3d grid = oracles::project_l1_boundary_grid3(v, 1.0, 1e-3);
  EXPECT_LT((got - grid).cwiseAbs().maxCoeff(), 2e-3);
  const Eigen::VectorXd bisect = oracles::project_l1_bisection(v, 1.0);
  EXPECT_LT((got - bisect).cwiseAbs().maxCoeff(), 1e-12);

  // Both oracles land on (0.7, 0.3, 0).
  EXPECT_NEAR(got(0), 0.7, 1e-12);
  EXPECT_NEAR(got(1), 0.3, 1e-12);
  EXPECT_NEAR(got(2), 0.0, 1e-12);
}

TEST(ProjectL1Ball, Properties) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> z(0.0, 2.0);
  std::uniform_real_distribution<double> dk(0.05, 4.0);
  std::uniform_int_distribution<int> dp(1, 12);
  for (int trial = 0; trial < 1000; ++trial) {
    const int p = dp(gen);
    const double K = dk(gen);
    const Eigen::VectorXd u = Eigen::VectorXd::NullaryExpr(p, [&] { return z(gen); });
    const Eigen::VectorXd v = Eigen::VectorXd::NullaryExpr(p, [&] { return z(gen); });
    const Eigen::VectorXd pu = lb::project_l1_ball(u, K), pv = lb::project_l1_ball(v, K);

    EXPECT_LE(pu.lpNorm<1>(), K * (1 + 1e-12));
    EXPECT_LT((lb::project_l1_ball(pu, K) - pu).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((pu - pv).norm(), (u - v).norm() * (1 + 1e-12));
    EXPECT_LT((pu - oracles::project_l1_bisection(u, K)).cwiseAbs().maxCoeff(), 1e-8);

    if (trial < 100) {
      for (int k = 0; k < 100; ++k) {
        const Eigen::VectorXd x = oracles::random_feasible(p, K, gen);
        EXPECT_GE((pu - u).dot(x - pu), -1e-10);
      }
    }
  }
}

TEST(Solve, InteriorOptimumIsOrdinaryLeastSquares) {
  Eigen::MatrixXd X(2, 1);
  X << 1, 1;
  const Eigen::VectorXd y = vec({1, 1});
  for (auto alg : {lb::Algorithm::ProjectedGradient, lb::Algorithm::FrankWolfe}) {
    lb::SolverOptions opts;
    opts.algorithm = alg;
    const auto sol = lb::solve({X, y, 10.0}, opts);
    EXPECT_TRUE(sol.converged);
    EXPECT_NEAR(sol.beta(0), 1.0, 1e-6) << lb::to_string(alg);
  }
}

TEST(Solve, ZeroBudgetReturnsZero) {
  std::mt19937_64 gen(2);
  const Instance inst = random_instance(gen, 10, 5);
  for (auto alg : {lb::Algorithm::ProjectedGradient, lb::Algorithm::FrankWolfe}) {
    lb::SolverOptions opts;
    opts.algorithm = alg;
    const auto sol = lb::solve({inst.X, inst.y, 0.0}, opts);
    EXPECT_EQ(sol.beta, Eigen::VectorXd::Zero(inst.X.cols()));
    EXPECT_DOUBLE_EQ(sol.objective, inst.y.squaredNorm());
    EXPECT_EQ(sol.gap, 0.0);
  }
}

TEST(Solve, MatchesGridSearchOnTwoDimensionalInstance) {
  const Instance inst = small_instance();
  Eigen::VectorXd grid_argmin;
  const double grid_min = oracles::grid_search_min(inst.X, inst.y, inst.K, 1e-3, &grid_argmin);
  for (auto alg : {lb::Algorithm::ProjectedGradient, lb::Algorithm::FrankWolfe}) {
    lb::SolverOptions opts;
    opts.algorithm = alg;
    const auto sol = lb::solve({inst.X, inst.y, inst.K}, opts);
    EXPECT_TRUE(sol.converged);
    EXPECT_NEAR(sol.objective, grid_min, 1e-4) << lb::to_string(alg);
  }
  // The certificate evaluated at the grid optimum is already small.
  EXPECT_LE(lb::frank_wolfe_gap({inst.X, inst.y, inst.K}, grid_argmin), 1e-2);
}

TEST(Solve, SolutionInvariants) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = random_instance(gen, 40, 15);
    const lb::LassoProblem problem{inst.X, inst.y, inst.K};
    for (auto alg : {lb::Algorithm::ProjectedGradient, lb::Algorithm::FrankWolfe}) {
      lb::SolverOptions opts;
      opts.algorithm = alg;
      const auto sol = lb::solve(problem, opts);
      ASSERT_TRUE(sol.converged) << lb::to_string(alg) << " trial " << trial;
      EXPECT_LE(sol.gap, sol.gap_tolerance);
      EXPECT_DOUBLE_EQ(sol.gap_tolerance, lb::default_gap_tolerance(inst.y));
      EXPECT_LE(sol.beta.lpNorm<1>(), inst.K * (1 + lb::kFeasibilitySlack));
      const double recomputed = (inst.y - inst.X * sol.beta).squaredNorm();
      EXPECT_NEAR(sol.objective, recomputed, 1e-10 * std::max(recomputed, 1e-300));
    }
  }
}

TEST(Solve, ProjectedGradientDecreasesMonotonically) {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = random_instance(gen, 50, 20);
    lb::SolverOptions opts;
    opts.record_objective_trace = true;
    const auto sol = lb::solve({inst.X, inst.y, inst.K}, opts);
    double prev = inst.y.squaredNorm();
    for (double f : sol.objective_trace) {
      EXPECT_LE(f, prev + 1e-12 * (1 + prev));
      prev = f;
    }
  }
}

TEST(Solve, AlgorithmsAgreeOnRandomInstances) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = random_instance(gen, 50, 20);
    const lb::LassoProblem problem{inst.X, inst.y, inst.K};
    lb::SolverOptions pg, fw;
    fw.algorithm = lb::Algorithm::FrankWolfe;
    const auto a = lb::solve(problem, pg);
    const auto b = lb::solve(problem, fw);
    ASSERT_TRUE(a.converged && b.converged);
    EXPECT_LE(std::abs(a.objective - b.objective), 10.0 * a.gap_tolerance) << "trial " << trial;
  }
}

TEST(Solve, ObtuseAngleHoldsUpToHalfGap) {
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = random_instance(gen, 30, 10);
    const lb::LassoProblem problem{inst.X, inst.y, inst.K};
    const auto sol = lb::solve(problem);
    const Eigen::VectorXd fitted = lb::fitted_values(problem, sol.beta);
    const Eigen::VectorXd residual = inst.y - fitted;
    for (int k = 0; k < 100; ++k) {
      const Eigen::VectorXd b = oracles::random_feasible(inst.X.cols(), inst.K, gen);
      EXPECT_LE((inst.X * b - fitted).dot(residual), sol.gap / 2 + 1e-8);
    }
  }
}

TEST(Solve, FlagsNonConvergence) {
  std::mt19937_64 gen(7);
  const Instance inst = random_instance(gen, 30, 10);
  lb::SolverOptions opts;
  opts.max_iterations = 1;
  opts.gap_tolerance = 1e-14;
  const auto sol = lb::solve({inst.X, inst.y, inst.K}, opts);
  EXPECT_FALSE(sol.converged);
  EXPECT_GT(sol.gap, 1e-14);
  EXPECT_LE(sol.beta.lpNorm<1>(), inst.K * (1 + lb::kFeasibilitySlack));
}

TEST(Solve, RejectsMalformedProblems) {
  const Eigen::MatrixXd X = Eigen::MatrixXd::Ones(3, 2);
  const Eigen::VectorXd y = Eigen::VectorXd::Ones(4);
  EXPECT_THROW(lb::solve({X, y, 1.0}), lb::DimensionError);
  const Eigen::VectorXd y3 = Eigen::VectorXd::Ones(3);
  EXPECT_THROW(lb::solve({X, y3, -1.0}), std::invalid_argument);
  lb::SolverOptions opts;
  opts.gap_tolerance = 0.0;
  EXPECT_THROW(lb::solve({X, y3, 1.0}, opts), std::invalid_argument);
}

TEST(FrankWolfeGap, Examples) {
  // Interior optimum: gradient vanishes.
  Eigen::MatrixXd X(2, 1);
  X << 1, 1;
  const Eigen::VectorXd y = vec({1, 1});
  EXPECT_NEAR(lb::frank_wolfe_gap({X, y, 10.0}, vec({1.0})), 0.0, 1e-15);
  EXPECT_EQ(lb::frank_wolfe_gap({X, y, 0.0}, vec({0.0})), 0.0);
  EXPECT_THROW(lb::frank_wolfe_gap({X, y, 0.5}, vec({1.0})), lb::PreconditionError);
}

TEST(FrankWolfeGap, BoundsSuboptimality) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = random_instance(gen, 20, 8);
    const lb::LassoProblem problem{inst.X, inst.y, inst.K};
    const double fmin = lb::solve(problem).objective;
    const Eigen::VectorXd b = oracles::random_feasible(inst.X.cols(), inst.K, gen);
    const double f = (inst.y - inst.X * b).squaredNorm();
    const double g = lb::frank_wolfe_gap(problem, b);
    EXPECT_GE(g, 0.0);
    EXPECT_LE(f - fmin, g + 1e-9 * (1 + f));
  }
}

TEST(FittedValues, Examples) {
  Eigen::MatrixXd X(2, 2);
  X << 1, 2, 3, 4;
  const Eigen::VectorXd y = Eigen::VectorXd::Zero(2);
  const lb::LassoProblem problem{X, y, 1.0};
  EXPECT_EQ(lb::fitted_values(problem, vec({0, 0})), Eigen::VectorXd::Zero(2));
  EXPECT_EQ(lb::fitted_values(problem, vec({1, 1})), vec({3, 7}));
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(3, 3);
  const Eigen::VectorXd y3 = Eigen::VectorXd::Zero(3);
  EXPECT_EQ(lb::fitted_values({I, y3, 1.0}, vec({0.5, -2, 7})), vec({0.5, -2, 7}));
  EXPECT_THROW(lb::fitted_values(problem, vec({1, 2, 3})), lb::DimensionError);
}
