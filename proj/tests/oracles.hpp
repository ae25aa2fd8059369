#pragma once

// Brute-force references used only by tests. None of these call into the
// solver; they work from first principles.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace oracles {

/// Projection onto the l1 ball by bisection on the soft-threshold level
/// theta, solving sum_j max(|v_j| - theta, 0) = K.
inline Eigen::VectorXd project_l1_bisection(const Eigen::VectorXd& v, double K) {
  if (v.lpNorm<1>() <= K) return v;
  double lo = 0.0, hi = v.cwiseAbs().maxCoeff();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double mass = (v.cwiseAbs().array() - mid).max(0.0).sum();
    (mass > K ? lo : hi) = mid;
  }
  const double theta = 0.5 * (lo + hi);
  Eigen::VectorXd w(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    const double mag = std::max(std::abs(v(j)) - theta, 0.0);
    w(j) = v(j) < 0 ? -mag : mag;
  }
  return w;
}

/// Nearest point to v in 3-d on the boundary of the l1 ball {|b|_1 = K},
/// scanning every face on a grid of the given step.
inline Eigen::Vector3d project_l1_boundary_grid3(const Eigen::Vector3d& v, double K, double step) {
  Eigen::Vector3d best = Eigen::Vector3d::Zero();
  double best_d = std::numeric_limits<double>::infinity();
  const int steps = static_cast<int>(std::round(K / step));
  for (int sx = -1; sx <= 1; sx += 2)
    for (int sy = -1; sy <= 1; sy += 2)
      for (int sz = -1; sz <= 1; sz += 2)
        for (int a = 0; a <= steps; ++a)
          for (int b = 0; a + b <= steps; ++b) {
            const double x = a * step, y = b * step, z = std::max(K - x - y, 0.0);
            const Eigen::Vector3d cand(sx * x, sy * y, sz * z);
            const double d = (cand - v).squaredNorm();
            if (d < best_d) best_d = d, best = cand;
          }
  return best;
}

/// min ||y - X b||^2 over |b_1| + |b_2| <= K (or |b_1| <= K for p = 1) on a
/// grid of the given resolution. The grid includes the ball's boundary.
inline double grid_search_min(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double K, double step,
                              Eigen::VectorXd* argmin = nullptr) {
  const Eigen::MatrixXd G = X.transpose() * X;
  const Eigen::VectorXd c = X.transpose() * y;
  const double yy = y.squaredNorm();
  const int steps = static_cast<int>(std::round(K / step));
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_b = Eigen::VectorXd::Zero(X.cols());
  if (X.cols() == 1) {
    for (int a = -steps; a <= steps; ++a) {
      const double b = a * step;
      const double f = yy - 2 * c(0) * b + G(0, 0) * b * b;
      if (f < best) best = f, best_b(0) = b;
    }
  } else {
    for (int a = -steps; a <= steps; ++a) {
      const double b1 = a * step;
      const int rem = steps - std::abs(a);
      for (int k = -rem; k <= rem; ++k) {
        const double b2 = k * step;
        const double f = yy - 2 * (c(0) * b1 + c(1) * b2) + G(0, 0) * b1 * b1 + 2 * G(0, 1) * b1 * b2 +
                         G(1, 1) * b2 * b2;
        if (f < best) best = f, best_b << b1, b2;
      }
    }
  }
  if (argmin) *argmin = best_b;
  return best;
}

/// Uniform point of the l1 ball of radius K (scaled Dirichlet direction).
template <class Gen>
Eigen::VectorXd random_feasible(Eigen::Index p, double K, Gen& gen) {
  std::exponential_distribution<double> e(1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::VectorXd w(p + 1);
  for (Eigen::Index j = 0; j <= p; ++j) w(j) = e(gen);
  w /= w.sum();
  Eigen::VectorXd b = K * w.head(p);
  for (Eigen::Index j = 0; j < p; ++j)
    if (u(gen) < 0.5) b(j) = -b(j);
  return b;
}

}  // namespace oracles
