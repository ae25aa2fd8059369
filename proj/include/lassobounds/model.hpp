#pragma once

#include <Eigen/Dense>
#include <variant>

#include "lassobounds/rng.hpp"

namespace lassobounds {

/// Each covariate independently uniform on [-M, M].
struct IidUniform {};

/// Each covariate independently +M or -M with probability 1/2.
struct IidRademacher {};

/// X_j = M * S * T_j with one fair sign S per observation and independent
/// signs T_j, P(T_j = +1) = q. Pairwise second moment is M^2 (2q - 1)^2.
struct EquicorrelatedRademacher {
  double q = 0.5;
};

using CovariateDesign = std::variant<IidUniform, IidRademacher, EquicorrelatedRademacher>;

/// Ground-truth generative model: Y = beta_star . X + eps, eps ~ N(0, sigma^2),
/// with |X_j| <= M surely.
class ModelSpec {
 public:
  /// Throws std::invalid_argument on empty or non-finite beta_star, sigma < 0,
  /// M <= 0, or q outside [1/2, 1].
  ModelSpec(Eigen::VectorXd beta_star, double sigma, CovariateDesign design, double M);

  [[nodiscard]] Eigen::Index p() const noexcept { return beta_star_.size(); }
  [[nodiscard]] const Eigen::VectorXd& beta_star() const noexcept { return beta_star_; }
  [[nodiscard]] double sigma() const noexcept { return sigma_; }
  [[nodiscard]] const CovariateDesign& design() const noexcept { return design_; }
  [[nodiscard]] double bound() const noexcept { return M_; }

 private:
  Eigen::VectorXd beta_star_;
  double sigma_;
  CovariateDesign design_;
  double M_;
};

/// One replicate. The noise vector is kept so that proof quantities such as
/// U_j = sum_i eps_i X_ij can be evaluated.
struct Dataset {
  Eigen::MatrixXd X;        // n x p
  Eigen::VectorXd y;        // n
  Eigen::VectorXd epsilon;  // n

  [[nodiscard]] Eigen::Index n() const noexcept { return X.rows(); }
  [[nodiscard]] Eigen::Index p() const noexcept { return X.cols(); }
};

/// Population matrix of E(X_j X_k).
struct SecondMomentMatrix {
  Eigen::MatrixXd sigma_mat;

  [[nodiscard]] double smallest_eigenvalue() const;
};

/// Draws covariates for n observations from the design; rows are i.i.d.
Eigen::MatrixXd sample_covariates(const ModelSpec& spec, Eigen::Index n, Engine& engine);

/// Draws an i.i.d. dataset of n rows. Throws std::invalid_argument if n < 1.
Dataset sample_dataset(const ModelSpec& spec, Eigen::Index n, const Stream& stream);

/// Closed-form E(X_j X_k) for the spec's design.
SecondMomentMatrix second_moment(const ModelSpec& spec);

/// Row-wise X * beta_star. Throws DimensionError if X has the wrong width.
Eigen::VectorXd oracle_predictions(const ModelSpec& spec, const Eigen::MatrixXd& X);

}  // namespace lassobounds
