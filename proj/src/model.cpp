#include "lassobounds/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lassobounds/errors.hpp"

namespace lassobounds {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double sign(Engine& engine, double p_plus) {
  std::bernoulli_distribution coin(p_plus);
  return coin(engine) ? 1.0 : -1.0;
}

}  // namespace

ModelSpec::ModelSpec(Eigen::VectorXd beta_star, double sigma, CovariateDesign design, double M)
    : beta_star_(std::move(beta_star)), sigma_(sigma), design_(design), M_(M) {
  if (beta_star_.size() < 1) throw std::invalid_argument("model: p must be at least 1");
  if (!beta_star_.allFinite()) throw std::invalid_argument("model: beta_star has non-finite entries");
  if (!(sigma_ >= 0.0) || !std::isfinite(sigma_))
    throw std::invalid_argument("model: sigma must be finite and >= 0");
  if (!(M_ > 0.0) || !std::isfinite(M_)) throw std::invalid_argument("model: M must be finite and > 0");
  if (const auto* eq = std::get_if<EquicorrelatedRademacher>(&design_)) {
    if (!(eq->q >= 0.5 && eq->q <= 1.0))
      throw std::invalid_argument("model: equicorrelated q must lie in [0.5, 1], got " + std::to_string(eq->q));
  }
}

double SecondMomentMatrix::smallest_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma_mat, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

Eigen::MatrixXd sample_covariates(const ModelSpec& spec, Eigen::Index n, Engine& engine) {
  const Eigen::Index p = spec.p();
  const double M = spec.bound();
  Eigen::MatrixXd X(n, p);
  // Row-major fill keeps each observation's draws contiguous in the stream.
  std::visit(overloaded{
                 [&](const IidUniform&) {
                   std::uniform_real_distribution<double> unif(-M, M);
                   for (Eigen::Index i = 0; i < n; ++i)
                     for (Eigen::Index j = 0; j < p; ++j) X(i, j) = unif(engine);
                 },
                 [&](const IidRademacher&) {
                   for (Eigen::Index i = 0; i < n; ++i)
                     for (Eigen::Index j = 0; j < p; ++j) X(i, j) = M * sign(engine, 0.5);
                 },
                 [&](const EquicorrelatedRademacher& d) {
                   for (Eigen::Index i = 0; i < n; ++i) {
                     const double s = sign(engine, 0.5);
                     for (Eigen::Index j = 0; j < p; ++j) X(i, j) = M * s * sign(engine, d.q);
                   }
                 },
             },
             spec.design());
  return X;
}

Dataset sample_dataset(const ModelSpec& spec, Eigen::Index n, const Stream& stream) {
  if (n < 1) throw std::invalid_argument("sample_dataset: n must be at least 1");
  Engine engine = stream.engine();
  Dataset data;
  data.X = sample_covariates(spec, n, engine);
  data.epsilon.resize(n);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (Eigen::Index i = 0; i < n; ++i) data.epsilon(i) = spec.sigma() * noise(engine);
  data.y = data.X * spec.beta_star() + data.epsilon;
  return data;
}

SecondMomentMatrix second_moment(const ModelSpec& spec) {
  const Eigen::Index p = spec.p();
  const double m2 = spec.bound() * spec.bound();
  Eigen::MatrixXd S = std::visit(
      overloaded{
          [&](const IidUniform&) -> Eigen::MatrixXd { return (m2 / 3.0) * Eigen::MatrixXd::Identity(p, p); },
          [&](const IidRademacher&) -> Eigen::MatrixXd { return m2 * Eigen::MatrixXd::Identity(p, p); },
          [&](const EquicorrelatedRademacher& d) -> Eigen::MatrixXd {
            const double r = 2.0 * d.q - 1.0;
            Eigen::MatrixXd out = Eigen::MatrixXd::Constant(p, p, m2 * r * r);
            out.diagonal().setConstant(m2);
            return out;
          },
      },
      spec.design());
  return SecondMomentMatrix{std::move(S)};
}

Eigen::VectorXd oracle_predictions(const ModelSpec& spec, const Eigen::MatrixXd& X) {
  if (X.cols() != spec.p())
    throw DimensionError("oracle_predictions: X has " + std::to_string(X.cols()) + " columns, expected " +
                         std::to_string(spec.p()));
  return X * spec.beta_star();
}

}  // namespace lassobounds
