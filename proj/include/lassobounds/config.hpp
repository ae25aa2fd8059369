#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "lassobounds/model.hpp"
#include "lassobounds/solver.hpp"

namespace lassobounds {

/// beta*_j = value for the first support_size coordinates, zero elsewhere.
struct SparseBeta {
  long support_size = 0;
  double value = 0.0;
};

using BetaStarSpec = std::variant<SparseBeta, Eigen::VectorXd>;

struct OracleK {};
struct MultiplierK {
  double c = 1.0;
};
struct FixedK {
  double K = 0.0;
};

/// How the l1 budget is chosen from beta*. Oracle and Multiplier always
/// satisfy ||beta*||_1 <= K; Fixed may deliberately violate it.
using KRule = std::variant<OracleK, MultiplierK, FixedK>;

double resolve_K(const KRule& rule, const Eigen::VectorXd& beta_star);

struct ModelParams {
  long p = 1;
  BetaStarSpec beta_star = SparseBeta{};
  double sigma = 1.0;
  CovariateDesign design = IidRademacher{};
  double M = 1.0;

  /// Throws ConfigError if the pieces are inconsistent.
  [[nodiscard]] ModelSpec build() const;
  /// Copy with a different p; only valid for SparseBeta.
  [[nodiscard]] ModelParams with_p(long new_p) const;
};

struct ExperimentConfig {
  ModelParams model;
  std::vector<long> n_grid;
  KRule k_rule = OracleK{};
  long replicates = 1;
  std::uint64_t master_seed = 0;
  SolverOptions solver;
  std::filesystem::path output_dir = "output";
};

/// Parses a JSON document. Unknown keys, missing required keys and values
/// that break an invariant all raise ConfigError.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical JSON rendering (round-trips through parse_config).
std::string to_json(const ExperimentConfig& config);

/// Throws ConfigError if an invariant is broken.
void validate(const ExperimentConfig& config);

}  // namespace lassobounds
