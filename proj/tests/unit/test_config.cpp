#include <gtest/gtest.h>

#include "lassobounds/config.hpp"
#include "lassobounds/errors.hpp"

namespace lb = lassobounds;

namespace {

constexpr const char* kMinimal = R"({
  "model": {"p": 10, "beta_star": {"support_size": 3, "value": 2.0}, "sigma": 0.5,
            "design": {"type": "equicorrelated_rademacher", "q": 0.75}, "M": 1.5},
  "n_grid": [10, 20],
  "k_rule": {"type": "multiplier", "c": 1.5},
  "replicates": 4,
  "master_seed": 18446744073709551615
})";

std::string with(const std::string& from, const std::string& to) {
  std::string s = kMinimal;
  const auto pos = s.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST(Config, ParsesAndFillsDefaults) {
  const auto c = lb::parse_config(kMinimal);
  EXPECT_EQ(c.model.p, 10);
  EXPECT_EQ(c.master_seed, 18446744073709551615ULL);
  EXPECT_EQ(c.n_grid, (std::vector<long>{10, 20}));
  EXPECT_FALSE(c.solver.gap_tolerance.has_value());
  EXPECT_EQ(c.solver.algorithm, lb::Algorithm::ProjectedGradient);
  const auto spec = c.model.build();
  EXPECT_EQ(spec.beta_star().lpNorm<1>(), 6.0);
  EXPECT_EQ(spec.beta_star()(3), 0.0);
  EXPECT_DOUBLE_EQ(lb::resolve_K(c.k_rule, spec.beta_star()), 9.0);
}

TEST(Config, RoundTripsThroughJson) {
  const auto a = lb::parse_config(kMinimal);
  const auto b = lb::parse_config(lb::to_json(a));
  EXPECT_EQ(lb::to_json(a), lb::to_json(b));
}

TEST(Config, ExplicitBetaAndFixedK) {
  const auto c = lb::parse_config(with(R"({"support_size": 3, "value": 2.0})", "[1, -2, 0, 0, 0, 0, 0, 0, 0, 0.5]"));
  EXPECT_DOUBLE_EQ(c.model.build().beta_star().lpNorm<1>(), 3.5);
  const auto f = lb::parse_config(with(R"({"type": "multiplier", "c": 1.5})", R"({"type": "fixed", "K": 0.5})"));
  EXPECT_EQ(lb::resolve_K(f.k_rule, f.model.build().beta_star()), 0.5);
}

TEST(Config, RejectsUnknownKeys) {
  EXPECT_THROW(lb::parse_config(with("\"replicates\": 4", "\"replicates\": 4, \"extra\": 1")), lb::ConfigError);
  EXPECT_THROW(lb::parse_config(with("\"sigma\": 0.5", "\"sigma\": 0.5, \"noise\": 1")), lb::ConfigError);
  EXPECT_THROW(lb::parse_config(with("\"q\": 0.75", "\"q\": 0.75, \"rho\": 1")), lb::ConfigError);
}

TEST(Config, RejectsBrokenInvariants) {
  EXPECT_THROW(lb::parse_config(with("[10, 20]", "[20, 10]")), lb::ConfigError);
  EXPECT_THROW(lb::parse_config(with("[10, 20]", "[10, 10]")), lb::ConfigError);
  EXPECT_THROW(lb::parse_config(with("[10, 20]", "[]")), lb::ConfigError);
  EXPECT_THROW(lb::parse_config(with("\"replicates\": 4", "\"replicates\": 0")), lb::ConfigError);
  EXPECT_THROW(lb::parse_config(with("\"c\": 1.5", "\"c\": 0.5")), lb::ConfigError);
  EXPECT_THROW(lb::parse_config(with("\"q\": 0.75", "\"q\": 0.25")), lb::ConfigError);
  EXPECT_THROW(lb::parse_config(with("\"support_size\": 3", "\"support_size\": 11")), lb::ConfigError);
  EXPECT_THROW(lb::parse_config(with("\"M\": 1.5", "\"M\": 0")), lb::ConfigError);
  EXPECT_THROW(lb::parse_config(with("\"master_seed\": 18446744073709551615", "\"master_seed\": -1")),
               lb::ConfigError);
  EXPECT_THROW(lb::parse_config("{not json"), lb::ConfigError);
  EXPECT_THROW(lb::parse_config(with("\"replicates\": 4,", "")), lb::ConfigError);
}

TEST(Config, SolverSection) {
  const auto c = lb::parse_config(with(
      "\"replicates\": 4",
      R"("replicates": 4, "solver": {"gap_tolerance": 1e-6, "max_iterations": 50, "algorithm": "frank_wolfe"})"));
  EXPECT_EQ(*c.solver.gap_tolerance, 1e-6);
  EXPECT_EQ(c.solver.max_iterations, 50);
  EXPECT_EQ(c.solver.algorithm, lb::Algorithm::FrankWolfe);
  EXPECT_THROW(lb::parse_config(with("\"replicates\": 4", R"("replicates": 4, "solver": {"algorithm": "lars"})")),
               lb::ConfigError);
}

TEST(Config, MissingFileIsIoError) {
  EXPECT_THROW(lb::load_config("/nonexistent/config.json"), lb::IoError);
}
