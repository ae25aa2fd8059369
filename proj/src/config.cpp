#include "lassobounds/config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "lassobounds/errors.hpp"

namespace lassobounds {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

const json& required(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(where + ": missing required key '" + key + "'");
  return *it;
}

template <class T>
T get_as(const json& value, const std::string& where) {
  try {
    return value.get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

double get_number(const json& value, const std::string& where) {
  if (!value.is_number()) throw ConfigError(where + ": expected a number");
  return value.get<double>();
}

long get_integer(const json& value, const std::string& where) {
  if (!value.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return value.get<long>();
}

CovariateDesign parse_design(const json& j) {
  const std::string where = "model.design";
  const auto type = get_as<std::string>(required(j, "type", where), where + ".type");
  if (type == "iid_uniform") {
    reject_unknown(j, {"type"}, where);
    return IidUniform{};
  }
  if (type == "iid_rademacher") {
    reject_unknown(j, {"type"}, where);
    return IidRademacher{};
  }
  if (type == "equicorrelated_rademacher") {
    reject_unknown(j, {"type", "q"}, where);
    return EquicorrelatedRademacher{get_number(required(j, "q", where), where + ".q")};
  }
  throw ConfigError(where + ": unknown design type '" + type + "'");
}

json design_to_json(const CovariateDesign& design) {
  if (std::holds_alternative<IidUniform>(design)) return {{"type", "iid_uniform"}};
  if (std::holds_alternative<IidRademacher>(design)) return {{"type", "iid_rademacher"}};
  return {{"type", "equicorrelated_rademacher"}, {"q", std::get<EquicorrelatedRademacher>(design).q}};
}

BetaStarSpec parse_beta(const json& j) {
  const std::string where = "model.beta_star";
  if (j.is_array()) {
    Eigen::VectorXd beta(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) beta(static_cast<Eigen::Index>(i)) = get_number(j[i], where);
    return beta;
  }
  reject_unknown(j, {"support_size", "value"}, where);
  return SparseBeta{get_integer(required(j, "support_size", where), where + ".support_size"),
                    get_number(required(j, "value", where), where + ".value")};
}

KRule parse_k_rule(const json& j) {
  const std::string where = "k_rule";
  const auto type = get_as<std::string>(required(j, "type", where), where + ".type");
  if (type == "oracle") {
    reject_unknown(j, {"type"}, where);
    return OracleK{};
  }
  if (type == "multiplier") {
    reject_unknown(j, {"type", "c"}, where);
    return MultiplierK{get_number(required(j, "c", where), where + ".c")};
  }
  if (type == "fixed") {
    reject_unknown(j, {"type", "K"}, where);
    return FixedK{get_number(required(j, "K", where), where + ".K")};
  }
  throw ConfigError(where + ": unknown rule '" + type + "'");
}

SolverOptions parse_solver(const json& j) {
  const std::string where = "solver";
  reject_unknown(j, {"gap_tolerance", "max_iterations", "algorithm"}, where);
  SolverOptions opts;
  if (auto it = j.find("gap_tolerance"); it != j.end() && !it->is_null())
    opts.gap_tolerance = get_number(*it, where + ".gap_tolerance");
  if (auto it = j.find("max_iterations"); it != j.end())
    opts.max_iterations = get_integer(*it, where + ".max_iterations");
  if (auto it = j.find("algorithm"); it != j.end()) {
    try {
      opts.algorithm = algorithm_from_string(get_as<std::string>(*it, where + ".algorithm"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  return opts;
}

}  // namespace

double resolve_K(const KRule& rule, const Eigen::VectorXd& beta_star) {
  const double l1 = beta_star.lpNorm<1>();
  if (std::holds_alternative<OracleK>(rule)) return l1;
  if (const auto* m = std::get_if<MultiplierK>(&rule)) return m->c * l1;
  return std::get<FixedK>(rule).K;
}

ModelSpec ModelParams::build() const {
  Eigen::VectorXd beta;
  if (const auto* sparse = std::get_if<SparseBeta>(&beta_star)) {
    if (sparse->support_size < 0 || sparse->support_size > p)
      throw ConfigError("model.beta_star: support_size must lie in [0, p]");
    beta = Eigen::VectorXd::Zero(p);
    beta.head(sparse->support_size).setConstant(sparse->value);
  } else {
    beta = std::get<Eigen::VectorXd>(beta_star);
    if (beta.size() != p) throw ConfigError("model.beta_star: explicit vector length differs from p");
  }
  try {
    return ModelSpec(std::move(beta), sigma, design, M);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

ModelParams ModelParams::with_p(long new_p) const {
  if (!std::holds_alternative<SparseBeta>(beta_star))
    throw ConfigError("changing p requires beta_star given as {support_size, value}");
  ModelParams out = *this;
  out.p = new_p;
  return out;
}

void validate(const ExperimentConfig& config) {
  if (config.model.p < 1) throw ConfigError("model.p must be >= 1");
  const ModelSpec spec = config.model.build();
  if (config.n_grid.empty()) throw ConfigError("n_grid must be nonempty");
  for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
    if (config.n_grid[i] < 1) throw ConfigError("n_grid entries must be >= 1");
    if (i > 0 && config.n_grid[i] <= config.n_grid[i - 1]) throw ConfigError("n_grid must be strictly increasing");
  }
  if (config.replicates < 1) throw ConfigError("replicates must be >= 1");
  if (const auto* m = std::get_if<MultiplierK>(&config.k_rule); m && !(m->c >= 1.0))
    throw ConfigError("k_rule.c must be >= 1");
  if (const auto* f = std::get_if<FixedK>(&config.k_rule); f && !(f->K >= 0.0))
    throw ConfigError("k_rule.K must be >= 0");
  if (config.solver.gap_tolerance && !(*config.solver.gap_tolerance > 0.0))
    throw ConfigError("solver.gap_tolerance must be > 0");
  if (config.solver.max_iterations < 1) throw ConfigError("solver.max_iterations must be >= 1");
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(root, {"model", "n_grid", "k_rule", "replicates", "master_seed", "solver", "output_dir"}, "config");

  ExperimentConfig config;
  const json& model = required(root, "model", "config");
  reject_unknown(model, {"p", "beta_star", "sigma", "design", "M"}, "model");
  config.model.p = get_integer(required(model, "p", "model"), "model.p");
  config.model.beta_star = parse_beta(required(model, "beta_star", "model"));
  config.model.sigma = get_number(required(model, "sigma", "model"), "model.sigma");
  config.model.design = parse_design(required(model, "design", "model"));
  config.model.M = get_number(required(model, "M", "model"), "model.M");

  const json& grid = required(root, "n_grid", "config");
  if (!grid.is_array()) throw ConfigError("n_grid: expected an array");
  for (const auto& v : grid) config.n_grid.push_back(get_integer(v, "n_grid"));

  config.k_rule = parse_k_rule(required(root, "k_rule", "config"));
  config.replicates = get_integer(required(root, "replicates", "config"), "replicates");
  const json& seed = required(root, "master_seed", "config");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0))
    throw ConfigError("master_seed: expected a nonnegative integer");
  config.master_seed = seed.get<std::uint64_t>();
  if (auto it = root.find("solver"); it != root.end()) config.solver = parse_solver(*it);
  if (auto it = root.find("output_dir"); it != root.end())
    config.output_dir = get_as<std::string>(*it, "output_dir");

  validate(config);
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string to_json(const ExperimentConfig& config) {
  json model;
  model["p"] = config.model.p;
  if (const auto* sparse = std::get_if<SparseBeta>(&config.model.beta_star)) {
    model["beta_star"] = {{"support_size", sparse->support_size}, {"value", sparse->value}};
  } else {
    const auto& v = std::get<Eigen::VectorXd>(config.model.beta_star);
    model["beta_star"] = std::vector<double>(v.data(), v.data() + v.size());
  }
  model["sigma"] = config.model.sigma;
  model["design"] = design_to_json(config.model.design);
  model["M"] = config.model.M;

  json k_rule;
  if (std::holds_alternative<OracleK>(config.k_rule)) {
    k_rule = {{"type", "oracle"}};
  } else if (const auto* m = std::get_if<MultiplierK>(&config.k_rule)) {
    k_rule = {{"type", "multiplier"}, {"c", m->c}};
  } else {
    k_rule = {{"type", "fixed"}, {"K", std::get<FixedK>(config.k_rule).K}};
  }

  json solver;
  solver["gap_tolerance"] = config.solver.gap_tolerance ? json(*config.solver.gap_tolerance) : json(nullptr);
  solver["max_iterations"] = config.solver.max_iterations;
  solver["algorithm"] = std::string(to_string(config.solver.algorithm));

  json root;
  root["model"] = model;
  root["n_grid"] = config.n_grid;
  root["k_rule"] = k_rule;
  root["replicates"] = config.replicates;
  root["master_seed"] = config.master_seed;
  root["solver"] = solver;
  root["output_dir"] = config.output_dir.string();
  return root.dump(2);
}

}  // namespace lassobounds
