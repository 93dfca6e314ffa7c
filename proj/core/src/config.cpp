#include "hpnmf/config.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace hpnmf {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!keys.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

void read_benchmark(const json& j, BenchmarkSpec& b, const std::filesystem::path& base_dir) {
  const std::string where = "benchmark";
  reject_unknown(j, where, {"kind", "n", "m", "r", "alpha_H", "seed", "d_signals_path"});
  if (j.contains("kind")) {
    try {
      b.kind = parse_benchmark_kind(j.at("kind").get<std::string>());
    } catch (const std::exception& e) {
      throw ConfigError(where + ".kind: " + e.what());
    }
  }
  read(j, "n", b.n, where);
  read(j, "m", b.m, where);
  read(j, "r", b.r, where);
  read(j, "alpha_H", b.alpha_h, where);
  read(j, "seed", b.seed, where);
  if (j.contains("d_signals_path")) {
    std::filesystem::path p = j.at("d_signals_path").get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    b.d_signals_path = p;
  }
}

void read_solver(const json& j, SolverConfig& s) {
  const std::string where = "solver";
  reject_unknown(j, where, {"max_iter", "tol", "beta", "fixed_lambda"});
  read(j, "max_iter", s.max_iter, where);
  read(j, "tol", s.tol, where);
  read(j, "beta", s.beta.value, where);
  read(j, "fixed_lambda", s.fixed_lambda, where);
}

void read_altbi(const json& j, AltBiConfig& a) {
  const std::string where = "altbi";
  reject_unknown(j, where, {"T", "max_iter", "tol", "lambda_max_factor", "lambda_history_stride"});
  read(j, "T", a.T, where);
  read(j, "max_iter", a.max_iter, where);
  read(j, "tol", a.tol, where);
  read(j, "lambda_max_factor", a.lambda_max_factor, where);
  read(j, "lambda_history_stride", a.lambda_history_stride, where);
}

}  // namespace

Algorithm parse_algorithm(std::string_view s) {
  if (s == "mu") return Algorithm::mu;
  if (s == "pmu") return Algorithm::pmu;
  if (s == "altbi") return Algorithm::altbi;
  if (s == "grid") return Algorithm::grid;
  throw std::invalid_argument("unknown algorithm '" + std::string(s) +
                              "' (expected mu, pmu, altbi or grid)");
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::mu: return "mu";
    case Algorithm::pmu: return "pmu";
    case Algorithm::altbi: return "altbi";
    case Algorithm::grid: return "grid";
  }
  return "?";
}

std::vector<Algorithm> parse_algorithm_list(std::string_view s) {
  std::vector<Algorithm> out;
  while (!s.empty()) {
    const auto comma = s.find(',');
    auto item = s.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) out.push_back(parse_algorithm(item));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  if (out.empty()) throw std::invalid_argument("empty algorithm list");
  return out;
}

void ExperimentConfig::validate() const {
  try {
    benchmark.validate();
    solver.validate();
    altbi.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (algorithms.empty()) throw ConfigError("algorithms: at least one algorithm required");
  if (mc_runs < 1) throw ConfigError("mc_runs must be >= 1");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (!(sparsity_tol >= 0.0)) throw ConfigError("sparsity_tol must be >= 0");
  const bool uses_grid = std::find(algorithms.begin(), algorithms.end(), Algorithm::grid) != algorithms.end();
  if (uses_grid && grid.empty()) throw ConfigError("grid: required when algorithms include grid");
  for (double g : grid) {
    if (!(g >= 0.0)) throw ConfigError("grid values must be >= 0");
  }
  const bool penalized = std::any_of(algorithms.begin(), algorithms.end(), [](Algorithm a) {
    return a != Algorithm::mu;
  });
  if (penalized && !solver.beta.is_kl()) {
    throw ConfigError("solver.beta must be 1 when pmu, altbi or grid is requested");
  }
}

ExperimentConfig desk_profile() {
  ExperimentConfig cfg;
  cfg.benchmark = BenchmarkSpec{BenchmarkKind::A, 200, 50, 4, 0.0, 1, std::nullopt};
  cfg.mc_runs = 10;
  cfg.base_seed = 100;
  return cfg;
}

ExperimentConfig full_profile() {
  ExperimentConfig cfg = desk_profile();
  cfg.benchmark.n = 1000;
  cfg.mc_runs = 30;
  return cfg;
}

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(root, "config",
                 {"benchmark", "algorithms", "mc_runs", "solver", "altbi", "grid", "output_dir",
                  "base_seed", "workers", "sparsity_tol", "save_factors"});

  ExperimentConfig cfg = desk_profile();
  if (root.contains("benchmark")) read_benchmark(root.at("benchmark"), cfg.benchmark, base_dir);
  if (root.contains("algorithms")) {
    cfg.algorithms.clear();
    const auto& list = root.at("algorithms");
    if (!list.is_array()) throw ConfigError("algorithms: expected an array of names");
    for (const auto& item : list) {
      try {
        cfg.algorithms.push_back(parse_algorithm(item.get<std::string>()));
      } catch (const std::exception& e) {
        throw ConfigError(std::string("algorithms: ") + e.what());
      }
    }
  }
  read(root, "mc_runs", cfg.mc_runs, "config");
  if (root.contains("solver")) read_solver(root.at("solver"), cfg.solver);
  if (root.contains("altbi")) read_altbi(root.at("altbi"), cfg.altbi);
  read(root, "grid", cfg.grid, "config");
  if (root.contains("output_dir")) cfg.output_dir = root.at("output_dir").get<std::string>();
  read(root, "base_seed", cfg.base_seed, "config");
  read(root, "workers", cfg.workers, "config");
  read(root, "sparsity_tol", cfg.sparsity_tol, "config");
  read(root, "save_factors", cfg.save_factors, "config");
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str(), path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string dump_config(const ExperimentConfig& cfg) {
  json j;
  j["benchmark"] = {{"kind", to_string(cfg.benchmark.kind)},
                    {"n", cfg.benchmark.n},
                    {"m", cfg.benchmark.m},
                    {"r", cfg.benchmark.r},
                    {"alpha_H", cfg.benchmark.alpha_h},
                    {"seed", cfg.benchmark.seed}};
  if (cfg.benchmark.d_signals_path) {
    j["benchmark"]["d_signals_path"] = cfg.benchmark.d_signals_path->string();
  }
  j["algorithms"] = json::array();
  for (Algorithm a : cfg.algorithms) j["algorithms"].push_back(to_string(a));
  j["mc_runs"] = cfg.mc_runs;
  j["solver"] = {{"max_iter", cfg.solver.max_iter},
                 {"tol", cfg.solver.tol},
                 {"beta", cfg.solver.beta.value},
                 {"fixed_lambda", cfg.solver.fixed_lambda}};
  j["altbi"] = {{"T", cfg.altbi.T},
                {"max_iter", cfg.altbi.max_iter},
                {"tol", cfg.altbi.tol},
                {"lambda_max_factor", cfg.altbi.lambda_max_factor},
                {"lambda_history_stride", cfg.altbi.lambda_history_stride}};
  j["grid"] = cfg.grid;
  j["output_dir"] = cfg.output_dir.string();
  j["base_seed"] = cfg.base_seed;
  j["workers"] = cfg.workers;
  j["sparsity_tol"] = cfg.sparsity_tol;
  j["save_factors"] = cfg.save_factors;
  return j.dump(2) + "\n";
}

}  // namespace hpnmf
