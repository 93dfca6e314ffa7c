#pragma once

#include "hpnmf/altbi.hpp"
#include "hpnmf/generators.hpp"
#include "hpnmf/mu.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hpnmf {

enum class Algorithm { mu, pmu, altbi, grid };

Algorithm parse_algorithm(std::string_view s);
std::string to_string(Algorithm a);

/// Parses a comma-separated list such as "mu,altbi".
std::vector<Algorithm> parse_algorithm_list(std::string_view s);

/// Invalid or unreadable experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One Monte-Carlo campaign. Run k draws its initializers from seed
/// base_seed + k and shares them across all algorithms.
struct ExperimentConfig {
  BenchmarkSpec benchmark;
  std::vector<Algorithm> algorithms{Algorithm::mu, Algorithm::pmu, Algorithm::altbi};
  int mc_runs = 30;
  SolverConfig solver;
  AltBiConfig altbi;
  std::vector<double> grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::filesystem::path output_dir = "results";
  std::uint64_t base_seed = 0;
  /// Concurrent Monte-Carlo runs.
  int workers = 1;
  double sparsity_tol = 1e-6;
  /// Write the final W and H of every run under output_dir/factors/.
  bool save_factors = false;

  /// Throws ConfigError.
  void validate() const;
};

/// Benchmark A, n = 200, m = 50, r = 4, 10 runs.
ExperimentConfig desk_profile();
/// Benchmark A, n = 1000, m = 50, r = 4, 30 runs.
ExperimentConfig full_profile();

/// JSON object whose keys mirror the ExperimentConfig fields; // and /* */
/// comments are allowed, unknown keys are rejected. Keys left out keep the
/// desk-profile defaults. Relative d_signals_path values are resolved
/// against base_dir.
ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical JSON form (no comments), accepted by parse_config.
std::string dump_config(const ExperimentConfig& cfg);

}  // namespace hpnmf
