#pragma once

#include "hpnmf/config.hpp"
#include "hpnmf/generators.hpp"
#include "hpnmf/metrics.hpp"
#include "hpnmf/report.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace hpnmf {

/// Per-algorithm statistics over the successful runs.
struct AlgorithmAggregate {
  std::string algorithm;
  std::size_t runs_ok = 0;
  std::size_t runs_failed = 0;
  /// Populated only when runs_ok > 0.
  Summary sir_w;
  Summary sir_h;
  Summary sparsity_w;
  Summary sparsity_h;
  Summary iterations;
};

struct ExperimentResult {
  GroundTruth truth;
  /// Ordered by run id, then by the configured algorithm order (grid values
  /// expand in grid order).
  std::vector<RunReport> reports;
  std::vector<AlgorithmAggregate> aggregates;

  /// Algorithms for which every run failed.
  std::vector<std::string> fully_failed() const;
};

/// Label used in reports and CSV files ("mu", "pmu", "altbi", "grid:<lambda>").
std::string algorithm_label(Algorithm a, double grid_lambda = 0.0);

/// Fills the SIR fields of a successful report: W columns are matched to the
/// true columns, H rows are scored under the same assignment.
void score(RunReport& report, const GroundTruth& truth);

/// Runs every configured algorithm on mc_runs initializer draws. Individual
/// run failures are recorded in their reports and excluded from aggregates.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Same campaign against an already generated ground truth.
ExperimentResult run_experiment(const ExperimentConfig& cfg, GroundTruth truth);

std::vector<AlgorithmAggregate> aggregate(const std::vector<RunReport>& reports);

}  // namespace hpnmf
