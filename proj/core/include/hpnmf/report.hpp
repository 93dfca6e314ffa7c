#pragma once

#include "hpnmf/metrics.hpp"
#include "hpnmf/state.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hpnmf {

/// Outcome of one algorithm on one Monte-Carlo run.
struct RunReport {
  std::string algorithm;
  std::size_t run_id = 0;
  std::uint64_t seed = 0;
  /// Penalty for fixed-lambda runs (pmu, grid).
  std::optional<double> fixed_lambda;

  int iterations = 0;
  bool converged = false;
  double wall_seconds = 0.0;
  double final_objective = 0.0;
  double final_response = 0.0;

  std::optional<SirReport> sir_w;
  std::optional<SirReport> sir_h;
  double sparsity_w = 0.0;
  double sparsity_h = 0.0;

  /// Bi-level runs only.
  std::optional<Vector> lambda_init;
  std::optional<Vector> lambda_final;

  std::vector<double> objective_trace;
  std::vector<double> response_trace;

  /// Empty unless the run failed.
  std::string error;

  /// Final factors, kept in memory for scoring; never serialized.
  std::optional<FactorizationState> state;

  bool ok() const noexcept { return error.empty(); }
};

/// Report skeleton from a finished solver state: traces, final values and
/// factor sparsities at sparsity_tol.
RunReport make_report(std::string algorithm, FactorizationState state,
                      double sparsity_tol = kDefaultSparsityTol);

}  // namespace hpnmf
