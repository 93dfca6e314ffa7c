#pragma once

#include "hpnmf/matrix.hpp"

#include <cstddef>
#include <vector>

namespace hpnmf {

/// Factors, penalty weights and per-iteration traces of one solver run.
///
/// Trace entry 0 holds the value at the initializers; entry k the value
/// after outer iteration k.
struct FactorizationState {
  NonnegMatrix W;
  NonnegMatrix H;
  LambdaVector lambda;
  int iter = 0;
  bool converged = false;

  /// Penalized objective with the lambda in force after each iteration.
  std::vector<double> objective_trace;
  /// Unpenalized divergence (the response, summed over rows).
  std::vector<double> response_trace;

  // Filled by the bi-level solver only.
  std::vector<double> lambda_l1_trace;
  std::vector<Vector> lambda_history;
  int lambda_history_stride = 1;
  std::size_t lambda_saturations = 0;
};

}  // namespace hpnmf
