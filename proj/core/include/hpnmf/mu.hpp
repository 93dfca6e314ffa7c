#pragma once

#include "hpnmf/matrix.hpp"
#include "hpnmf/report.hpp"
#include "hpnmf/state.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace hpnmf {

struct SolverConfig {
  int max_iter = 1000;
  double tol = 1e-6;
  Beta beta = Beta::kullback_leibler();
  /// Penalty weight shared by every row in P-MU.
  double fixed_lambda = 0.5;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument when out of range.
  void validate() const;
};

/// General beta multiplicative update of H:
///   H <- H .* (W^T ((WH)^(beta-2) .* X)) ./ (W^T (WH)^(beta-1)).
/// Logs a warning (once per process) when beta lies outside [0, 2].
NonnegMatrix update_h_beta(const NonnegMatrix& X, const NonnegMatrix& W, const NonnegMatrix& H,
                           Beta beta);

/// KL specialization: H <- H .* (W^T (X ./ WH)) ./ (column sums of W).
NonnegMatrix update_h_kl(const NonnegMatrix& X, const NonnegMatrix& W, const NonnegMatrix& H);

/// Penalized KL update of one row of W against fixed H:
///   w_k <- w_k (sum_j H_kj x_j / (wH)_j) / (sum_j H_kj + lambda).
Vector update_w_penalized_row(const VectorRef& w, double lambda, const VectorRef& x_row,
                              const NonnegMatrix& H);

/// Strictly positive initializers, entries uniform on (0, 1].
std::pair<NonnegMatrix, NonnegMatrix> random_initializers(Index n, Index m, Index r,
                                                          std::uint64_t seed);

/// Relative objective change used as the stopping test by every solver.
double relative_change(double previous, double current);

/// Unpenalized multiplicative updates. With beta = 1 the W rows advance
/// through update_w_penalized_row at lambda = 0.
FactorizationState run_mu(const NonnegMatrix& X, const NonnegMatrix& W0, const NonnegMatrix& H0,
                          const SolverConfig& cfg);

/// Penalized multiplicative updates with lambda_i = cfg.fixed_lambda for all
/// rows. Requires beta = 1.
FactorizationState run_pmu(const NonnegMatrix& X, const NonnegMatrix& W0, const NonnegMatrix& H0,
                           const SolverConfig& cfg);

/// Same as run_pmu with an explicit per-row penalty vector.
FactorizationState run_pmu(const NonnegMatrix& X, const NonnegMatrix& W0, const NonnegMatrix& H0,
                           const SolverConfig& cfg, const LambdaVector& lambda);

/// One P-MU run per grid value from the same initializers, in grid order.
std::vector<RunReport> grid_sweep(const NonnegMatrix& X, const NonnegMatrix& W0,
                                  const NonnegMatrix& H0, const SolverConfig& cfg,
                                  const std::vector<double>& grid);

}  // namespace hpnmf
