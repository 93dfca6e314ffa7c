#pragma once

#include "hpnmf/matrix.hpp"

#include <vector>

namespace hpnmf {

/// SIR values are capped here so exact recoveries stay finite.
inline constexpr double kSirCapDb = 300.0;
inline constexpr double kDefaultSparsityTol = 1e-6;

/// Result of matching estimated components to ground-truth components.
struct SirReport {
  /// Indexed by ground-truth component.
  Vector per_component_db;
  double mean_db = 0.0;
  /// assignment[i] = estimated component matched to true component i.
  std::vector<Index> assignment;
  /// Least-squares scale applied to each matched estimate.
  Vector scales;
};

/// 10 log10(||s||^2 / ||s - c s_hat||^2) with c the least-squares scale of
/// s_hat onto s, capped at kSirCapDb. Throws std::invalid_argument when s is 0.
double sir_db(const VectorRef& true_sig, const VectorRef& est_sig);

/// Optimal one-to-one matching of the columns of est to the columns of truth,
/// maximizing the total SIR. Exact for any r (subset dynamic programming).
SirReport match_components(const NonnegMatrix& truth, const NonnegMatrix& est);

/// SIR of each column of truth against a fixed, already chosen column of est.
SirReport score_with_assignment(const NonnegMatrix& truth, const NonnegMatrix& est,
                                const std::vector<Index>& assignment);

/// Percentage of entries <= tol.
double sparsity(const NonnegMatrix& A, double tol = kDefaultSparsityTol);

/// Gradient of D_1(X | WH) + sum_i lambda_i ||W_i||_1 with respect to W:
///   (1 - X ./ WH) H^T + lambda 1^T.
Matrix penalized_gradient_w(const NonnegMatrix& X, const NonnegMatrix& W, const NonnegMatrix& H,
                            const LambdaVector& lambda);

/// max |W .* grad_W F|, the complementarity part of the KKT conditions.
double kkt_residual(const NonnegMatrix& X, const NonnegMatrix& W, const NonnegMatrix& H,
                    const LambdaVector& lambda);

/// Location and spread of a sample.
struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Quartiles by linear interpolation between order statistics. Throws on an
/// empty sample.
Summary summarize(std::vector<double> values);

}  // namespace hpnmf
