#pragma once

#include "hpnmf/matrix.hpp"

namespace hpnmf {

enum class Clamping { enabled, disabled };

/// Elementwise beta-divergence d_beta(x | y).
///
/// With clamping enabled (the default) y is raised to kEps before use; with
/// clamping disabled a non-positive y throws std::domain_error. The KL case
/// uses 0 log 0 = 0. For beta <= 0 and x = 0 the divergence is +inf.
double beta_div_elem(double x, double y, Beta beta, Clamping clamping = Clamping::enabled);

/// D_beta(X | WH), summed over all entries.
double total_divergence(const NonnegMatrix& X, const NonnegMatrix& W, const NonnegMatrix& H,
                        Beta beta = Beta::kullback_leibler());

/// D_1(X | WH) + sum_i lambda_i * ||W_i||_1.
double penalized_objective(const NonnegMatrix& X, const NonnegMatrix& W, const NonnegMatrix& H,
                           const LambdaVector& lambda);

/// Reconstruction of one data row: (w^T H)_j, clamped below at kEps.
Vector reconstruct_row(const VectorRef& w, const NonnegMatrix& H);

/// Outer (error) objective of one row: sum_j d_1(x_j, (w^T H)_j).
double row_error(const VectorRef& w, const VectorRef& x_row, const NonnegMatrix& H);

/// Inner (loss) objective of one row: row_error + lambda * ||w||_1.
double row_loss(const VectorRef& w, double lambda, const VectorRef& x_row, const NonnegMatrix& H);

}  // namespace hpnmf
