#pragma once

#include "hpnmf/matrix.hpp"

namespace hpnmf {

/// Per-row quantities of the penalized KL W-update against a fixed H.
///
/// Every code path that advances a row of W (the baseline solvers, the
/// bi-level dynamics, the hypergradient oracles) goes through step(), so
/// their trajectories agree bit for bit.
class RowKernel {
 public:
  explicit RowKernel(const Matrix& H);

  const Matrix& H() const noexcept { return H_; }
  /// sum_j H_kj for each k.
  const Vector& row_sums() const noexcept { return hsum_; }

  /// y_j = max(sum_k w_k H_kj, eps).
  Vector reconstruct(const VectorRef& w) const;

  /// S_k = sum_j H_kj x_j / y_j.
  Vector weighted_ratio(const VectorRef& x, const Vector& y) const;

  /// max(sum_j H_kj + lambda, eps) for each k.
  Vector denominator(double lambda) const;

  /// w .* S ./ den, the tail of step() given precomputed S and den.
  static Vector advance(const VectorRef& w, const Vector& s, const Vector& den);

  /// w_k * S_k / (sum_j H_kj + lambda).
  Vector step(const VectorRef& w, double lambda, const VectorRef& x) const;

 private:
  const Matrix& H_;
  Vector hsum_;
};

}  // namespace hpnmf
