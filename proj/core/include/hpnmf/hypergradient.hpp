#pragma once

// Hypergradients of the per-row response f(lambda) = E(w^(T)(lambda)), where
// w^(t) = Phi(w^(t-1), lambda) is the penalized KL row update run for T
// steps against a fixed H. Forward mode is the production path; reverse mode
// and central differences exist to cross-check it.

#include "hpnmf/matrix.hpp"
#include "hpnmf/row_kernel.hpp"

#include <functional>
#include <vector>

namespace hpnmf {

/// State of one row's inner dynamics within a bunch.
struct RowDynamics {
  Vector w;
  /// Tangent dw/dlambda; zero at the start of every bunch.
  Vector Z;
  double lambda = 0.0;
  int t = 0;
  int T = 4;

  static RowDynamics start(Vector w0, double lambda, int T = 4);
};

/// Jacobian blocks of one step and the outer gradient.
struct HypergradPieces {
  /// A(k, h) = dPhi_k / dw_h.
  Matrix A;
  /// dPhi / dlambda.
  Vector B;
  /// dE / dw.
  Vector G;
};

/// Everything reverse mode needs: the forward trajectory and the running
/// adjoint and accumulator.
struct RmdState {
  std::vector<Vector> w_history;
  Vector alpha;
  double h = 0.0;
};

struct FmdResult {
  double grad = 0.0;
  /// w^(T).
  Vector w;
  /// Z_T.
  Vector Z;
};

/// One application of Phi: w advances, t increments, Z is left alone.
RowDynamics phi_step(const RowDynamics& dyn, const VectorRef& x_row, const NonnegMatrix& H);

/// One forward-mode step: Z <- A Z + B evaluated at the current w, then
/// w <- Phi(w). The new w is bitwise equal to phi_step's.
RowDynamics tangent_step(const RowDynamics& dyn, const VectorRef& x_row, const NonnegMatrix& H);

/// Same as tangent_step against a prebuilt kernel (no per-call H sums).
void tangent_step_inplace(const RowKernel& kernel, const VectorRef& x_row, RowDynamics& dyn);

Matrix jacobian_A(const VectorRef& w, double lambda, const VectorRef& x_row, const NonnegMatrix& H);
Vector jacobian_B(const VectorRef& w, double lambda, const VectorRef& x_row, const NonnegMatrix& H);

/// Gradient of the row error: G_k = sum_j H_kj (1 - x_j / (w^T H)_j).
Vector outer_gradient_G(const VectorRef& w, const VectorRef& x_row, const NonnegMatrix& H);

HypergradPieces hypergrad_pieces(const VectorRef& w, double lambda, const VectorRef& x_row,
                                 const NonnegMatrix& H);

/// Forward mode over T steps from w0 with Z_0 = 0. Returns G(w^(T)) . Z_T.
FmdResult fmd_hypergradient(const VectorRef& w0, double lambda, const VectorRef& x_row,
                            const NonnegMatrix& H, int T);

/// fmd_hypergradient against a prebuilt kernel.
FmdResult fmd_hypergradient(const RowKernel& kernel, const VectorRef& w0, double lambda,
                            const VectorRef& x_row, int T);

/// Forward pass storing w^(0..T) with the adjoint seeded at alpha_T = G(w^(T)).
RmdState rmd_forward(const VectorRef& w0, double lambda, const VectorRef& x_row,
                     const NonnegMatrix& H, int T);

/// Reverse mode: alpha_{t-1} = alpha_t A_t, h_{t-1} = h_t + alpha_t B_t;
/// returns h_0.
double rmd_hypergradient(const VectorRef& w0, double lambda, const VectorRef& x_row,
                         const NonnegMatrix& H, int T);

/// (f(lambda + step) - f(lambda - step)) / (2 step).
double central_difference(const std::function<double(double)>& f, double at, double step);

/// Central difference of lambda -> row_error(w^(T)(lambda)). Requires
/// lambda - step >= 0.
double fd_hypergradient_oracle(const VectorRef& w0, double lambda, const VectorRef& x_row,
                               const NonnegMatrix& H, int T, double step);

}  // namespace hpnmf
