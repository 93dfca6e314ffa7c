#pragma once

#include "hpnmf/matrix.hpp"
#include "hpnmf/state.hpp"

#include <cstdint>
#include <optional>

namespace hpnmf {

struct AltBiConfig {
  /// Inner W steps per outer iteration (bunch length).
  int T = 4;
  int max_iter = 1000;
  double tol = 1e-6;
  /// lambda_i is projected onto [0, lambda_max_factor * lambda_i^(0)].
  double lambda_max_factor = 10.0;
  std::uint64_t seed = 0;

  /// Replaces init_lambda() when set.
  std::optional<LambdaVector> initial_lambda;
  /// false freezes lambda at its initial value.
  bool update_lambda = true;
  /// Forces every hypergradient to 0 (lambda steps become no-ops).
  bool zero_hypergradient = false;
  /// Keep every k-th lambda snapshot; 0 picks 1 for n <= 1000, else 10.
  int lambda_history_stride = 0;

  void validate() const;
};

/// lambda_i^(0) = E_i(W0, H0) / (10 ||W0_i||_1), balancing the divergence and
/// penalty terms of each row at the start. Throws on a zero-norm row; warns
/// when the result contains zeros.
LambdaVector init_lambda(const NonnegMatrix& X, const NonnegMatrix& W0, const NonnegMatrix& H0);

/// Projected steepest descent with step 1/s:
///   clip(lambda - grads / s, 0, lambda_max).
LambdaVector lambda_step(const LambdaVector& lambda, const VectorRef& grads, int s,
                         const LambdaVector& lambda_max);

/// Alternates a full KL update of H with, for every row of W, a bunch of T
/// penalized row updates carrying a forward-mode tangent, then one projected
/// hypergradient step on lambda. Stops when the relative change of the
/// penalized objective drops below tol or after max_iter outer iterations.
FactorizationState run_altbi(const NonnegMatrix& X, const NonnegMatrix& W0, const NonnegMatrix& H0,
                             const AltBiConfig& cfg);

}  // namespace hpnmf
