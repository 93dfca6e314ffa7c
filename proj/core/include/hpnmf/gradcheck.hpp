#pragma once

#include <cstdint>

namespace hpnmf {

struct GradcheckOptions {
  int instances = 100;
  std::uint64_t seed = 0;
  int max_r = 5;
  int max_m = 10;
  int max_T = 4;
  double lambda_lo = 0.1;
  double lambda_hi = 2.0;
  /// Central-difference step in lambda and in each w_k.
  double step = 1e-6;
};

/// Largest relative deviations seen over the random instances. Deviations
/// are |a - b| / max(|a|, |b|) for scalars and max-abs normwise for vectors
/// and matrices. The Jacobian A is scaled by at least max_k S_k / den_k,
/// since it is identically zero for r = 1.
struct GradcheckReport {
  int instances = 0;
  double fmd_vs_fd = 0.0;
  double fmd_vs_rmd = 0.0;
  double jacobian_a = 0.0;
  double jacobian_b = 0.0;
  double outer_g = 0.0;
};

/// Draws random (w0, x, H, lambda, T) instances with w0, x and H entrywise
/// in [0.1, 1] and compares the forward-mode hypergradient and the
/// closed-form Jacobians against reverse mode and finite differences.
GradcheckReport run_gradcheck(const GradcheckOptions& opts);

/// |a - b| / max(|a|, |b|); 0 when both are 0.
double relative_deviation(double a, double b);

}  // namespace hpnmf
