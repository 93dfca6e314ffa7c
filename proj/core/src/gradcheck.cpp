#include "hpnmf/gradcheck.hpp"

#include "hpnmf/divergence.hpp"
#include "hpnmf/hypergradient.hpp"
#include "hpnmf/rng.hpp"
#include "hpnmf/row_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hpnmf {

namespace {

Matrix draw(Rng& rng, Index rows, Index cols) {
  Matrix M(rows, cols);
  for (Index k = 0; k < M.size(); ++k) M.data()[k] = rng.uniform(0.1, 1.0);
  return M;
}

double normwise(const Matrix& a, const Matrix& b, double floor = 0.0) {
  const double scale = std::max({a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff(), floor});
  if (scale == 0.0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

double relative_deviation(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

GradcheckReport run_gradcheck(const GradcheckOptions& opts) {
  if (opts.instances < 1 || opts.max_r < 1 || opts.max_m < 1 || opts.max_T < 1) {
    throw std::invalid_argument("gradcheck: counts and sizes must be >= 1");
  }
  if (!(opts.lambda_lo - opts.step >= 0.0) || !(opts.lambda_hi >= opts.lambda_lo)) {
    throw std::invalid_argument("gradcheck: need step <= lambda_lo <= lambda_hi");
  }
  Rng rng(opts.seed);
  GradcheckReport rep;
  for (int n = 0; n < opts.instances; ++n) {
    const auto r = static_cast<Index>(1 + rng.index(static_cast<std::uint64_t>(opts.max_r)));
    const auto m = static_cast<Index>(1 + rng.index(static_cast<std::uint64_t>(opts.max_m)));
    const int T = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(opts.max_T)));
    const double lambda = rng.uniform(opts.lambda_lo, opts.lambda_hi);
    const NonnegMatrix H(draw(rng, r, m));
    const Vector w = draw(rng, r, 1).col(0);
    const Vector x = draw(rng, m, 1).col(0);

    const double fmd = fmd_hypergradient(w, lambda, x, H, T).grad;
    const double rmd = rmd_hypergradient(w, lambda, x, H, T);
    const double fd = fd_hypergradient_oracle(w, lambda, x, H, T, opts.step);
    rep.fmd_vs_fd = std::max(rep.fmd_vs_fd, relative_deviation(fmd, fd));
    rep.fmd_vs_rmd = std::max(rep.fmd_vs_rmd, relative_deviation(fmd, rmd));

    const RowKernel kernel(H.values());
    Matrix A_fd(r, r);
    Vector G_fd(r);
    for (Index h = 0; h < r; ++h) {
      const double dh = opts.step * w[h];
      Vector wp = w;
      Vector wm = w;
      wp[h] += dh;
      wm[h] -= dh;
      A_fd.col(h) = (kernel.step(wp, lambda, x) - kernel.step(wm, lambda, x)) / (2.0 * dh);
      G_fd[h] = (row_error(wp, x, H) - row_error(wm, x, H)) / (2.0 * dh);
    }
    const double dl = opts.step * lambda;
    const Vector B_fd =
        (kernel.step(w, lambda + dl, x) - kernel.step(w, lambda - dl, x)) / (2.0 * dl);

    // For r = 1 the update does not depend on w and A vanishes; its entries
    // are measured against the size of the diagonal term S_k / den_k.
    const Vector s = kernel.weighted_ratio(x, kernel.reconstruct(w));
    const double a_scale = s.cwiseQuotient(kernel.denominator(lambda)).maxCoeff();
    rep.jacobian_a = std::max(rep.jacobian_a, normwise(jacobian_A(w, lambda, x, H), A_fd, a_scale));
    rep.jacobian_b = std::max(rep.jacobian_b, normwise(jacobian_B(w, lambda, x, H), B_fd));
    rep.outer_g = std::max(rep.outer_g, normwise(outer_gradient_G(w, x, H), G_fd));
    ++rep.instances;
  }
  return rep;
}

}  // namespace hpnmf
