#include "hpnmf/hypergradient.hpp"

#include "hpnmf/divergence.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hpnmf {

namespace {

void require_bunch_length(int T) {
  if (T < 1) throw std::invalid_argument("bunch length T must be >= 1");
}

void require_finite(const Vector& v, const char* what, int t) {
  if (!v.allFinite()) {
    std::ostringstream msg;
    msg << "non-finite " << what << " at inner step " << t;
    throw NumericalError(msg.str());
  }
}

}  // namespace

RowDynamics RowDynamics::start(Vector w0, double lambda, int T) {
  RowDynamics dyn;
  dyn.Z = Vector::Zero(w0.size());
  dyn.w = std::move(w0);
  dyn.lambda = lambda;
  dyn.t = 0;
  dyn.T = T;
  return dyn;
}

RowDynamics phi_step(const RowDynamics& dyn, const VectorRef& x_row, const NonnegMatrix& H) {
  const RowKernel kernel(H.values());
  RowDynamics next = dyn;
  next.w = kernel.step(dyn.w, dyn.lambda, x_row);
  ++next.t;
  return next;
}

void tangent_step_inplace(const RowKernel& kernel, const VectorRef& x_row, RowDynamics& dyn) {
  const Matrix& H = kernel.H();
  const Vector y = kernel.reconstruct(dyn.w);
  const Vector s = kernel.weighted_ratio(x_row, y);
  const Vector den = kernel.denominator(dyn.lambda);

  // (A Z)_k = (S_k Z_k - w_k sum_j H_kj x_j / y_j^2 (H^T Z)_j) / den_k
  // B_k     = -w_k S_k / den_k^2
  const Vector hz = H.transpose() * dyn.Z;
  const Vector curv = H * (x_row.cwiseQuotient(y.cwiseAbs2()).cwiseProduct(hz));
  const Vector az = (s.cwiseProduct(dyn.Z) - dyn.w.cwiseProduct(curv)).cwiseQuotient(den);
  const Vector b = -dyn.w.cwiseProduct(s).cwiseQuotient(den.cwiseAbs2());

  dyn.Z = az + b;
  dyn.w = RowKernel::advance(dyn.w, s, den);
  ++dyn.t;
}

RowDynamics tangent_step(const RowDynamics& dyn, const VectorRef& x_row, const NonnegMatrix& H) {
  const RowKernel kernel(H.values());
  RowDynamics next = dyn;
  tangent_step_inplace(kernel, x_row, next);
  return next;
}

Matrix jacobian_A(const VectorRef& w, double lambda, const VectorRef& x_row, const NonnegMatrix& H) {
  const RowKernel kernel(H.values());
  const Vector y = kernel.reconstruct(w);
  const Vector s = kernel.weighted_ratio(x_row, y);
  const Vector den = kernel.denominator(lambda);
  const Vector q2 = x_row.cwiseQuotient(y.cwiseAbs2());
  const Matrix& Hv = H.values();

  // C(k, h) = sum_j H_kj H_hj x_j / y_j^2
  const Matrix C = Hv * q2.asDiagonal() * Hv.transpose();
  const Index r = w.size();
  Matrix A(r, r);
  for (Index k = 0; k < r; ++k) {
    for (Index h = 0; h < r; ++h) {
      const double diag = h == k ? s[k] : 0.0;
      A(k, h) = (diag - w[k] * C(k, h)) / den[k];
    }
  }
  return A;
}

Vector jacobian_B(const VectorRef& w, double lambda, const VectorRef& x_row, const NonnegMatrix& H) {
  const RowKernel kernel(H.values());
  const Vector y = kernel.reconstruct(w);
  const Vector s = kernel.weighted_ratio(x_row, y);
  const Vector den = kernel.denominator(lambda);
  return -w.cwiseProduct(s).cwiseQuotient(den.cwiseAbs2());
}

Vector outer_gradient_G(const VectorRef& w, const VectorRef& x_row, const NonnegMatrix& H) {
  const RowKernel kernel(H.values());
  const Vector y = kernel.reconstruct(w);
  return kernel.row_sums() - kernel.weighted_ratio(x_row, y);
}

HypergradPieces hypergrad_pieces(const VectorRef& w, double lambda, const VectorRef& x_row,
                                 const NonnegMatrix& H) {
  return {jacobian_A(w, lambda, x_row, H), jacobian_B(w, lambda, x_row, H),
          outer_gradient_G(w, x_row, H)};
}

FmdResult fmd_hypergradient(const RowKernel& kernel, const VectorRef& w0, double lambda,
                            const VectorRef& x_row, int T) {
  require_bunch_length(T);
  RowDynamics dyn = RowDynamics::start(w0, lambda, T);
  for (int t = 1; t <= T; ++t) {
    tangent_step_inplace(kernel, x_row, dyn);
    require_finite(dyn.w, "state", t);
    require_finite(dyn.Z, "tangent", t);
  }
  const Vector y = kernel.reconstruct(dyn.w);
  const Vector G = kernel.row_sums() - kernel.weighted_ratio(x_row, y);
  // The response has no explicit lambda dependence, so df/dlambda = 0.
  constexpr double direct = 0.0;
  const double grad = direct + G.dot(dyn.Z);
  if (!std::isfinite(grad)) throw NumericalError("non-finite hypergradient");
  return {grad, std::move(dyn.w), std::move(dyn.Z)};
}

FmdResult fmd_hypergradient(const VectorRef& w0, double lambda, const VectorRef& x_row,
                            const NonnegMatrix& H, int T) {
  const RowKernel kernel(H.values());
  return fmd_hypergradient(kernel, w0, lambda, x_row, T);
}

RmdState rmd_forward(const VectorRef& w0, double lambda, const VectorRef& x_row,
                     const NonnegMatrix& H, int T) {
  require_bunch_length(T);
  const RowKernel kernel(H.values());
  RmdState state;
  state.w_history.reserve(static_cast<std::size_t>(T) + 1);
  state.w_history.emplace_back(w0);
  for (int t = 1; t <= T; ++t) {
    state.w_history.push_back(kernel.step(state.w_history.back(), lambda, x_row));
    require_finite(state.w_history.back(), "state", t);
  }
  state.alpha = outer_gradient_G(state.w_history.back(), x_row, H);
  state.h = 0.0;
  return state;
}

double rmd_hypergradient(const VectorRef& w0, double lambda, const VectorRef& x_row,
                         const NonnegMatrix& H, int T) {
  RmdState state = rmd_forward(w0, lambda, x_row, H, T);
  for (int t = T; t >= 1; --t) {
    const Vector& w_prev = state.w_history[static_cast<std::size_t>(t) - 1];
    const Matrix A = jacobian_A(w_prev, lambda, x_row, H);
    const Vector B = jacobian_B(w_prev, lambda, x_row, H);
    state.h += state.alpha.dot(B);
    state.alpha = A.transpose() * state.alpha;
  }
  if (!std::isfinite(state.h)) throw NumericalError("non-finite hypergradient");
  return state.h;
}

double central_difference(const std::function<double(double)>& f, double at, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("finite-difference step must be > 0");
  return (f(at + step) - f(at - step)) / (2.0 * step);
}

double fd_hypergradient_oracle(const VectorRef& w0, double lambda, const VectorRef& x_row,
                               const NonnegMatrix& H, int T, double step) {
  require_bunch_length(T);
  if (lambda - step < 0.0) throw std::invalid_argument("lambda - step must be >= 0");
  const RowKernel kernel(H.values());
  auto response = [&](double lam) {
    Vector w = w0;
    for (int t = 0; t < T; ++t) w = kernel.step(w, lam, x_row);
    return row_error(w, x_row, H);
  };
  return central_difference(response, lambda, step);
}

}  // namespace hpnmf
