#include "hpnmf/altbi.hpp"

#include "hpnmf/divergence.hpp"
#include "hpnmf/hypergradient.hpp"
#include "hpnmf/mu.hpp"
#include "hpnmf/row_kernel.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <sstream>

namespace hpnmf {

void AltBiConfig::validate() const {
  if (T < 1) throw std::invalid_argument("T must be >= 1");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (!(lambda_max_factor > 0.0) || !std::isfinite(lambda_max_factor)) {
    throw std::invalid_argument("lambda_max_factor must be finite and > 0");
  }
  if (lambda_history_stride < 0) throw std::invalid_argument("lambda_history_stride must be >= 0");
}

LambdaVector init_lambda(const NonnegMatrix& X, const NonnegMatrix& W0, const NonnegMatrix& H0) {
  require_factor_shapes(X, W0, H0);
  const Index n = X.rows();
  Vector lambda(n);
  Index zeros = 0;
  for (Index i = 0; i < n; ++i) {
    const Vector w = W0.row(i);
    const double norm = w.sum();
    if (!(norm > 0.0)) {
      throw std::invalid_argument("init_lambda: row " + std::to_string(i) + " of W0 has zero norm");
    }
    lambda[i] = row_error(w, X.row(i), H0) / (10.0 * norm);
    if (lambda[i] == 0.0) ++zeros;
  }
  if (zeros > 0) {
    spdlog::warn("init_lambda: {} of {} rows start with lambda = 0 (exact fit); their penalty "
                 "vanishes",
                 zeros, n);
  }
  return LambdaVector(std::move(lambda));
}

LambdaVector lambda_step(const LambdaVector& lambda, const VectorRef& grads, int s,
                         const LambdaVector& lambda_max) {
  if (s < 1) throw std::invalid_argument("lambda_step: s must be >= 1");
  if (grads.size() != lambda.size() || lambda_max.size() != lambda.size()) {
    throw ShapeError("lambda_step: length mismatch");
  }
  const double c = 1.0 / static_cast<double>(s);
  Vector next = lambda.values() - c * grads;
  next = next.cwiseMax(0.0).cwiseMin(lambda_max.values());
  return LambdaVector(std::move(next));
}

FactorizationState run_altbi(const NonnegMatrix& X, const NonnegMatrix& W0, const NonnegMatrix& H0,
                             const AltBiConfig& cfg) {
  cfg.validate();
  require_factor_shapes(X, W0, H0);
  if (!(W0.values().minCoeff() > 0.0) || !(H0.values().minCoeff() > 0.0)) {
    throw std::invalid_argument("run_altbi: W0 and H0 must be strictly positive");
  }
  const Index n = X.rows();
  const Matrix& Xv = X.values();

  LambdaVector lambda = cfg.initial_lambda ? *cfg.initial_lambda : init_lambda(X, W0, H0);
  if (lambda.size() != n) throw ShapeError("initial_lambda length must equal rows of X");
  const LambdaVector lambda_max(cfg.lambda_max_factor * lambda.values());

  FactorizationState state;
  state.lambda_history_stride =
      cfg.lambda_history_stride > 0 ? cfg.lambda_history_stride : (n <= 1000 ? 1 : 10);

  NonnegMatrix W = W0;
  NonnegMatrix H = H0;
  double f_prev = penalized_objective(X, W, H, lambda);
  state.objective_trace.push_back(f_prev);
  state.response_trace.push_back(total_divergence(X, W, H));
  state.lambda_l1_trace.push_back(lambda.values().sum());
  state.lambda_history.push_back(lambda.values());

  Matrix Wv;
  Vector grads(n);
  for (int s = 1; s <= cfg.max_iter; ++s) {
    H = update_h_kl(X, W, H);
    const RowKernel kernel(H.values());

    Wv = W.values();
    double max_row_norm = 0.0;
    for (Index i = 0; i < n; ++i) {
      FmdResult row;
      try {
        row = fmd_hypergradient(kernel, Wv.row(i).transpose(), lambda[i], Xv.row(i).transpose(),
                                cfg.T);
      } catch (const NumericalError& e) {
        std::ostringstream msg;
        msg << "run_altbi: iteration " << s << ", row " << i << ": " << e.what();
        throw NumericalError(msg.str());
      }
      Wv.row(i) = row.w.transpose();
      grads[i] = cfg.zero_hypergradient ? 0.0 : row.grad;
      max_row_norm = std::max(max_row_norm, row.w.norm());
    }
    W = NonnegMatrix(Wv);

    if (cfg.update_lambda) {
      LambdaVector next = lambda_step(lambda, grads, s, lambda_max);
      const auto saturated =
          ((next.values().array() >= lambda_max.values().array()) &&
           (lambda.values().array() < lambda_max.values().array()))
              .count();
      if (saturated > 0) {
        state.lambda_saturations += static_cast<std::size_t>(saturated);
        spdlog::debug("run_altbi: iteration {}: {} lambda entries reached the upper bound", s,
                      saturated);
      }
      lambda = std::move(next);
    }
    spdlog::trace("run_altbi: iteration {}: max row norm {}", s, max_row_norm);

    const double f = penalized_objective(X, W, H, lambda);
    if (!std::isfinite(f)) {
      std::ostringstream msg;
      msg << "run_altbi: non-finite objective " << f << " at iteration " << s;
      throw NumericalError(msg.str());
    }
    state.objective_trace.push_back(f);
    state.response_trace.push_back(total_divergence(X, W, H));
    state.lambda_l1_trace.push_back(lambda.values().sum());
    if (s % state.lambda_history_stride == 0) state.lambda_history.push_back(lambda.values());
    state.iter = s;
    if (relative_change(f_prev, f) < cfg.tol) {
      state.converged = true;
      break;
    }
    f_prev = f;
  }

  state.W = std::move(W);
  state.H = std::move(H);
  state.lambda = std::move(lambda);
  return state;
}

}  // namespace hpnmf
