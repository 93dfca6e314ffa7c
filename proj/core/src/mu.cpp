#include "hpnmf/mu.hpp"

#include "hpnmf/divergence.hpp"
#include "hpnmf/rng.hpp"
#include "hpnmf/row_kernel.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <mutex>
#include <sstream>

namespace hpnmf {

namespace {

void warn_beta_once(Beta beta) {
  static std::once_flag flag;
  std::call_once(flag, [beta] {
    spdlog::warn("beta = {} lies outside [0, 2]; multiplicative updates are applied but "
                 "monotone descent is not guaranteed",
                 beta.value);
  });
}

void require_strictly_positive(const NonnegMatrix& A, const char* name) {
  if (A.size() > 0 && !(A.values().minCoeff() > 0.0)) {
    throw std::invalid_argument(std::string(name) + " must be strictly positive");
  }
}

Matrix update_h_beta_raw(const Matrix& X, const Matrix& W, const Matrix& H, double beta) {
  const Matrix WH = (W * H).cwiseMax(kEps);
  const Matrix numer_arg = WH.array().pow(beta - 2.0).cwiseProduct(X.array()).matrix();
  const Matrix denom_arg = WH.array().pow(beta - 1.0).matrix();
  const Matrix numer = W.transpose() * numer_arg;
  const Matrix denom = (W.transpose() * denom_arg).cwiseMax(kEps);
  return H.cwiseProduct(numer).cwiseQuotient(denom);
}

Matrix update_h_kl_raw(const Matrix& X, const Matrix& W, const Matrix& H) {
  const Matrix WH = (W * H).cwiseMax(kEps);
  const Matrix numer = W.transpose() * X.cwiseQuotient(WH);
  const Vector colsum = W.colwise().sum().transpose().cwiseMax(kEps);
  Matrix out = H.cwiseProduct(numer);
  for (Index k = 0; k < out.rows(); ++k) out.row(k) /= colsum[k];
  return out;
}

// Shared loop of MU and P-MU. lambda has one entry per row of W.
FactorizationState run_multiplicative(const NonnegMatrix& X, const NonnegMatrix& W0,
                                      const NonnegMatrix& H0, const SolverConfig& cfg,
                                      const LambdaVector& lambda) {
  cfg.validate();
  require_factor_shapes(X, W0, H0);
  require_strictly_positive(W0, "W0");
  require_strictly_positive(H0, "H0");
  if (lambda.size() != W0.rows()) throw ShapeError("lambda length must equal rows of W0");
  const bool kl = cfg.beta.is_kl();
  if (!kl && lambda.values().any()) {
    throw std::invalid_argument("penalized updates require beta = 1");
  }
  if (!cfg.beta.guaranteed_descent()) warn_beta_once(cfg.beta);

  const Matrix& Xv = X.values();
  Matrix W = W0.values();
  Matrix H = H0.values();
  const Index n = W.rows();

  FactorizationState state;
  state.lambda = lambda;

  auto evaluate = [&](const Matrix& Wc, const Matrix& Hc) {
    const NonnegMatrix Wn(Wc);
    const NonnegMatrix Hn(Hc);
    const double response = total_divergence(X, Wn, Hn, cfg.beta);
    const double objective = kl ? penalized_objective(X, Wn, Hn, lambda) : response;
    return std::pair{objective, response};
  };

  auto [f_prev, d0] = evaluate(W, H);
  state.objective_trace.push_back(f_prev);
  state.response_trace.push_back(d0);

  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    if (kl) {
      H = update_h_kl_raw(Xv, W, H);
      const RowKernel kernel(H);
      for (Index i = 0; i < n; ++i) {
        W.row(i) = kernel.step(W.row(i).transpose(), lambda[i], Xv.row(i).transpose()).transpose();
      }
    } else {
      H = update_h_beta_raw(Xv, W, H, cfg.beta.value);
      W = update_h_beta_raw(Xv.transpose(), H.transpose(), W.transpose(), cfg.beta.value)
              .transpose();
    }

    if (!W.allFinite() || !H.allFinite()) {
      std::ostringstream msg;
      msg << "non-finite factor entries at iteration " << iter;
      throw NumericalError(msg.str());
    }
    const auto [f, d] = evaluate(W, H);
    if (!std::isfinite(f)) {
      std::ostringstream msg;
      msg << "non-finite objective " << f << " at iteration " << iter;
      throw NumericalError(msg.str());
    }
    state.objective_trace.push_back(f);
    state.response_trace.push_back(d);
    state.iter = iter;
    if (relative_change(f_prev, f) < cfg.tol) {
      state.converged = true;
      break;
    }
    f_prev = f;
  }

  state.W = NonnegMatrix(std::move(W));
  state.H = NonnegMatrix(std::move(H));
  return state;
}

}  // namespace

void SolverConfig::validate() const {
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (!std::isfinite(beta.value)) throw std::invalid_argument("beta must be finite");
  if (!(fixed_lambda >= 0.0) || !std::isfinite(fixed_lambda)) {
    throw std::invalid_argument("fixed_lambda must be finite and >= 0");
  }
}

NonnegMatrix update_h_beta(const NonnegMatrix& X, const NonnegMatrix& W, const NonnegMatrix& H,
                           Beta beta) {
  require_factor_shapes(X, W, H);
  if (!beta.guaranteed_descent()) warn_beta_once(beta);
  return NonnegMatrix(update_h_beta_raw(X.values(), W.values(), H.values(), beta.value));
}

NonnegMatrix update_h_kl(const NonnegMatrix& X, const NonnegMatrix& W, const NonnegMatrix& H) {
  require_factor_shapes(X, W, H);
  return NonnegMatrix(update_h_kl_raw(X.values(), W.values(), H.values()));
}

Vector update_w_penalized_row(const VectorRef& w, double lambda, const VectorRef& x_row,
                              const NonnegMatrix& H) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
  const RowKernel kernel(H.values());
  return kernel.step(w, lambda, x_row);
}

std::pair<NonnegMatrix, NonnegMatrix> random_initializers(Index n, Index m, Index r,
                                                          std::uint64_t seed) {
  if (n < 1 || m < 1 || r < 1) throw std::invalid_argument("initializer dimensions must be >= 1");
  Rng rng(seed);
  Matrix W(n, r);
  Matrix H(r, m);
  for (Index k = 0; k < W.size(); ++k) W.data()[k] = rng.uniform_pos();
  for (Index k = 0; k < H.size(); ++k) H.data()[k] = rng.uniform_pos();
  return {NonnegMatrix(std::move(W)), NonnegMatrix(std::move(H))};
}

double relative_change(double previous, double current) {
  return std::abs(previous - current) / std::max(previous, kEps);
}

FactorizationState run_mu(const NonnegMatrix& X, const NonnegMatrix& W0, const NonnegMatrix& H0,
                          const SolverConfig& cfg) {
  return run_multiplicative(X, W0, H0, cfg, LambdaVector(W0.rows(), 0.0));
}

FactorizationState run_pmu(const NonnegMatrix& X, const NonnegMatrix& W0, const NonnegMatrix& H0,
                           const SolverConfig& cfg) {
  cfg.validate();
  return run_pmu(X, W0, H0, cfg, LambdaVector(W0.rows(), cfg.fixed_lambda));
}

FactorizationState run_pmu(const NonnegMatrix& X, const NonnegMatrix& W0, const NonnegMatrix& H0,
                           const SolverConfig& cfg, const LambdaVector& lambda) {
  if (!cfg.beta.is_kl()) throw std::invalid_argument("run_pmu requires beta = 1");
  return run_multiplicative(X, W0, H0, cfg, lambda);
}

std::vector<RunReport> grid_sweep(const NonnegMatrix& X, const NonnegMatrix& W0,
                                  const NonnegMatrix& H0, const SolverConfig& cfg,
                                  const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("grid_sweep: grid is empty");
  for (double g : grid) {
    if (!(g >= 0.0) || !std::isfinite(g)) {
      throw std::invalid_argument("grid_sweep: grid values must be finite and >= 0");
    }
  }
  std::vector<RunReport> reports;
  reports.reserve(grid.size());
  for (double g : grid) {
    SolverConfig run_cfg = cfg;
    run_cfg.fixed_lambda = g;
    auto report = make_report("grid", run_pmu(X, W0, H0, run_cfg));
    report.fixed_lambda = g;
    report.seed = cfg.seed;
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace hpnmf
