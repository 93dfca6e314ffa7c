#include "hpnmf/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hpnmf {

namespace {

struct ScaledSir {
  double db;
  double scale;
};

ScaledSir scaled_sir(const VectorRef& s, const VectorRef& e) {
  if (s.size() != e.size()) throw ShapeError("sir_db: signal lengths differ");
  const double energy = s.squaredNorm();
  if (!(energy > 0.0)) throw std::invalid_argument("sir_db: true signal is zero");
  const double ee = e.squaredNorm();
  const double c = ee > 0.0 ? s.dot(e) / ee : 0.0;
  const double resid = (s - c * e).squaredNorm();
  if (resid <= 0.0) return {kSirCapDb, c};
  return {std::min(kSirCapDb, 10.0 * std::log10(energy / resid)), c};
}

double quantile_sorted(const std::vector<double>& x, double p) {
  const double h = p * static_cast<double>(x.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= x.size()) return x.back();
  return x[lo] + (h - static_cast<double>(lo)) * (x[lo + 1] - x[lo]);
}

}  // namespace

double sir_db(const VectorRef& true_sig, const VectorRef& est_sig) {
  return scaled_sir(true_sig, est_sig).db;
}

SirReport score_with_assignment(const NonnegMatrix& truth, const NonnegMatrix& est,
                                const std::vector<Index>& assignment) {
  if (truth.rows() != est.rows() || truth.cols() != est.cols()) {
    throw ShapeError("score_with_assignment: truth is " + shape_string(truth.rows(), truth.cols()) +
                     ", estimate is " + shape_string(est.rows(), est.cols()));
  }
  const Index r = truth.cols();
  if (static_cast<Index>(assignment.size()) != r) {
    throw std::invalid_argument("assignment length must equal the number of components");
  }
  SirReport report;
  report.assignment = assignment;
  report.per_component_db.resize(r);
  report.scales.resize(r);
  for (Index i = 0; i < r; ++i) {
    const auto [db, c] = scaled_sir(truth.values().col(i), est.values().col(assignment[i]));
    report.per_component_db[i] = db;
    report.scales[i] = c;
  }
  report.mean_db = r > 0 ? report.per_component_db.mean() : 0.0;
  return report;
}

SirReport match_components(const NonnegMatrix& truth, const NonnegMatrix& est) {
  if (truth.rows() != est.rows() || truth.cols() != est.cols()) {
    throw ShapeError("match_components: truth is " + shape_string(truth.rows(), truth.cols()) +
                     ", estimate is " + shape_string(est.rows(), est.cols()));
  }
  const Index r = truth.cols();
  if (r > 20) throw std::invalid_argument("match_components: at most 20 components supported");

  Matrix table(r, r);
  for (Index i = 0; i < r; ++i) {
    for (Index j = 0; j < r; ++j) {
      table(i, j) = sir_db(truth.values().col(i), est.values().col(j));
    }
  }

  // best[mask]: maximal total SIR assigning true components 0..popcount(mask)-1
  // to the estimated components in mask.
  const std::size_t full = std::size_t{1} << r;
  std::vector<double> best(full, -std::numeric_limits<double>::infinity());
  std::vector<int> choice(full, -1);
  best[0] = 0.0;
  for (std::size_t mask = 0; mask < full; ++mask) {
    if (best[mask] == -std::numeric_limits<double>::infinity()) continue;
    const auto i = static_cast<Index>(std::popcount(mask));
    if (i == r) continue;
    for (Index j = 0; j < r; ++j) {
      const std::size_t bit = std::size_t{1} << j;
      if (mask & bit) continue;
      const double total = best[mask] + table(i, j);
      if (total > best[mask | bit]) {
        best[mask | bit] = total;
        choice[mask | bit] = static_cast<int>(j);
      }
    }
  }

  std::vector<Index> assignment(static_cast<std::size_t>(r));
  std::size_t mask = full - 1;
  for (Index i = r - 1; i >= 0; --i) {
    const int j = choice[mask];
    assignment[static_cast<std::size_t>(i)] = j;
    mask &= ~(std::size_t{1} << j);
  }
  return score_with_assignment(truth, est, assignment);
}

double sparsity(const NonnegMatrix& A, double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("sparsity: tol must be >= 0");
  if (A.size() == 0) return 0.0;
  const auto small = (A.values().array() <= tol).count();
  return 100.0 * static_cast<double>(small) / static_cast<double>(A.size());
}

Matrix penalized_gradient_w(const NonnegMatrix& X, const NonnegMatrix& W, const NonnegMatrix& H,
                            const LambdaVector& lambda) {
  require_factor_shapes(X, W, H);
  if (lambda.size() != W.rows()) throw ShapeError("lambda length must equal rows of W");
  const Matrix WH = (W.values() * H.values()).cwiseMax(kEps);
  const Matrix resid = (1.0 - X.values().cwiseQuotient(WH).array()).matrix();
  Matrix grad = resid * H.values().transpose();
  grad.colwise() += lambda.values();
  return grad;
}

double kkt_residual(const NonnegMatrix& X, const NonnegMatrix& W, const NonnegMatrix& H,
                    const LambdaVector& lambda) {
  const Matrix grad = penalized_gradient_w(X, W, H, lambda);
  if (grad.size() == 0) return 0.0;
  return W.values().cwiseProduct(grad).cwiseAbs().maxCoeff();
}

Summary summarize(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("summarize: empty sample");
  std::sort(values.begin(), values.end());
  Summary s;
  s.count = values.size();
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  s.median = quantile_sorted(values, 0.5);
  s.q1 = quantile_sorted(values, 0.25);
  s.q3 = quantile_sorted(values, 0.75);
  s.min = values.front();
  s.max = values.back();
  return s;
}

}  // namespace hpnmf
