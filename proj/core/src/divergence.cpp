#include "hpnmf/divergence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hpnmf {

namespace {

// x log(x/y) - x + y written as x * (r - log1p(r)) with r = y/x - 1, which
// keeps full relative accuracy when y is close to x.
double kl_elem(double x, double y) {
  if (x == 0.0) return y;
  const double r = y / x - 1.0;
  if (r > 1.0) return x * std::log(x / y) - x + y;
  return x * (r - std::log1p(r));
}

double sum_kl(const Matrix& X, const Matrix& WH) {
  double total = 0.0;
  for (Index k = 0; k < X.size(); ++k) {
    total += kl_elem(X.data()[k], std::max(WH.data()[k], kEps));
  }
  return total;
}

}  // namespace

double beta_div_elem(double x, double y, Beta beta, Clamping clamping) {
  if (!(x >= 0.0)) throw std::domain_error("beta_div_elem: x must be >= 0");
  if (clamping == Clamping::disabled) {
    if (!(y > 0.0)) throw std::domain_error("beta_div_elem: y must be > 0");
  } else {
    y = std::max(y, kEps);
  }

  const double b = beta.value;
  if (b == 1.0) return kl_elem(x, y);
  if (b == 0.0) {
    if (x == 0.0) return std::numeric_limits<double>::infinity();
    const double q = x / y;
    return q - std::log(q) - 1.0;
  }
  if (b == 2.0) return 0.5 * (x - y) * (x - y);
  if (b < 0.0 && x == 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(x, b) / (b * (b - 1.0)) + std::pow(y, b) / b -
         x * std::pow(y, b - 1.0) / (b - 1.0);
}

double total_divergence(const NonnegMatrix& X, const NonnegMatrix& W, const NonnegMatrix& H,
                        Beta beta) {
  require_factor_shapes(X, W, H);
  const Matrix WH = W.values() * H.values();
  if (beta.is_kl()) return sum_kl(X.values(), WH);
  double total = 0.0;
  for (Index k = 0; k < WH.size(); ++k) {
    total += beta_div_elem(X.values().data()[k], WH.data()[k], beta);
  }
  return total;
}

double penalized_objective(const NonnegMatrix& X, const NonnegMatrix& W, const NonnegMatrix& H,
                           const LambdaVector& lambda) {
  require_factor_shapes(X, W, H);
  if (lambda.size() != W.rows()) {
    throw ShapeError("penalized_objective: lambda has " + std::to_string(lambda.size()) +
                     " entries, W has " + std::to_string(W.rows()) + " rows");
  }
  const double penalty = lambda.values().dot(W.values().rowwise().sum());
  return total_divergence(X, W, H) + penalty;
}

Vector reconstruct_row(const VectorRef& w, const NonnegMatrix& H) {
  if (w.size() != H.rows()) {
    throw ShapeError("row has " + std::to_string(w.size()) + " entries but H has " +
                     std::to_string(H.rows()) + " rows");
  }
  Vector y = H.values().transpose() * w;
  return y.cwiseMax(kEps);
}

double row_error(const VectorRef& w, const VectorRef& x_row, const NonnegMatrix& H) {
  if (x_row.size() != H.cols()) {
    throw ShapeError("data row has " + std::to_string(x_row.size()) + " entries but H has " +
                     std::to_string(H.cols()) + " columns");
  }
  const Vector y = reconstruct_row(w, H);
  double total = 0.0;
  for (Index j = 0; j < y.size(); ++j) total += kl_elem(x_row[j], y[j]);
  return total;
}

double row_loss(const VectorRef& w, double lambda, const VectorRef& x_row, const NonnegMatrix& H) {
  return row_error(w, x_row, H) + lambda * w.sum();
}

}  // namespace hpnmf
