#include "hpnmf/matrix.hpp"

#include <cmath>
#include <sstream>

namespace hpnmf {

namespace {

void validate_entries(const double* data, Index count, const char* what) {
  for (Index k = 0; k < count; ++k) {
    const double v = data[k];
    if (!std::isfinite(v) || v < 0.0) {
      std::ostringstream msg;
      msg << what << ": entry " << k << " is " << v << " (must be finite and >= 0)";
      throw std::invalid_argument(msg.str());
    }
  }
}

}  // namespace

NonnegMatrix::NonnegMatrix(Index rows, Index cols) : values_(Matrix::Zero(rows, cols)) {}

NonnegMatrix::NonnegMatrix(Matrix values) : values_(std::move(values)) {
  validate_entries(values_.data(), values_.size(), "NonnegMatrix");
}

NonnegMatrix::NonnegMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Index>(rows.size());
  const auto m = n == 0 ? Index{0} : static_cast<Index>(rows.begin()->size());
  values_.resize(n, m);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != m) {
      throw ShapeError("NonnegMatrix: ragged initializer list");
    }
    Index j = 0;
    for (double v : row) values_(i, j++) = v;
    ++i;
  }
  validate_entries(values_.data(), values_.size(), "NonnegMatrix");
}

LambdaVector::LambdaVector(Index n, double value) : values_(Vector::Constant(n, value)) {
  validate_entries(values_.data(), values_.size(), "LambdaVector");
}

LambdaVector::LambdaVector(Vector values) : values_(std::move(values)) {
  validate_entries(values_.data(), values_.size(), "LambdaVector");
}

Matrix product(const NonnegMatrix& W, const NonnegMatrix& H) {
  if (W.cols() != H.rows()) {
    throw ShapeError("product: W is " + shape_string(W.rows(), W.cols()) + " but H is " +
                     shape_string(H.rows(), H.cols()));
  }
  return W.values() * H.values();
}

void require_factor_shapes(const NonnegMatrix& X, const NonnegMatrix& W, const NonnegMatrix& H) {
  if (W.rows() != X.rows() || H.cols() != X.cols() || W.cols() != H.rows()) {
    throw ShapeError("shape mismatch: X " + shape_string(X.rows(), X.cols()) + ", W " +
                     shape_string(W.rows(), W.cols()) + ", H " + shape_string(H.rows(), H.cols()));
  }
}

std::string shape_string(Index rows, Index cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

}  // namespace hpnmf
