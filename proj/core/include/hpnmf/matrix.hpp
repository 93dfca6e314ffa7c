#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>

namespace hpnmf {

using Index = Eigen::Index;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using VectorRef = Eigen::Ref<const Vector>;

/// Lower clamp applied to every reconstruction entry and every denominator.
inline constexpr double kEps = 1e-16;

/// Thrown when operand shapes do not compose.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical run produces NaN/Inf.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense, row-major, entrywise nonnegative matrix. Construction validates
/// every entry; instances are immutable afterwards.
class NonnegMatrix {
 public:
  NonnegMatrix() = default;
  /// Zero matrix of the given shape.
  NonnegMatrix(Index rows, Index cols);
  /// Throws std::invalid_argument on negative or non-finite entries.
  explicit NonnegMatrix(Matrix values);
  NonnegMatrix(std::initializer_list<std::initializer_list<double>> rows);

  Index rows() const noexcept { return values_.rows(); }
  Index cols() const noexcept { return values_.cols(); }
  Index size() const noexcept { return values_.size(); }

  double operator()(Index i, Index j) const { return values_(i, j); }
  const Matrix& values() const noexcept { return values_; }
  std::span<const double> data() const noexcept {
    return {values_.data(), static_cast<std::size_t>(values_.size())};
  }
  /// Row i as a contiguous column vector.
  Vector row(Index i) const { return values_.row(i).transpose(); }

  NonnegMatrix transpose() const { return NonnegMatrix(Matrix(values_.transpose())); }

  friend bool operator==(const NonnegMatrix& a, const NonnegMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a.values_ == b.values_;
  }

 private:
  Matrix values_;
};

/// Per-row l1 penalty weights (the diagonal of the penalty matrix).
class LambdaVector {
 public:
  LambdaVector() = default;
  /// n copies of value.
  LambdaVector(Index n, double value);
  /// Throws std::invalid_argument on negative or non-finite entries.
  explicit LambdaVector(Vector values);

  Index size() const noexcept { return values_.size(); }
  double operator[](Index i) const { return values_[i]; }
  const Vector& values() const noexcept { return values_; }

  friend bool operator==(const LambdaVector& a, const LambdaVector& b) {
    return a.size() == b.size() && a.values_ == b.values_;
  }

 private:
  Vector values_;
};

/// Exponent of the beta-divergence. 0 = Itakura-Saito, 1 = KL, 2 = squared
/// Euclidean. Values outside [0, 2] are representable but carry no descent
/// guarantee for the multiplicative updates.
struct Beta {
  double value = 1.0;

  static constexpr Beta itakura_saito() { return {0.0}; }
  static constexpr Beta kullback_leibler() { return {1.0}; }
  static constexpr Beta frobenius() { return {2.0}; }

  bool guaranteed_descent() const noexcept { return value >= 0.0 && value <= 2.0; }
  bool is_kl() const noexcept { return value == 1.0; }
};

/// Reconstruction WH.
Matrix product(const NonnegMatrix& W, const NonnegMatrix& H);

/// Throws ShapeError unless X (n x m) = W (n x r) * H (r x m).
void require_factor_shapes(const NonnegMatrix& X, const NonnegMatrix& W, const NonnegMatrix& H);

std::string shape_string(Index rows, Index cols);

}  // namespace hpnmf
