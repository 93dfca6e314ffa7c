#include "hpnmf/row_kernel.hpp"

namespace hpnmf {

RowKernel::RowKernel(const Matrix& H) : H_(H), hsum_(H.rowwise().sum()) {}

Vector RowKernel::reconstruct(const VectorRef& w) const {
  if (w.size() != H_.rows()) {
    throw ShapeError("row has " + std::to_string(w.size()) + " entries but H has " +
                     std::to_string(H_.rows()) + " rows");
  }
  Vector y = H_.transpose() * w;
  return y.cwiseMax(kEps);
}

Vector RowKernel::weighted_ratio(const VectorRef& x, const Vector& y) const {
  if (x.size() != H_.cols()) {
    throw ShapeError("data row has " + std::to_string(x.size()) + " entries but H has " +
                     std::to_string(H_.cols()) + " columns");
  }
  return H_ * x.cwiseQuotient(y);
}

Vector RowKernel::denominator(double lambda) const {
  return (hsum_.array() + lambda).cwiseMax(kEps).matrix();
}

Vector RowKernel::step(const VectorRef& w, double lambda, const VectorRef& x) const {
  const Vector y = reconstruct(w);
  const Vector s = weighted_ratio(x, y);
  return advance(w, s, denominator(lambda));
}

Vector RowKernel::advance(const VectorRef& w, const Vector& s, const Vector& den) {
  return w.cwiseProduct(s).cwiseQuotient(den);
}

}  // namespace hpnmf
