#include "hpnmf/generators.hpp"

#include "hpnmf/csv.hpp"
#include "hpnmf/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <vector>

namespace hpnmf {

namespace {

constexpr int kRankRetries = 10;
constexpr int kColumnRetries = 100;

GroundTruth assemble(Matrix W, Matrix H) {
  NonnegMatrix Wn(std::move(W));
  NonnegMatrix Hn(std::move(H));
  NonnegMatrix Y(product(Wn, Hn));
  return {std::move(Wn), std::move(Hn), std::move(Y)};
}

void check_dims(Index n, Index m, Index r) {
  if (n < 1 || m < 1 || r < 1) throw std::invalid_argument("benchmark dimensions must be >= 1");
  if (r > std::min(n, m)) throw std::invalid_argument("benchmark rank r must be <= min(n, m)");
}

void check_alpha(double alpha_h) {
  if (!(alpha_h >= 0.0 && alpha_h <= 1.0)) throw std::invalid_argument("alpha_h must lie in [0, 1]");
}

Matrix uniform_matrix(Rng& rng, Index rows, Index cols) {
  Matrix M(rows, cols);
  for (Index k = 0; k < M.size(); ++k) M.data()[k] = rng.uniform();
  return M;
}

// Uniform H with exactly round(alpha * size) entries set to zero.
Matrix sparse_uniform(Rng& rng, Index rows, Index cols, double alpha) {
  Matrix H = uniform_matrix(rng, rows, cols);
  const auto total = static_cast<std::size_t>(H.size());
  const auto zeros = static_cast<std::size_t>(std::llround(alpha * static_cast<double>(total)));
  std::vector<std::size_t> idx(total);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t k = 0; k < zeros; ++k) {
    const auto pick = k + static_cast<std::size_t>(rng.index(total - k));
    std::swap(idx[k], idx[pick]);
    H.data()[idx[k]] = 0.0;
  }
  return H;
}

Matrix sparse_full_rank_h(Rng& rng, Index r, Index m, double alpha) {
  for (int attempt = 0; attempt < kRankRetries; ++attempt) {
    Matrix H = sparse_uniform(rng, r, m, alpha);
    if (numerical_rank(H) == r) return H;
  }
  throw GenerationError("could not draw a full-rank H in " + std::to_string(kRankRetries) +
                        " attempts");
}

bool separated_from(const Matrix& W, Index upto, const Vector& col, double min_deg) {
  for (Index l = 0; l < upto; ++l) {
    if (!(angle_deg(W.col(l), col) > min_deg)) return false;
  }
  return true;
}

Vector gaussian_bump_spectrum(Rng& rng, Index n) {
  const auto bumps = 3 + static_cast<int>(rng.index(4));
  Vector s = Vector::Zero(n);
  for (int b = 0; b < bumps; ++b) {
    const double center = rng.uniform();
    const double width = rng.uniform(0.02, 0.12);
    const double amp = rng.uniform(0.2, 1.0);
    for (Index i = 0; i < n; ++i) {
      const double t = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
      const double z = (t - center) / width;
      s[i] += amp * std::exp(-0.5 * z * z);
    }
  }
  return s / s.maxCoeff();
}

Matrix abundance_maps(Rng& rng, Index r, Index m) {
  const auto side = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(m))));
  const bool square = side * side == m;
  const Index grid_rows = square ? side : 1;
  const Index grid_cols = square ? side : m;

  Matrix fields(r, m);
  for (Index k = 0; k < r; ++k) {
    Vector f = Vector::Constant(m, 1e-3);
    for (int b = 0; b < 3; ++b) {
      const double cr = rng.uniform() * static_cast<double>(grid_rows);
      const double cc = rng.uniform() * static_cast<double>(grid_cols);
      const double sigma = rng.uniform(0.1, 0.3) * static_cast<double>(std::max(grid_rows, grid_cols));
      const double amp = rng.uniform(0.5, 1.0);
      for (Index p = 0; p < m; ++p) {
        const double dr = static_cast<double>(p / grid_cols) - cr;
        const double dc = static_cast<double>(p % grid_cols) - cc;
        f[p] += amp * std::exp(-0.5 * (dr * dr + dc * dc) / (sigma * sigma));
      }
    }
    fields.row(k) = f.transpose();
  }
  for (Index p = 0; p < m; ++p) fields.col(p) /= fields.col(p).sum();

  const Index pure = std::max<Index>(1, static_cast<Index>(std::llround(0.01 * static_cast<double>(m))));
  for (Index k = 0; k < r; ++k) {
    for (Index q = 0; q < pure; ++q) {
      const auto p = static_cast<Index>(rng.index(static_cast<std::uint64_t>(m)));
      fields.col(p).setZero();
      fields(k, p) = 1.0;
    }
  }
  return fields;
}

}  // namespace

BenchmarkKind parse_benchmark_kind(std::string_view s) {
  if (s == "A" || s == "a") return BenchmarkKind::A;
  if (s == "B" || s == "b") return BenchmarkKind::B;
  if (s == "C" || s == "c") return BenchmarkKind::C;
  if (s == "D" || s == "d") return BenchmarkKind::D;
  throw std::invalid_argument("unknown benchmark kind '" + std::string(s) + "' (expected A-D)");
}

std::string to_string(BenchmarkKind kind) {
  switch (kind) {
    case BenchmarkKind::A: return "A";
    case BenchmarkKind::B: return "B";
    case BenchmarkKind::C: return "C";
    case BenchmarkKind::D: return "D";
  }
  return "?";
}

void BenchmarkSpec::validate() const {
  check_dims(n, m, r);
  check_alpha(alpha_h);
  if (kind == BenchmarkKind::D && !d_signals_path) {
    throw std::invalid_argument("benchmark D requires d_signals_path");
  }
}

double angle_deg(const VectorRef& a, const VectorRef& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (!(na > 0.0) || !(nb > 0.0)) throw std::invalid_argument("angle_deg: zero vector");
  const double c = std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
  return std::acos(c) * 180.0 / std::numbers::pi;
}

void require_angle_separation(const Matrix& W, double min_deg) {
  for (Index a = 0; a < W.cols(); ++a) {
    for (Index b = a + 1; b < W.cols(); ++b) {
      const double ang = angle_deg(W.col(a), W.col(b));
      if (!(ang > min_deg)) {
        std::ostringstream msg;
        msg << "columns " << a << " and " << b << " are " << ang << " degrees apart (need > "
            << min_deg << ")";
        throw GenerationError(msg.str());
      }
    }
  }
}

Index numerical_rank(const Matrix& A) {
  Eigen::ColPivHouseholderQR<Matrix> qr(A);
  return qr.rank();
}

GroundTruth gen_a(Index n, Index m, Index r, std::uint64_t seed) {
  check_dims(n, m, r);
  Rng rng(seed);
  for (int attempt = 0; attempt < kRankRetries; ++attempt) {
    Matrix W(n, r);
    for (Index k = 0; k < W.size(); ++k) W.data()[k] = std::max(0.0, rng.normal());
    Matrix H = uniform_matrix(rng, r, m);
    if (numerical_rank(W) == r && numerical_rank(H) == r) return assemble(std::move(W), std::move(H));
  }
  throw GenerationError("gen_a: factors rank deficient after " + std::to_string(kRankRetries) +
                        " attempts");
}

GroundTruth gen_b(Index n, Index m, Index r, double alpha_h, std::uint64_t seed) {
  check_dims(n, m, r);
  check_alpha(alpha_h);
  Rng rng(seed);
  Matrix W;
  bool ok = false;
  for (int attempt = 0; attempt < kRankRetries && !ok; ++attempt) {
    std::vector<double> freqs;
    W.resize(n, r);
    for (Index k = 0; k < r; ++k) {
      double f = 0.0;
      for (int tries = 0; tries < kColumnRetries; ++tries) {
        f = rng.uniform(1.0, 1.0 + 2.0 * static_cast<double>(r));
        const bool distinct = std::all_of(freqs.begin(), freqs.end(),
                                          [f](double g) { return std::abs(f - g) >= 0.5; });
        if (distinct) break;
      }
      freqs.push_back(f);
      const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      for (Index i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n);
        W(i, k) = std::max(0.0, std::sin(2.0 * std::numbers::pi * f * t + phase));
      }
    }
    const bool clipped = ((W.array() == 0.0).colwise().any()).all();
    const bool nonzero = (W.colwise().maxCoeff().array() > 0.0).all();
    ok = clipped && nonzero && numerical_rank(W) == r;
  }
  if (!ok) throw GenerationError("gen_b: could not draw admissible sinusoid columns");
  Matrix H = sparse_full_rank_h(rng, r, m, alpha_h);
  return assemble(std::move(W), std::move(H));
}

GroundTruth gen_c(Index n, Index m, Index r, double alpha_h, std::uint64_t seed) {
  check_dims(n, m, r);
  check_alpha(alpha_h);
  Rng rng(seed);
  Matrix W(n, r);
  for (Index k = 0; k < r; ++k) {
    bool placed = false;
    for (int tries = 0; tries < kColumnRetries && !placed; ++tries) {
      Vector col = gaussian_bump_spectrum(rng, n);
      if (separated_from(W, k, col, kMinSpectralAngleDeg)) {
        W.col(k) = col;
        placed = true;
      }
    }
    if (!placed) {
      throw GenerationError("gen_c: could not separate column " + std::to_string(k) + " by more than " +
                            std::to_string(kMinSpectralAngleDeg) + " degrees");
    }
  }
  Matrix H = sparse_full_rank_h(rng, r, m, alpha_h);
  return assemble(std::move(W), std::move(H));
}

GroundTruth gen_d(const BenchmarkSpec& spec) {
  spec.validate();
  const Matrix signals = read_matrix_csv(*spec.d_signals_path);
  if (signals.rows() != spec.n) {
    throw std::invalid_argument(spec.d_signals_path->string() + ": has " +
                                std::to_string(signals.rows()) + " rows, expected n = " +
                                std::to_string(spec.n));
  }
  if (signals.cols() < spec.r) {
    throw std::invalid_argument(spec.d_signals_path->string() + ": has " +
                                std::to_string(signals.cols()) + " columns, need r = " +
                                std::to_string(spec.r));
  }
  Matrix W = signals.leftCols(spec.r);
  if ((W.array() < 0.0).any() || (W.array() > 1.0).any() || !W.allFinite()) {
    throw std::invalid_argument(spec.d_signals_path->string() +
                                ": reflectance values must lie in [0, 1]");
  }
  require_angle_separation(W);

  Rng rng(spec.seed);
  for (int attempt = 0; attempt < kRankRetries; ++attempt) {
    Matrix H = abundance_maps(rng, spec.r, spec.m);
    if (numerical_rank(H) == spec.r) return assemble(std::move(W), std::move(H));
  }
  throw GenerationError("gen_d: abundance maps rank deficient");
}

GroundTruth generate(const BenchmarkSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case BenchmarkKind::A: return gen_a(spec.n, spec.m, spec.r, spec.seed);
    case BenchmarkKind::B: return gen_b(spec.n, spec.m, spec.r, spec.alpha_h, spec.seed);
    case BenchmarkKind::C: return gen_c(spec.n, spec.m, spec.r, spec.alpha_h, spec.seed);
    case BenchmarkKind::D: return gen_d(spec);
  }
  throw std::invalid_argument("unknown benchmark kind");
}

}  // namespace hpnmf
