#pragma once

#include "hpnmf/matrix.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace hpnmf {

enum class BenchmarkKind { A, B, C, D };

BenchmarkKind parse_benchmark_kind(std::string_view s);
std::string to_string(BenchmarkKind kind);

struct BenchmarkSpec {
  BenchmarkKind kind = BenchmarkKind::A;
  Index n = 200;
  Index m = 50;
  Index r = 4;
  /// Fraction of H entries zeroed (B and C).
  double alpha_h = 0.0;
  std::uint64_t seed = 0;
  /// Reflectance CSV (D only): n rows, at least r columns.
  std::optional<std::filesystem::path> d_signals_path;

  void validate() const;
};

/// Noiseless factors and their product.
struct GroundTruth {
  NonnegMatrix W_true;
  NonnegMatrix H_true;
  NonnegMatrix Y;
};

/// Thrown when a generator cannot meet its rank or separation condition.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pairwise column separation required for spectra (degrees).
inline constexpr double kMinSpectralAngleDeg = 15.0;

/// A: H uniform on [0, 1), W standard normal with negatives set to 0.
GroundTruth gen_a(Index n, Index m, Index r, std::uint64_t seed);

/// B: W columns are clipped sinusoids max(0, sin(2 pi f_k i / n + phi_k)) with
/// distinct seeded frequencies and phases; H uniform with a fraction alpha_h
/// of its entries set to 0.
GroundTruth gen_b(Index n, Index m, Index r, double alpha_h, std::uint64_t seed);

/// C: W columns are smooth synthetic spectra (sums of Gaussian bumps on
/// [0, 1], max-normalized), pairwise angle above kMinSpectralAngleDeg; H as in B.
GroundTruth gen_c(Index n, Index m, Index r, double alpha_h, std::uint64_t seed);

/// D: W = first r columns of the reflectance CSV; H = per-pixel normalized
/// abundance maps built from smooth random fields on a sqrt(m) x sqrt(m)
/// grid (1 x m when m is not a perfect square), with some pure pixels.
GroundTruth gen_d(const BenchmarkSpec& spec);

/// Dispatches on spec.kind.
GroundTruth generate(const BenchmarkSpec& spec);

/// Angle in degrees between two nonzero vectors.
double angle_deg(const VectorRef& a, const VectorRef& b);

/// Throws GenerationError naming the first pair of columns whose angle is
/// not above min_deg.
void require_angle_separation(const Matrix& W, double min_deg = kMinSpectralAngleDeg);

/// Numerical rank via column-pivoted QR.
Index numerical_rank(const Matrix& A);

}  // namespace hpnmf
