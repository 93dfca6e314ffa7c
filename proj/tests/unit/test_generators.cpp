#include "hpnmf/csv.hpp"
#include "hpnmf/generators.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace hpnmf;

namespace {

std::filesystem::path temp_csv(const char* name, const Matrix& M) {
  const auto path = std::filesystem::temp_directory_path() / name;
  write_matrix_csv(path, M);
  return path;
}

void expect_consistent(const GroundTruth& g, Index n, Index m, Index r) {
  EXPECT_EQ(g.W_true.rows(), n);
  EXPECT_EQ(g.W_true.cols(), r);
  EXPECT_EQ(g.H_true.rows(), r);
  EXPECT_EQ(g.H_true.cols(), m);
  EXPECT_TRUE(g.Y.values() == product(g.W_true, g.H_true));
  EXPECT_EQ(numerical_rank(g.W_true.values()), r);
  EXPECT_EQ(numerical_rank(g.H_true.values()), r);
}

}  // namespace

TEST(GenA, ShapeRankAndClippedZeros) {
  const auto g = gen_a(200, 50, 4, 1);
  expect_consistent(g, 200, 50, 4);
  const double zero_frac = (g.W_true.values().array() == 0.0).cast<double>().mean();
  EXPECT_GT(zero_frac, 0.4);
  EXPECT_LT(zero_frac, 0.6);
  EXPECT_GT(g.H_true.values().minCoeff(), -1e-300);
}

TEST(GenA, Deterministic) {
  const auto a = gen_a(30, 10, 3, 77);
  const auto b = gen_a(30, 10, 3, 77);
  EXPECT_TRUE(a.W_true == b.W_true);
  EXPECT_TRUE(a.H_true == b.H_true);
  EXPECT_TRUE(a.Y == b.Y);
  EXPECT_FALSE(a.W_true == gen_a(30, 10, 3, 78).W_true);
}

TEST(GenA, RejectsBadDimensions) {
  EXPECT_THROW(gen_a(0, 5, 1, 1), std::invalid_argument);
  EXPECT_THROW(gen_a(5, 3, 4, 1), std::invalid_argument);
}

TEST(GenB, ClippedSinusoidsAndExactSparsity) {
  const auto g = gen_b(500, 100, 20, 0.3, 5);
  expect_consistent(g, 500, 100, 20);
  for (Index k = 0; k < 20; ++k) {
    EXPECT_TRUE((g.W_true.values().col(k).array() == 0.0).any()) << "column " << k;
    EXPECT_GT(g.W_true.values().col(k).maxCoeff(), 0.0);
    EXPECT_LE(g.W_true.values().col(k).maxCoeff(), 1.0);
  }
  const double realized = (g.H_true.values().array() == 0.0).cast<double>().mean();
  EXPECT_NEAR(realized, 0.3, 0.02);
}

TEST(GenB, NoStructuralZerosAtAlphaZero) {
  const auto g = gen_b(100, 30, 3, 0.0, 2);
  EXPECT_FALSE((g.H_true.values().array() == 0.0).any());
}

TEST(GenB, RejectsAlphaOutsideUnitInterval) {
  EXPECT_THROW(gen_b(100, 30, 3, 1.5, 2), std::invalid_argument);
}

TEST(GenC, SeparatedMaxNormalizedSpectra) {
  const auto g = gen_c(1000, 50, 5, 0.2, 3);
  expect_consistent(g, 1000, 50, 5);
  for (Index k = 0; k < 5; ++k) EXPECT_DOUBLE_EQ(g.W_true.values().col(k).maxCoeff(), 1.0);
  for (Index a = 0; a < 5; ++a)
    for (Index b = a + 1; b < 5; ++b)
      EXPECT_GT(angle_deg(g.W_true.values().col(a), g.W_true.values().col(b)), kMinSpectralAngleDeg);
  const auto again = gen_c(1000, 50, 5, 0.2, 3);
  EXPECT_TRUE(again.Y == g.Y);
}

TEST(GenD, LoadsSignalsAndBuildsAbundances) {
  const auto c = gen_c(64, 10, 4, 0.0, 9);
  const auto path = temp_csv("hpnmf_gen_d_signals.csv", c.W_true.values());
  BenchmarkSpec spec;
  spec.kind = BenchmarkKind::D;
  spec.n = 64;
  spec.m = 49;
  spec.r = 3;
  spec.seed = 4;
  spec.d_signals_path = path;
  const auto g = generate(spec);
  expect_consistent(g, 64, 49, 3);
  EXPECT_TRUE(g.W_true.values() == c.W_true.values().leftCols(3));
  for (Index p = 0; p < 49; ++p) EXPECT_LE(g.H_true.values().col(p).sum(), 1.0 + 1e-12);
  // Every component has at least one pure pixel.
  for (Index k = 0; k < 3; ++k) EXPECT_TRUE((g.H_true.values().row(k).array() == 1.0).any());
  std::filesystem::remove(path);
}

TEST(GenD, LoaderRoundTripIsBitwise) {
  const auto c = gen_c(30, 5, 3, 0.0, 1);
  const auto path = temp_csv("hpnmf_gen_d_roundtrip.csv", c.W_true.values());
  EXPECT_TRUE(read_matrix_csv(path) == c.W_true.values());
  std::filesystem::remove(path);
}

TEST(GenD, RejectsDuplicatedColumns) {
  Matrix W(20, 2);
  for (Index i = 0; i < 20; ++i) W(i, 0) = W(i, 1) = 0.05 * static_cast<double>(i);
  const auto path = temp_csv("hpnmf_gen_d_dup.csv", W);
  BenchmarkSpec spec;
  spec.kind = BenchmarkKind::D;
  spec.n = 20;
  spec.m = 16;
  spec.r = 2;
  spec.d_signals_path = path;
  EXPECT_THROW(generate(spec), GenerationError);
  std::filesystem::remove(path);
}

TEST(GenD, RejectsWrongRowsAndRange) {
  const auto path = temp_csv("hpnmf_gen_d_bad.csv", Matrix::Constant(10, 3, 2.0));
  BenchmarkSpec spec;
  spec.kind = BenchmarkKind::D;
  spec.n = 11;
  spec.m = 16;
  spec.r = 2;
  spec.d_signals_path = path;
  EXPECT_THROW(generate(spec), std::invalid_argument);
  spec.n = 10;
  EXPECT_THROW(generate(spec), std::invalid_argument);
  std::filesystem::remove(path);
}

TEST(GenD, RequiresPath) {
  BenchmarkSpec spec;
  spec.kind = BenchmarkKind::D;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
}

TEST(BenchmarkKind, ParseAndPrint) {
  EXPECT_EQ(parse_benchmark_kind("c"), BenchmarkKind::C);
  EXPECT_EQ(to_string(BenchmarkKind::B), "B");
  EXPECT_THROW(parse_benchmark_kind("E"), std::invalid_argument);
}
