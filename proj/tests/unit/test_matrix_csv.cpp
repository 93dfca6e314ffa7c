#include "hpnmf/csv.hpp"
#include "hpnmf/matrix.hpp"
#include "hpnmf/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

using namespace hpnmf;

TEST(NonnegMatrix, RejectsNegativeAndNonFinite) {
  EXPECT_THROW((NonnegMatrix{{1.0, -1e-300}}), std::invalid_argument);
  EXPECT_THROW((NonnegMatrix{{std::nan("")}}), std::invalid_argument);
  EXPECT_THROW((NonnegMatrix{{std::numeric_limits<double>::infinity()}}), std::invalid_argument);
  EXPECT_NO_THROW((NonnegMatrix{{0.0, 2.0}, {3.0, 4.0}}));
}

TEST(NonnegMatrix, RaggedInitializerIsShapeError) {
  EXPECT_THROW((NonnegMatrix{{1.0, 2.0}, {3.0}}), ShapeError);
}

TEST(NonnegMatrix, ProductChecksInnerDimension) {
  const NonnegMatrix W{{1.0, 2.0}};
  const NonnegMatrix H{{1.0}, {1.0}};
  EXPECT_DOUBLE_EQ(product(W, H)(0, 0), 3.0);
  EXPECT_THROW(product(W, W), ShapeError);
}

TEST(LambdaVector, RejectsNegative) {
  EXPECT_THROW(LambdaVector(3, -0.1), std::invalid_argument);
  EXPECT_EQ(LambdaVector(2, 0.5).size(), 2);
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42);
  Rng b(42);
  for (int k = 0; k < 100; ++k) {
    EXPECT_EQ(a.uniform(), b.uniform());
    EXPECT_EQ(a.normal(), b.normal());
    EXPECT_EQ(a.index(7), b.index(7));
  }
}

TEST(Rng, UniformPosIsStrictlyPositive) {
  Rng rng(1);
  for (int k = 0; k < 10000; ++k) {
    const double u = rng.uniform_pos();
    EXPECT_GT(u, 0.0);
    EXPECT_LE(u, 1.0);
  }
}

TEST(Csv, ParsesRowsAndColumns) {
  const Matrix M = parse_matrix_csv("1,2,3\n4.5,-6e-3,7\n");
  ASSERT_EQ(M.rows(), 2);
  ASSERT_EQ(M.cols(), 3);
  EXPECT_DOUBLE_EQ(M(1, 1), -6e-3);
}

TEST(Csv, ToleratesCrlfAndMissingFinalNewline) {
  const Matrix M = parse_matrix_csv("1,2\r\n3,4");
  EXPECT_EQ(M.rows(), 2);
  EXPECT_DOUBLE_EQ(M(1, 1), 4.0);
}

TEST(Csv, RaggedRowNamesLine) {
  try {
    parse_matrix_csv("1,2\n3\n");
    FAIL() << "expected an exception";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(Csv, BadTokenNamesLineAndColumn) {
  try {
    parse_matrix_csv("1,2\n3,abc\n");
    FAIL() << "expected an exception";
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("column 2"), std::string::npos) << msg;
  }
}

TEST(Csv, EmptyInputRejected) { EXPECT_THROW(parse_matrix_csv(""), std::invalid_argument); }

TEST(Csv, RoundTripIsBitwise) {
  Rng rng(3);
  Matrix M(7, 5);
  for (Index k = 0; k < M.size(); ++k) M.data()[k] = rng.normal() * std::pow(10.0, rng.uniform(-30, 30));
  M(0, 0) = 0.0;
  M(0, 1) = 5e-324;
  M(0, 2) = std::numeric_limits<double>::max();
  std::ostringstream out;
  write_matrix_csv(out, M);
  const Matrix back = parse_matrix_csv(out.str());
  EXPECT_TRUE(back == M);
}

TEST(Csv, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "hpnmf_csv_roundtrip.csv";
  const Matrix M = Matrix::Constant(3, 2, 0.1);
  write_matrix_csv(path, M);
  EXPECT_TRUE(read_matrix_csv(path) == M);
  std::filesystem::remove(path);
}

TEST(Csv, MissingFileNamesPath) {
  try {
    read_matrix_csv("/nonexistent/dir/x.csv");
    FAIL();
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/x.csv"), std::string::npos);
  }
}

TEST(Csv, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, 0.0}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.5), "0.5");
}
