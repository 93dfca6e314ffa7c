#include "hpnmf/divergence.hpp"
#include "hpnmf/generators.hpp"
#include "hpnmf/metrics.hpp"
#include "hpnmf/mu.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace hpnmf;

namespace {

void expect_nonincreasing(const std::vector<double>& trace, double rel_tol, const char* what) {
  for (std::size_t k = 1; k < trace.size(); ++k) {
    ASSERT_LE(trace[k], trace[k - 1] + rel_tol * std::abs(trace[k - 1]))
        << what << " increased at iteration " << k;
  }
}

SolverConfig fixed_iters(int iters) {
  SolverConfig cfg;
  cfg.max_iter = iters;
  cfg.tol = 1e-300;
  return cfg;
}

}  // namespace

TEST(UpdateH, HandValueAndFixedPoint) {
  const NonnegMatrix H = update_h_kl(NonnegMatrix{{2.0}}, NonnegMatrix{{1.0}}, NonnegMatrix{{1.0}});
  EXPECT_DOUBLE_EQ(H(0, 0), 2.0);
  const NonnegMatrix Hb = update_h_beta(NonnegMatrix{{2.0}}, NonnegMatrix{{1.0}}, NonnegMatrix{{1.0}},
                                        Beta::kullback_leibler());
  EXPECT_DOUBLE_EQ(Hb(0, 0), 2.0);

  Rng rng(1);
  const NonnegMatrix W(oracle::uniform(rng, 6, 3, 0.1, 1.0));
  const NonnegMatrix H0(oracle::uniform(rng, 3, 5, 0.1, 1.0));
  const NonnegMatrix X(product(W, H0));
  EXPECT_LE(oracle::rel(update_h_kl(X, W, H0).values(), H0.values()), 1e-12);
}

TEST(UpdateH, KlMatchesLoopOracle) {
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const auto c = oracle::factor_case(rng);
    const Matrix expect = oracle::h_update(c.X, c.W, c.H);
    EXPECT_LE(oracle::rel(update_h_kl(c.X, c.W, c.H).values(), expect), 1e-13);
    EXPECT_LE(oracle::rel(update_h_beta(c.X, c.W, c.H, Beta::kullback_leibler()).values(), expect), 1e-13);
  }
}

TEST(UpdateH, FrobeniusMatchesDirectRule) {
  Rng rng(3);
  const NonnegMatrix X(oracle::uniform(rng, 4, 3, 0.0, 2.0));
  const NonnegMatrix W(oracle::uniform(rng, 4, 2, 0.1, 1.0));
  const NonnegMatrix H(oracle::uniform(rng, 2, 3, 0.1, 1.0));
  const Matrix& Wv = W.values();
  const Matrix expect = H.values().cwiseProduct(Wv.transpose() * X.values())
                            .cwiseQuotient(Wv.transpose() * Wv * H.values());
  EXPECT_LE(oracle::rel(update_h_beta(X, W, H, Beta::frobenius()).values(), expect), 1e-13);
}

TEST(UpdateH, MonotoneForBetaZeroOneTwo) {
  Rng rng(4);
  for (double b : {0.0, 1.0, 2.0}) {
    for (int trial = 0; trial < 100; ++trial) {
      auto c = oracle::factor_case(rng);
      if (b == 0.0) {
        // Itakura-Saito needs a strictly positive X.
        c.X = NonnegMatrix(Matrix(c.X.values().array() + 0.05));
      }
      const double before = total_divergence(c.X, c.W, c.H, Beta{b});
      const NonnegMatrix H1 = update_h_beta(c.X, c.W, c.H, Beta{b});
      const double after = total_divergence(c.X, c.W, H1, Beta{b});
      ASSERT_LE(after, before + 1e-12 * before) << "beta " << b << " trial " << trial;
      ASSERT_GE(H1.values().minCoeff(), 0.0);
    }
  }
}

TEST(UpdateWRow, HandValues) {
  const NonnegMatrix H{{1.0}};
  const Vector w = update_w_penalized_row(Vector::Constant(1, 1.0), 1.0, Vector::Constant(1, 1.0), H);
  EXPECT_DOUBLE_EQ(w[0], 0.5);
  EXPECT_THROW(update_w_penalized_row(Vector::Constant(1, 1.0), -1.0, Vector::Constant(1, 1.0), H),
               std::invalid_argument);
}

TEST(UpdateWRow, ExactFitZeroLambdaIsFixedPoint) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = oracle::row_case(rng);
    const Vector x = c.H.values().transpose() * c.w;
    EXPECT_LE(oracle::rel(Matrix(update_w_penalized_row(c.w, 0.0, x, c.H)), Matrix(c.w)), 1e-12);
  }
}

TEST(UpdateWRow, MatchesLoopOracleAndDescends) {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = oracle::row_case(rng, 5, 10, 1, 0.0, 2.0);
    const Vector got = update_w_penalized_row(c.w, c.lambda, c.x, c.H);
    EXPECT_LE(oracle::rel(Matrix(got), Matrix(oracle::w_row_update(c.w, c.lambda, c.x, c.H))), 1e-13);
    const double before = row_loss(c.w, c.lambda, c.x, c.H);
    const double after = row_loss(got, c.lambda, c.x, c.H);
    ASSERT_LE(after, before + 1e-12 * before) << "trial " << trial;
    ASSERT_GE(got.minCoeff(), 0.0);
  }
}

TEST(RandomInitializers, DeterministicAndPositive) {
  const auto [W1, H1] = random_initializers(5, 4, 2, 9);
  const auto [W2, H2] = random_initializers(5, 4, 2, 9);
  EXPECT_TRUE(W1 == W2);
  EXPECT_TRUE(H1 == H2);
  EXPECT_GT(W1.values().minCoeff(), 0.0);
  EXPECT_GT(H1.values().minCoeff(), 0.0);
  const auto [W3, H3] = random_initializers(5, 4, 2, 10);
  EXPECT_FALSE(W1 == W3);
}

TEST(RunMu, ExactInitStopsAtFirstIteration) {
  const auto [W0, H0] = random_initializers(6, 5, 2, 1);
  const NonnegMatrix X(product(W0, H0));
  const auto st = run_mu(X, W0, H0, SolverConfig{});
  EXPECT_EQ(st.iter, 1);
  EXPECT_TRUE(st.converged);
  EXPECT_LT(st.objective_trace.back(), 1e-20);
}

TEST(RunMu, RankOneRecovered) {
  Rng rng(7);
  const Matrix u = oracle::uniform(rng, 8, 1, 0.5, 2.0);
  const Matrix v = oracle::uniform(rng, 1, 6, 0.5, 2.0);
  const NonnegMatrix X(Matrix(u * v));
  const auto [W0, H0] = random_initializers(8, 6, 1, 2);
  const auto st = run_mu(X, W0, H0, SolverConfig{});
  EXPECT_LT(total_divergence(X, st.W, st.H), 1e-8);
}

TEST(RunMu, MonotoneOnBenchmarkA) {
  const auto truth = gen_a(200, 50, 4, 1);
  const auto [W0, H0] = random_initializers(200, 50, 4, 100);
  const auto st = run_mu(truth.Y, W0, H0, fixed_iters(300));
  ASSERT_EQ(st.objective_trace.size(), 301u);
  expect_nonincreasing(st.objective_trace, 1e-12, "KL");
}

TEST(RunMu, GeneralBetaRunsAndDescends) {
  Rng rng(8);
  const NonnegMatrix X(oracle::uniform(rng, 10, 8, 0.1, 2.0));
  const auto [W0, H0] = random_initializers(10, 8, 3, 3);
  SolverConfig cfg = fixed_iters(50);
  for (double b : {0.0, 0.5, 2.0}) {
    cfg.beta = Beta{b};
    const auto st = run_mu(X, W0, H0, cfg);
    expect_nonincreasing(st.objective_trace, 1e-12, "beta divergence");
  }
}

TEST(RunMu, RejectsBadInputs) {
  const auto [W0, H0] = random_initializers(4, 3, 2, 1);
  const NonnegMatrix X(product(W0, H0));
  SolverConfig bad;
  bad.max_iter = 0;
  EXPECT_THROW(run_mu(X, W0, H0, bad), std::invalid_argument);
  bad = SolverConfig{};
  bad.tol = 0.0;
  EXPECT_THROW(run_mu(X, W0, H0, bad), std::invalid_argument);
  EXPECT_THROW(run_mu(X, H0, W0, SolverConfig{}), ShapeError);
  const NonnegMatrix Wz(Matrix::Zero(4, 2));
  EXPECT_THROW(run_mu(X, Wz, H0, SolverConfig{}), std::invalid_argument);
  SolverConfig frob;
  frob.beta = Beta::frobenius();
  EXPECT_THROW(run_pmu(X, W0, H0, frob), std::invalid_argument);
}

TEST(RunPmu, ZeroLambdaIsBitwiseMu) {
  const auto truth = gen_a(40, 15, 3, 2);
  const auto [W0, H0] = random_initializers(40, 15, 3, 5);
  SolverConfig cfg = fixed_iters(100);
  const auto mu = run_mu(truth.Y, W0, H0, cfg);
  cfg.fixed_lambda = 0.0;
  const auto pmu = run_pmu(truth.Y, W0, H0, cfg);
  EXPECT_TRUE(mu.W == pmu.W);
  EXPECT_TRUE(mu.H == pmu.H);
  EXPECT_EQ(mu.objective_trace, pmu.objective_trace);
}

TEST(RunPmu, PenaltyIncreasesSparsityOnBenchmarkA) {
  const auto truth = gen_a(200, 50, 4, 1);
  const auto [W0, H0] = random_initializers(200, 50, 4, 100);
  SolverConfig cfg;
  const auto mu = run_mu(truth.Y, W0, H0, cfg);
  cfg.fixed_lambda = 0.5;
  const auto pmu = run_pmu(truth.Y, W0, H0, cfg);
  EXPECT_GE(sparsity(pmu.W), sparsity(mu.W));
}

TEST(RunPmu, PenalizedObjectiveMonotone) {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = oracle::factor_case(rng);
    const LambdaVector lam(oracle::uniform_vec(rng, c.X.rows(), 0.0, 2.0));
    const auto st = run_pmu(c.X, c.W, c.H, fixed_iters(100), lam);
    expect_nonincreasing(st.objective_trace, 1e-12, "penalized objective");
    EXPECT_GE(st.W.values().minCoeff(), 0.0);
  }
}

TEST(GridSweep, ZeroGridEqualsMu) {
  const auto truth = gen_a(30, 12, 2, 3);
  const auto [W0, H0] = random_initializers(30, 12, 2, 4);
  const SolverConfig cfg = fixed_iters(80);
  const auto mu = run_mu(truth.Y, W0, H0, cfg);
  const auto reports = grid_sweep(truth.Y, W0, H0, cfg, {0.0});
  ASSERT_EQ(reports.size(), 1u);
  ASSERT_TRUE(reports[0].state.has_value());
  EXPECT_TRUE(reports[0].state->W == mu.W);
  EXPECT_TRUE(reports[0].state->H == mu.H);
  EXPECT_EQ(reports[0].objective_trace, mu.objective_trace);
}

TEST(GridSweep, TenValuesEachMonotone) {
  const auto truth = gen_a(200, 50, 4, 1);
  const auto [W0, H0] = random_initializers(200, 50, 4, 100);
  const std::vector<double> grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  const auto reports = grid_sweep(truth.Y, W0, H0, fixed_iters(150), grid);
  ASSERT_EQ(reports.size(), grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    EXPECT_EQ(*reports[k].fixed_lambda, grid[k]);
    expect_nonincreasing(reports[k].objective_trace, 1e-12, "grid objective");
  }
}

TEST(GridSweep, RejectsEmptyOrNegative) {
  const auto [W0, H0] = random_initializers(4, 3, 2, 1);
  const NonnegMatrix X(product(W0, H0));
  EXPECT_THROW(grid_sweep(X, W0, H0, SolverConfig{}, {}), std::invalid_argument);
  EXPECT_THROW(grid_sweep(X, W0, H0, SolverConfig{}, {-0.1}), std::invalid_argument);
}

TEST(Kkt, MuTerminationOnFactorableInstance) {
  const auto truth = gen_a(30, 20, 3, 4);
  const auto [W0, H0] = random_initializers(30, 20, 3, 8);
  SolverConfig cfg;
  cfg.max_iter = 20000;
  cfg.tol = 1e-12;
  const auto st = run_mu(truth.Y, W0, H0, cfg);
  const double scale = truth.Y.values().maxCoeff();
  EXPECT_LE(kkt_residual(truth.Y, st.W, st.H, LambdaVector(30, 0.0)), 1e-6 * scale);
}
