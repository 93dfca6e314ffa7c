#include "hpnmf/altbi.hpp"
#include "hpnmf/generators.hpp"
#include "hpnmf/hypergradient.hpp"
#include "hpnmf/mu.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace hpnmf;

struct Fixture {
  GroundTruth truth;
  NonnegMatrix W0;
  NonnegMatrix H0;
};

Fixture make_fixture(Index n, Index m, Index r) {
  Fixture f{gen_a(n, m, r, 1), {}, {}};
  std::tie(f.W0, f.H0) = random_initializers(n, m, r, 100);
  return f;
}

void BM_UpdateH(benchmark::State& state) {
  const auto f = make_fixture(state.range(0), state.range(1), 4);
  for (auto _ : state) benchmark::DoNotOptimize(update_h_kl(f.truth.Y, f.W0, f.H0));
}
BENCHMARK(BM_UpdateH)->Args({200, 50})->Args({1000, 200});

void BM_MuIterations(benchmark::State& state) {
  const auto f = make_fixture(state.range(0), state.range(1), 4);
  SolverConfig cfg;
  cfg.max_iter = 10;
  cfg.tol = 1e-300;
  for (auto _ : state) benchmark::DoNotOptimize(run_mu(f.truth.Y, f.W0, f.H0, cfg));
  state.SetItemsProcessed(state.iterations() * cfg.max_iter);
}
BENCHMARK(BM_MuIterations)->Args({200, 50})->Args({1000, 200});

void BM_FmdBunch(benchmark::State& state) {
  const auto f = make_fixture(200, state.range(0), 4);
  const int T = static_cast<int>(state.range(1));
  const Vector w0 = f.W0.row(0).transpose();
  const Vector x = f.truth.Y.row(0).transpose();
  for (auto _ : state) benchmark::DoNotOptimize(fmd_hypergradient(w0, 0.1, x, f.H0, T));
}
BENCHMARK(BM_FmdBunch)->Args({50, 4})->Args({200, 4})->Args({200, 16});

void BM_AltBiIterations(benchmark::State& state) {
  const auto f = make_fixture(state.range(0), state.range(1), 4);
  AltBiConfig cfg;
  cfg.max_iter = 10;
  cfg.tol = 1e-300;
  for (auto _ : state) benchmark::DoNotOptimize(run_altbi(f.truth.Y, f.W0, f.H0, cfg));
  state.SetItemsProcessed(state.iterations() * cfg.max_iter);
}
BENCHMARK(BM_AltBiIterations)->Args({200, 50})->Args({1000, 200});

}  // namespace

BENCHMARK_MAIN();
