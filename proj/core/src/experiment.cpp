#include "hpnmf/experiment.hpp"

#include "hpnmf/csv.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <thread>

namespace hpnmf {

namespace {

using Clock = std::chrono::steady_clock;

RunReport failed_report(std::string label, std::size_t run_id, std::uint64_t seed,
                        const std::exception& e) {
  RunReport report;
  report.algorithm = std::move(label);
  report.run_id = run_id;
  report.seed = seed;
  report.error = e.what();
  if (report.error.empty()) report.error = "unknown failure";
  return report;
}

template <typename Solve>
RunReport timed_run(std::string label, std::size_t run_id, std::uint64_t seed,
                    const GroundTruth& truth, double sparsity_tol, Solve&& solve) {
  const auto start = Clock::now();
  try {
    RunReport report = make_report(label, solve(), sparsity_tol);
    report.run_id = run_id;
    report.seed = seed;
    report.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    score(report, truth);
    return report;
  } catch (const std::exception& e) {
    spdlog::warn("run {} ({}) failed: {}", run_id, label, e.what());
    return failed_report(std::move(label), run_id, seed, e);
  }
}

std::vector<RunReport> run_one(const ExperimentConfig& cfg, const GroundTruth& truth,
                               std::size_t run_id) {
  const std::uint64_t seed = cfg.base_seed + run_id;
  const auto& X = truth.Y;
  const auto [W0, H0] = random_initializers(X.rows(), X.cols(), cfg.benchmark.r, seed);

  SolverConfig solver = cfg.solver;
  solver.seed = seed;
  AltBiConfig altbi = cfg.altbi;
  altbi.seed = seed;

  std::vector<RunReport> out;
  for (Algorithm a : cfg.algorithms) {
    switch (a) {
      case Algorithm::mu:
        out.push_back(timed_run("mu", run_id, seed, truth, cfg.sparsity_tol,
                                [&] { return run_mu(X, W0, H0, solver); }));
        break;
      case Algorithm::pmu: {
        auto report = timed_run("pmu", run_id, seed, truth, cfg.sparsity_tol,
                                [&] { return run_pmu(X, W0, H0, solver); });
        report.fixed_lambda = solver.fixed_lambda;
        out.push_back(std::move(report));
        break;
      }
      case Algorithm::altbi: {
        auto report = timed_run("altbi", run_id, seed, truth, cfg.sparsity_tol,
                                [&] { return run_altbi(X, W0, H0, altbi); });
        if (report.ok()) {
          report.lambda_init = report.state->lambda_history.front();
          report.lambda_final = report.state->lambda.values();
        }
        out.push_back(std::move(report));
        break;
      }
      case Algorithm::grid:
        for (double g : cfg.grid) {
          SolverConfig grid_cfg = solver;
          grid_cfg.fixed_lambda = g;
          auto report = timed_run(algorithm_label(Algorithm::grid, g), run_id, seed, truth,
                                  cfg.sparsity_tol, [&] { return run_pmu(X, W0, H0, grid_cfg); });
          report.fixed_lambda = g;
          out.push_back(std::move(report));
        }
        break;
    }
  }
  return out;
}

}  // namespace

std::string algorithm_label(Algorithm a, double grid_lambda) {
  if (a == Algorithm::grid) return "grid:" + format_double(grid_lambda);
  return to_string(a);
}

std::vector<std::string> ExperimentResult::fully_failed() const {
  std::vector<std::string> out;
  for (const auto& agg : aggregates) {
    if (agg.runs_ok == 0 && agg.runs_failed > 0) out.push_back(agg.algorithm);
  }
  return out;
}

void score(RunReport& report, const GroundTruth& truth) {
  if (!report.ok() || !report.state) return;
  const auto& st = *report.state;
  report.sir_w = match_components(truth.W_true, st.W);
  report.sir_h = score_with_assignment(truth.H_true.transpose(), st.H.transpose(),
                                       report.sir_w->assignment);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  return run_experiment(cfg, generate(cfg.benchmark));
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, GroundTruth truth) {
  cfg.validate();
  const auto runs = static_cast<std::size_t>(cfg.mc_runs);
  std::vector<std::vector<RunReport>> slots(runs);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < runs; k = next++) slots[k] = run_one(cfg, truth, k);
  };
  const auto n_workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.workers), runs);
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  }

  ExperimentResult result;
  result.truth = std::move(truth);
  for (auto& slot : slots) {
    for (auto& report : slot) result.reports.push_back(std::move(report));
  }
  result.aggregates = aggregate(result.reports);
  return result;
}

std::vector<AlgorithmAggregate> aggregate(const std::vector<RunReport>& reports) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const RunReport*>> groups;
  for (const auto& r : reports) {
    if (!groups.contains(r.algorithm)) order.push_back(r.algorithm);
    groups[r.algorithm].push_back(&r);
  }

  std::vector<AlgorithmAggregate> out;
  for (const auto& label : order) {
    AlgorithmAggregate agg;
    agg.algorithm = label;
    std::vector<double> sir_w, sir_h, sp_w, sp_h, iters;
    for (const RunReport* r : groups[label]) {
      if (!r->ok()) {
        ++agg.runs_failed;
        continue;
      }
      ++agg.runs_ok;
      if (r->sir_w) sir_w.push_back(r->sir_w->mean_db);
      if (r->sir_h) sir_h.push_back(r->sir_h->mean_db);
      sp_w.push_back(r->sparsity_w);
      sp_h.push_back(r->sparsity_h);
      iters.push_back(static_cast<double>(r->iterations));
    }
    if (!sir_w.empty()) agg.sir_w = summarize(sir_w);
    if (!sir_h.empty()) agg.sir_h = summarize(sir_h);
    if (!sp_w.empty()) {
      agg.sparsity_w = summarize(sp_w);
      agg.sparsity_h = summarize(sp_h);
      agg.iterations = summarize(iters);
    }
    out.push_back(std::move(agg));
  }
  return out;
}

}  // namespace hpnmf
