#include "cli.hpp"

#include "hpnmf/config.hpp"
#include "hpnmf/csv.hpp"
#include "hpnmf/experiment.hpp"
#include "hpnmf/generators.hpp"
#include "hpnmf/gradcheck.hpp"
#include "hpnmf/mu.hpp"
#include "hpnmf/report_io.hpp"

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace hpnmf::cli {

namespace {

namespace fs = std::filesystem;

constexpr double kFdTolerance = 1e-4;
constexpr double kRmdTolerance = 1e-10;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string algo;
  bool quiet = false;
};

void add_common(CLI::App& sub, CommonFlags& f) {
  sub.add_option("--config", f.config, "Experiment config (JSON, comments allowed)");
  sub.add_option("--seed", f.seed, "Base seed");
  sub.add_option("--out", f.out, "Output directory");
  sub.add_option("--algo", f.algo, "Comma-separated algorithms: mu,pmu,altbi,grid");
  sub.add_flag("--quiet", f.quiet, "Only print errors");
}

ExperimentConfig resolve_config(const CommonFlags& f) {
  ExperimentConfig cfg = f.config.empty() ? desk_profile() : load_config(f.config);
  if (f.seed) cfg.base_seed = *f.seed;
  if (!f.out.empty()) cfg.output_dir = f.out;
  if (!f.algo.empty()) {
    try {
      cfg.algorithms = parse_algorithm_list(f.algo);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("--algo: ") + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw OutputError("cannot write " + path.string());
}

void print_aggregates(const ExperimentResult& result) {
  std::cout << "algorithm  ok/failed  SIR(W) mean  SIR(H) mean  Sp(W) med  Sp(H) med\n";
  for (const auto& a : result.aggregates) {
    std::cout << a.algorithm << "  " << a.runs_ok << '/' << a.runs_failed;
    if (a.runs_ok > 0) {
      std::cout << "  " << a.sir_w.mean << "  " << a.sir_h.mean << "  " << a.sparsity_w.median
                << "  " << a.sparsity_h.median;
    }
    std::cout << '\n';
  }
}

int cmd_run(const CommonFlags& f) {
  const ExperimentConfig cfg = resolve_config(f);
  const ExperimentResult result = run_experiment(cfg);
  emit_experiment(result, cfg);
  write_text(cfg.output_dir / "config.json", dump_config(cfg));
  if (!f.quiet) {
    print_aggregates(result);
    std::cout << "wrote " << cfg.output_dir.string() << '\n';
  }
  const auto failed = result.fully_failed();
  for (const auto& name : failed) spdlog::error("every run of {} failed", name);
  return failed.empty() ? ok : runtime;
}

int cmd_sweep(const CommonFlags& f) {
  ExperimentConfig cfg = resolve_config(f);
  const GroundTruth truth = generate(cfg.benchmark);
  const auto& X = truth.Y;
  const auto [W0, H0] = random_initializers(X.rows(), X.cols(), cfg.benchmark.r, cfg.base_seed);
  SolverConfig solver = cfg.solver;
  solver.seed = cfg.base_seed;
  auto reports = grid_sweep(X, W0, H0, solver, cfg.grid);
  for (auto& r : reports) {
    r.algorithm = algorithm_label(Algorithm::grid, r.fixed_lambda.value_or(0.0));
    score(r, truth);
  }
  emit_csv(reports, cfg.output_dir);
  write_aggregate_csv(aggregate(reports), cfg.output_dir / "aggregate.csv");
  if (!f.quiet) {
    std::cout << "lambda  final_response  SIR(W)  SIR(H)\n";
    for (const auto& r : reports) {
      std::cout << r.fixed_lambda.value_or(0.0) << "  ";
      if (r.ok()) {
        std::cout << r.final_response << "  " << r.sir_w->mean_db << "  " << r.sir_h->mean_db << '\n';
      } else {
        std::cout << "failed: " << r.error << '\n';
      }
    }
  }
  const bool all_failed = std::none_of(reports.begin(), reports.end(), [](const RunReport& r) { return r.ok(); });
  return all_failed ? runtime : ok;
}

int cmd_gradcheck(const CommonFlags& f, int instances) {
  GradcheckOptions opts;
  opts.instances = instances;
  if (f.seed) opts.seed = *f.seed;
  const GradcheckReport rep = run_gradcheck(opts);
  const bool pass = rep.fmd_vs_fd <= kFdTolerance && rep.fmd_vs_rmd <= kRmdTolerance;
  if (!f.quiet) {
    std::cout << "instances            " << rep.instances << '\n'
              << "max rel FMD vs FD    " << rep.fmd_vs_fd << '\n'
              << "max rel FMD vs RMD   " << rep.fmd_vs_rmd << '\n'
              << "max rel A vs FD      " << rep.jacobian_a << '\n'
              << "max rel B vs FD      " << rep.jacobian_b << '\n'
              << "max rel G vs FD      " << rep.outer_g << '\n'
              << (pass ? "PASS" : "FAIL") << '\n';
  }
  return pass ? ok : runtime;
}

struct GenFlags {
  std::string kind = "A";
  Index n = 200;
  Index m = 50;
  Index r = 4;
  double alpha_h = 0.0;
  std::string signals;
};

int cmd_gen(const CommonFlags& f, const GenFlags& g) {
  BenchmarkSpec spec;
  try {
    spec.kind = parse_benchmark_kind(g.kind);
    spec.n = g.n;
    spec.m = g.m;
    spec.r = g.r;
    spec.alpha_h = g.alpha_h;
    if (f.seed) spec.seed = *f.seed;
    if (!g.signals.empty()) spec.d_signals_path = g.signals;
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const GroundTruth truth = generate(spec);
  const fs::path out = f.out.empty() ? fs::path(".") : fs::path(f.out);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw OutputError("cannot create " + out.string() + ": " + ec.message());
  write_matrix_csv(out / "X.csv", truth.Y.values());
  write_matrix_csv(out / "W_true.csv", truth.W_true.values());
  write_matrix_csv(out / "H_true.csv", truth.H_true.values());
  if (!f.quiet) std::cout << "wrote X.csv, W_true.csv, H_true.csv to " << out.string() << '\n';
  return ok;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Penalized KL-NMF with bi-level per-row l1 tuning", "hpnmf"};
  app.require_subcommand(1);

  CommonFlags common;
  int instances = 100;
  GenFlags gen;

  auto* run = app.add_subcommand("run", "Run a Monte-Carlo campaign from a config file");
  add_common(*run, common);
  auto* sweep = app.add_subcommand("sweep", "Fixed-lambda P-MU over the config grid (one run)");
  add_common(*sweep, common);
  auto* grad = app.add_subcommand("gradcheck", "Compare FMD against RMD and finite differences");
  add_common(*grad, common);
  grad->add_option("--instances", instances, "Random instances")->check(CLI::PositiveNumber);
  auto* g = app.add_subcommand("gen", "Write a benchmark X, W_true, H_true as CSV");
  add_common(*g, common);
  g->add_option("--kind", gen.kind, "Benchmark A, B, C or D");
  g->add_option("--n", gen.n, "Rows of X");
  g->add_option("--m", gen.m, "Columns of X");
  g->add_option("--r", gen.r, "Rank");
  g->add_option("--alpha-h", gen.alpha_h, "Fraction of zeros in H (B, C)");
  g->add_option("--signals", gen.signals, "Reflectance CSV (D)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return usage;
  }

  if (common.quiet) spdlog::set_level(spdlog::level::err);
  try {
    if (*run) return cmd_run(common);
    if (*sweep) return cmd_sweep(common);
    if (*grad) return cmd_gradcheck(common, instances);
    if (*g) return cmd_gen(common, gen);
  } catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return config;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return runtime;
  }
  return usage;
}

}  // namespace hpnmf::cli
