#include "hpnmf/report_io.hpp"

#include "hpnmf/csv.hpp"

#include <algorithm>
#include <fstream>
#include <string>

namespace hpnmf {

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw OutputError("write failed for " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw OutputError("cannot create " + dir.string() + ": " + ec.message());
}

std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

void write_traces(const std::vector<RunReport>& reports, const fs::path& path) {
  auto out = open_out(path);
  out << "run_id,algorithm,iter,objective,response\n";
  for (const auto& r : reports) {
    if (!r.ok()) continue;
    const auto len = std::min(r.objective_trace.size(), r.response_trace.size());
    for (std::size_t k = 0; k < len; ++k) {
      out << r.run_id << ',' << r.algorithm << ',' << k << ',' << format_double(r.objective_trace[k])
          << ',' << format_double(r.response_trace[k]) << '\n';
    }
  }
  finish(out, path);
}

void write_sir_rows(std::ostream& out, const RunReport& r, const char* factor, const SirReport& s) {
  for (Index c = 0; c < s.per_component_db.size(); ++c) {
    out << r.run_id << ',' << r.algorithm << ',' << factor << ',' << c << ','
        << format_double(s.per_component_db[c]) << '\n';
  }
}

void write_sir(const std::vector<RunReport>& reports, const fs::path& path) {
  auto out = open_out(path);
  out << "run_id,algorithm,factor,component,sir_db\n";
  for (const auto& r : reports) {
    if (!r.ok()) continue;
    if (r.sir_w) write_sir_rows(out, r, "W", *r.sir_w);
    if (r.sir_h) write_sir_rows(out, r, "H", *r.sir_h);
  }
  finish(out, path);
}

void write_sparsity(const std::vector<RunReport>& reports, const fs::path& path) {
  auto out = open_out(path);
  out << "run_id,algorithm,factor,sparsity_pct\n";
  for (const auto& r : reports) {
    if (!r.ok()) continue;
    out << r.run_id << ',' << r.algorithm << ",W," << format_double(r.sparsity_w) << '\n';
    out << r.run_id << ',' << r.algorithm << ",H," << format_double(r.sparsity_h) << '\n';
  }
  finish(out, path);
}

void write_lambda(const std::vector<RunReport>& reports, const fs::path& path) {
  auto out = open_out(path);
  out << "run_id,row_index,lambda_init,lambda_final\n";
  for (const auto& r : reports) {
    if (!r.ok() || !r.lambda_init || !r.lambda_final) continue;
    const auto& a = *r.lambda_init;
    const auto& b = *r.lambda_final;
    for (Index i = 0; i < std::min(a.size(), b.size()); ++i) {
      out << r.run_id << ',' << i << ',' << format_double(a[i]) << ',' << format_double(b[i]) << '\n';
    }
  }
  finish(out, path);
}

void write_runs(const std::vector<RunReport>& reports, const fs::path& path) {
  auto out = open_out(path);
  out << "run_id,algorithm,seed,fixed_lambda,iterations,converged,final_objective,final_response,"
         "status\n";
  for (const auto& r : reports) {
    out << r.run_id << ',' << r.algorithm << ',' << r.seed << ','
        << (r.fixed_lambda ? format_double(*r.fixed_lambda) : std::string()) << ',';
    if (r.ok()) {
      out << r.iterations << ',' << (r.converged ? 1 : 0) << ',' << format_double(r.final_objective)
          << ',' << format_double(r.final_response) << ",ok\n";
    } else {
      out << ",,,," << sanitize("failed: " + r.error) << '\n';
    }
  }
  finish(out, path);
}

void write_timings(const std::vector<RunReport>& reports, const fs::path& path) {
  auto out = open_out(path);
  for (const auto& r : reports) {
    out << "run " << r.run_id << ' ' << r.algorithm << ' ' << r.wall_seconds << " s"
        << (r.ok() ? "" : " (failed)") << '\n';
  }
  finish(out, path);
}

void write_summary_row(std::ostream& out, const std::string& algorithm, const char* metric,
                       const Summary& s) {
  out << algorithm << ',' << metric << ',' << s.count << ',' << format_double(s.mean) << ','
      << format_double(s.median) << ',' << format_double(s.q1) << ',' << format_double(s.q3) << ','
      << format_double(s.min) << ',' << format_double(s.max) << '\n';
}

}  // namespace

void emit_csv(const std::vector<RunReport>& reports, const fs::path& out_dir) {
  ensure_dir(out_dir);
  write_traces(reports, out_dir / "traces.csv");
  write_sir(reports, out_dir / "sir.csv");
  write_sparsity(reports, out_dir / "sparsity.csv");
  write_lambda(reports, out_dir / "lambda.csv");
  write_runs(reports, out_dir / "runs.csv");
  write_timings(reports, out_dir / "timings.log");
}

void write_aggregate_csv(const std::vector<AlgorithmAggregate>& aggregates, const fs::path& path) {
  auto out = open_out(path);
  out << "algorithm,metric,count,mean,median,q1,q3,min,max\n";
  for (const auto& a : aggregates) {
    if (a.runs_ok == 0) continue;
    write_summary_row(out, a.algorithm, "sir_w", a.sir_w);
    write_summary_row(out, a.algorithm, "sir_h", a.sir_h);
    write_summary_row(out, a.algorithm, "sparsity_w", a.sparsity_w);
    write_summary_row(out, a.algorithm, "sparsity_h", a.sparsity_h);
    write_summary_row(out, a.algorithm, "iterations", a.iterations);
  }
  finish(out, path);
}

void emit_experiment(const ExperimentResult& result, const ExperimentConfig& cfg) {
  emit_csv(result.reports, cfg.output_dir);
  write_aggregate_csv(result.aggregates, cfg.output_dir / "aggregate.csv");
  if (!cfg.save_factors) return;

  const fs::path dir = cfg.output_dir / "factors";
  ensure_dir(dir);
  write_matrix_csv(dir / "W_true.csv", result.truth.W_true.values());
  write_matrix_csv(dir / "H_true.csv", result.truth.H_true.values());
  for (const auto& r : result.reports) {
    if (!r.ok() || !r.state) continue;
    std::string stem = "run" + std::to_string(r.run_id) + "_" + r.algorithm;
    std::replace(stem.begin(), stem.end(), ':', '_');
    write_matrix_csv(dir / (stem + "_W.csv"), r.state->W.values());
    write_matrix_csv(dir / (stem + "_H.csv"), r.state->H.values());
  }
}

}  // namespace hpnmf
