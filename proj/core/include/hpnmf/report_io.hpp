#pragma once

#include "hpnmf/experiment.hpp"

#include <filesystem>
#include <stdexcept>
#include <vector>

namespace hpnmf {

/// Output directory could not be created or a file could not be written.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes the campaign tables into out_dir:
///
///   traces.csv     run_id,algorithm,iter,objective,response
///   sir.csv        run_id,algorithm,factor,component,sir_db
///   sparsity.csv   run_id,algorithm,factor,sparsity_pct
///   lambda.csv     run_id,row_index,lambda_init,lambda_final
///   runs.csv       run_id,algorithm,seed,fixed_lambda,iterations,converged,
///                  final_objective,final_response,status
///   aggregate.csv  algorithm,metric,count,mean,median,q1,q3,min,max
///
/// Every file has a header row and LF line endings. Wall-clock times go to
/// timings.log so the tables depend only on the configuration and seeds.
/// Failed runs appear only in runs.csv and timings.log.
void emit_csv(const std::vector<RunReport>& reports, const std::filesystem::path& out_dir);

/// emit_csv plus aggregate.csv, and factors/ when save_factors is set.
void emit_experiment(const ExperimentResult& result, const ExperimentConfig& cfg);

void write_aggregate_csv(const std::vector<AlgorithmAggregate>& aggregates,
                         const std::filesystem::path& path);

}  // namespace hpnmf
