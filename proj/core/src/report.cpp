#include "hpnmf/report.hpp"

namespace hpnmf {

RunReport make_report(std::string algorithm, FactorizationState state, double sparsity_tol) {
  RunReport report;
  report.algorithm = std::move(algorithm);
  report.iterations = state.iter;
  report.converged = state.converged;
  if (!state.objective_trace.empty()) report.final_objective = state.objective_trace.back();
  if (!state.response_trace.empty()) report.final_response = state.response_trace.back();
  report.objective_trace = state.objective_trace;
  report.response_trace = state.response_trace;
  report.sparsity_w = sparsity(state.W, sparsity_tol);
  report.sparsity_h = sparsity(state.H, sparsity_tol);
  report.state = std::move(state);
  return report;
}

}  // namespace hpnmf
