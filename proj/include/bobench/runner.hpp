#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "bobench/config.hpp"
#include "bobench/engine.hpp"
#include "bobench/metrics.hpp"

namespace bobench {

struct ExperimentResult {
  int completed = 0;
  int skipped = 0;  // already on disk from an earlier run
  int failed = 0;
  std::filesystem::path out_dir;
};

/// Execute every (problem, policy, run) triple of the config with a bounded
/// worker pool; traces land under out_dir/<problem>/<policy>/run_XXX.jsonl,
/// written atomically. Completed triples from an interrupted experiment are
/// skipped. Summaries and the manifest are (re)written at the end.
ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream& log);

/// One fully deterministic run of a single triple (used by the runner and by
/// tests). Seeds derive from (master_seed, problem, policy label, run).
RunTrace execute_run(const ExperimentConfig& cfg, const TestProblem& problem,
                     const AcquisitionPolicy& policy, int run);

/// Per-policy end-of-run aggregates for one problem.
struct PolicySummary {
  std::string policy;
  int runs = 0;
  std::vector<std::vector<double>> gap_curves;  // one per run
  std::vector<double> mean_gap_curve;
  double a_gap = 0.0;  // area under the mean GAP curve
  std::vector<double> final_gaps;
  std::vector<double> discrepancies;  // end-of-run D_L2 per run
  double d_l2_mean = 0.0;
  bool dominated = false;
};

/// Recompute all per-problem summaries from the traces on disk and rewrite
/// summary.csv files. Throws if traces are missing.
std::vector<std::vector<PolicySummary>> write_summaries(
    const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

/// Emit per-problem plot-data files (mean GAP series, discrepancy
/// distributions, Pareto scatter) from a completed bundle.
void emit_plots(const ExperimentConfig& cfg,
                const std::filesystem::path& out_dir, std::ostream& log);

struct ReplayReport {
  bool ok = false;
  bool noisy = false;
  int n_checked = 0;
  double max_abs_deviation = 0.0;
  int worst_row = -1;
  std::string status;
};

/// Re-evaluate the objective at every recorded point of a noise-free trace
/// and compare against the recorded observations (tolerance 1e-9).
ReplayReport replay_trace(const std::filesystem::path& trace_file);

/// Load the config embedded in a bundle's manifest.
ExperimentConfig load_bundle_config(const std::filesystem::path& out_dir);

std::filesystem::path trace_path(const std::filesystem::path& out_dir,
                                 const std::string& problem,
                                 const std::string& policy_label, int run);

}  // namespace bobench
