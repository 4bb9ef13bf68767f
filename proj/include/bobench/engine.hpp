#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bobench/acquisition.hpp"
#include "bobench/dataset.hpp"
#include "bobench/gp.hpp"
#include "bobench/inner_opt.hpp"
#include "bobench/sampling.hpp"
#include "bobench/testbed.hpp"

namespace bobench {

/// One BO decision as recorded in a trace.
struct IterationRecord {
  int iteration = 0;  // dataset size before this observation
  Vectord x;          // unit cube
  double y = 0.0;
  DecisionKind kind = DecisionKind::exploit;
  double acquisition_value = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> beta_used;
  double signal_variance = 0.0, lengthscale = 0.0, noise_variance = 0.0;
  double wall_ms = 0.0;
  bool duplicate_resampled = false;
  // mastering bookkeeping, absent for baseline policies
  std::optional<Vectord> mastering_exploit_x;
  std::optional<int> mastering_neighborhood;
  std::optional<bool> mastering_inside;
};

/// Full record of one BO run.
struct RunTrace {
  std::string problem;
  AcquisitionPolicy policy;
  int d = 0;
  int n0 = 0;
  int budget = 0;          // N, total evaluations
  int refining_start = 0;  // N1 for mastering runs, otherwise == budget
  double noise_sd = 0.0;
  std::uint64_t master_seed = 0, init_seed = 0, run_seed = 0;
  int run_index = 0;

  Dataset data;  // all evaluated pairs, unit cube
  std::vector<IterationRecord> iterations;
  std::vector<double> incumbent_values;  // after each decision
  Vectord best_x;                        // unit cube
  double best_y = 0.0;
  bool failed = false;
  std::string failure_reason;
};

struct EngineConfig {
  InnerConfig inner;
  FitOptions fit;
  double duplicate_tolerance = 1e-9;
};

/// Algorithm: fit the GP on all data, optimize the policy's acquisition,
/// evaluate, augment, repeat until N evaluations. The initial design is
/// evaluated inside (seeded by trace.init_seed fields supplied by the caller).
RunTrace run_basic(const TestProblem& problem, const AcquisitionPolicy& policy,
                   Index budget, const Design& init, RandomStream& init_rng,
                   RandomStream& run_rng, const EngineConfig& cfg = {});

/// Two-phase loop for the mastering policy: adaptive exploit/explore
/// decisions until N1 evaluations, then pure GP-mean refinement until N1+N2.
RunTrace run_mastering(const TestProblem& problem,
                       const AcquisitionPolicy& policy, Index n1, Index n2,
                       const Design& init, RandomStream& init_rng,
                       RandomStream& run_rng, const EngineConfig& cfg = {});

}  // namespace bobench
