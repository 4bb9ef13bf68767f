#pragma once

#include <functional>
#include <vector>

#include "bobench/rng.hpp"
#include "bobench/types.hpp"

namespace bobench {

/// Inner-loop optimizer budget: LHS candidate sweep size and the number of
/// best candidates handed to bounded local refinement.
struct InnerConfig {
  int n_candidates = 0;  // 0 -> 100 * d
  int n_refine = 5;
  int max_local_steps = 50;
  double tolerance = 1e-6;
};

struct ScoredPoint {
  Vectord x;
  double score;
};

struct InnerResult {
  Vectord x;
  double value;
  std::vector<ScoredPoint> pool;  // LHS candidates plus refined points
};

/// Minimize a scalar score over [0,1]^d: score an LHS candidate sweep, then
/// refine the n_refine best candidates with projected quasi-Newton descent.
/// Ties among candidates break toward the lowest candidate index; refinement
/// never leaves the box. Throws on a score returning NaN, naming the point.
InnerResult minimize_over_cube(const std::function<double(const Vectord&)>& score,
                               Index d, const InnerConfig& cfg,
                               RandomStream& rng);

}  // namespace bobench
