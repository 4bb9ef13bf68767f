#pragma once

#include <functional>

#include "bobench/types.hpp"

namespace bobench {

struct LocalSearchResult {
  Vectord x;
  double value = 0.0;
  int steps = 0;
};

/// Bounded local refinement: quasi-Newton (BFGS) descent with
/// central-difference gradients (step 1e-6) and projection onto the box
/// [lo, hi]. Stops when the projected-gradient norm drops below tol or after
/// max_steps iterations. Never evaluates f outside the box.
LocalSearchResult projected_bfgs(const std::function<double(const Vectord&)>& f,
                                 const Vectord& lo, const Vectord& hi,
                                 const Vectord& x0, int max_steps, double tol);

}  // namespace bobench
