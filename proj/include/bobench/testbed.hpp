#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bobench/rng.hpp"
#include "bobench/types.hpp"

namespace bobench {

/// Box-bounded search space with the affine map to/from the unit hypercube.
struct SearchSpace {
  Vectord lower;
  Vectord upper;

  SearchSpace() = default;
  SearchSpace(Vectord lo, Vectord hi);

  Index dim() const { return lower.size(); }

  Vectord to_unit(const Vectord& x) const {
    return (x - lower).cwiseQuotient(upper - lower);
  }
  Vectord from_unit(const Vectord& u) const {
    return lower + u.cwiseProduct(upper - lower);
  }
};

/// A global-optimization benchmark problem. Observations follow the
/// minimization convention: maximization objectives are negated on
/// construction, together with their optimum value.
struct TestProblem {
  std::string name;
  SearchSpace space;
  std::function<double(const Vectord&)> objective;  // original units, raw sign
  double y_star = 0.0;      // optimum under the minimization convention
  Vectord x_star;           // a documented optimizer, original units
  bool minimize = true;
  double noise_sd = 0.0;

  Index dim() const { return space.dim(); }

  /// Objective after sign normalization (always to be minimized).
  double normalized_objective(const Vectord& x) const {
    const double f = objective(x);
    return minimize ? f : -f;
  }
};

/// Observe y = f(x) + eps, eps ~ N(0, noise_sd^2); sign-normalized.
/// Throws std::domain_error naming the violated coordinate if x is outside
/// the box.
double evaluate(const TestProblem& problem, const Vectord& x, RandomStream& rng);

/// The ten benchmark problems with standard bounds and known optima.
std::vector<TestProblem> catalog();

/// A catalog problem by name. Dimension overrides are accepted only for the
/// dimension-parametric functions (Rosenbrock, Schwefel, StybTang).
TestProblem make_problem(const std::string& name,
                         std::optional<int> dim_override = std::nullopt,
                         double noise_sd = 0.0);

}  // namespace bobench
