#pragma once

#include <stdexcept>

#include "bobench/rng.hpp"
#include "bobench/types.hpp"

namespace bobench {

/// A set of n points in the unit hypercube [0,1)^d, one row per point.
struct Design {
  Matrixd points;
  Index n() const { return points.rows(); }
  Index d() const { return points.cols(); }
};

/// Random-permutation Latin Hypercube design: per dimension, each of the n
/// equal-width bins holds exactly one point, jittered uniformly within its bin.
inline Design lhs(Index n, Index d, RandomStream& rng) {
  if (n < 1 || d < 1) throw std::invalid_argument("lhs: n and d must be >= 1");
  Matrixd pts(n, d);
  for (Index k = 0; k < d; ++k) {
    const auto perm = rng.permutation(static_cast<int>(n));
    for (Index i = 0; i < n; ++i)
      pts(i, k) = (perm[i] + rng.uniform()) / static_cast<double>(n);
  }
  return Design{std::move(pts)};
}

/// n i.i.d. uniform points in [0,1)^d.
inline Design uniform_design(Index n, Index d, RandomStream& rng) {
  if (n < 1 || d < 1)
    throw std::invalid_argument("uniform_design: n and d must be >= 1");
  Matrixd pts(n, d);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < d; ++k) pts(i, k) = rng.uniform();
  return Design{std::move(pts)};
}

/// Seed of the initial-design stream for run r of a problem. Independent of
/// the policy, so every policy in one (problem, run) shares the same design.
inline std::uint64_t derive_init_seed(std::uint64_t master_seed,
                                      std::string_view problem, int run) {
  return detail::mix(detail::mix(detail::mix(master_seed,
                                             detail::hash_str(problem)),
                                 static_cast<std::uint64_t>(run)),
                     0x696e6974ULL);  // "init"
}

/// Seed of the per-run decision stream (policy-specific).
inline std::uint64_t derive_run_seed(std::uint64_t master_seed,
                                     std::string_view problem,
                                     std::string_view policy, int run) {
  return detail::mix(
      detail::mix(detail::mix(detail::mix(master_seed,
                                          detail::hash_str(problem)),
                              static_cast<std::uint64_t>(run)),
                  detail::hash_str(policy)),
      0x72756eULL);  // "run"
}

}  // namespace bobench
