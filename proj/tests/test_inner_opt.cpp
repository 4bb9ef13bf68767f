#include <doctest.h>

#include <cmath>

#include "bobench/inner_opt.hpp"
#include "test_util.hpp"

using namespace bobench;

TEST_CASE("convex bowl is found to 1e-3") {
  auto score = [](const Vectord& x) {
    return (x - Vectord::Constant(2, 0.5)).squaredNorm();
  };
  RandomStream rng(1);
  const InnerResult res = minimize_over_cube(score, 2, {}, rng);
  CHECK((res.x - Vectord::Constant(2, 0.5)).norm() <= 1e-3);
  CHECK(res.value == score(res.x));
}

TEST_CASE("constant score returns some candidate at that value") {
  auto score = [](const Vectord&) { return 4.25; };
  RandomStream rng(2);
  const InnerResult res = minimize_over_cube(score, 3, {}, rng);
  CHECK(res.value == 4.25);
  for (Index k = 0; k < 3; ++k) {
    CHECK(res.x[k] >= 0.0);
    CHECK(res.x[k] <= 1.0);
  }
}

TEST_CASE("boundary optimum is reachable under projection") {
  auto score = [](const Vectord& x) { return x[0]; };
  RandomStream rng(3);
  const InnerResult res = minimize_over_cube(score, 2, {}, rng);
  CHECK(res.x[0] <= 1e-3);

  // dense-grid oracle at resolution 1e-3 agrees on the attainable minimum
  double grid_best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 1000; ++i)
    grid_best = std::min(grid_best, static_cast<double>(i) / 1000.0);
  CHECK(res.value <= grid_best + 1e-3);
}

TEST_CASE("refinement can only improve on the raw candidate pool") {
  auto score = [](const Vectord& x) {
    return std::sin(7.0 * x[0]) + 0.5 * std::cos(11.0 * x[1]) + x.squaredNorm();
  };
  RandomStream rng(4);
  InnerConfig cfg;
  cfg.n_candidates = 80;
  const InnerResult res = minimize_over_cube(score, 2, cfg, rng);
  double pool_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < cfg.n_candidates; ++i)
    pool_min = std::min(pool_min, res.pool[static_cast<size_t>(i)].score);
  CHECK(res.value <= pool_min);
  CHECK(res.pool.size() == static_cast<size_t>(cfg.n_candidates + cfg.n_refine));
}

TEST_CASE("fixed seed and score give identical results") {
  auto score = [](const Vectord& x) { return std::cos(5.0 * x.sum()); };
  RandomStream a(5), b(5);
  const InnerResult ra = minimize_over_cube(score, 3, {}, a);
  const InnerResult rb = minimize_over_cube(score, 3, {}, b);
  CHECK(ra.x == rb.x);
  CHECK(ra.value == rb.value);
}

TEST_CASE("every refined point stays exactly inside the unit cube") {
  auto score = [](const Vectord& x) { return -(x.sum()); };  // push to corner
  RandomStream rng(6);
  const InnerResult res = minimize_over_cube(score, 4, {}, rng);
  for (const auto& p : res.pool)
    for (Index k = 0; k < 4; ++k) {
      CHECK(p.x[k] >= 0.0);
      CHECK(p.x[k] <= 1.0);
    }
  for (Index k = 0; k < 4; ++k) CHECK(res.x[k] >= 0.999);
}

TEST_CASE("NaN scores are reported with the offending point") {
  auto score = [](const Vectord& x) {
    return x[0] > 0.5 ? std::nan("") : x[0];
  };
  RandomStream rng(7);
  CHECK_THROWS_WITH_AS(minimize_over_cube(score, 1, {}, rng),
                       doctest::Contains("NaN"), std::runtime_error);
}

TEST_CASE("degenerate configuration is rejected") {
  RandomStream rng(8);
  CHECK_THROWS_AS(minimize_over_cube([](const Vectord&) { return 0.0; }, 0,
                                     {}, rng),
                  std::invalid_argument);
}
