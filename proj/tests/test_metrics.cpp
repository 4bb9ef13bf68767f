#include <doctest.h>

#include <cmath>

#include "bobench/metrics.hpp"
#include "bobench/sampling.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace bobench;

namespace {

// hand-built trace: initial observations then decision observations
RunTrace toy_trace(std::vector<double> init_y, std::vector<double> decision_y) {
  RunTrace t;
  t.n0 = static_cast<int>(init_y.size());
  const Index n = static_cast<Index>(init_y.size() + decision_y.size());
  t.budget = static_cast<int>(n);
  t.d = 1;
  t.data.n0 = t.n0;
  t.data.X = Matrixd::Zero(n, 1);
  for (Index i = 0; i < n; ++i) t.data.X(i, 0) = static_cast<double>(i) / 64.0;
  t.data.y.resize(n);
  for (size_t i = 0; i < init_y.size(); ++i)
    t.data.y[static_cast<Index>(i)] = init_y[i];
  for (size_t i = 0; i < decision_y.size(); ++i) {
    t.data.y[static_cast<Index>(init_y.size() + i)] = decision_y[i];
    IterationRecord rec;
    rec.iteration = static_cast<int>(init_y.size() + i);
    rec.x = t.data.X.row(rec.iteration).transpose();
    rec.y = decision_y[i];
    t.iterations.push_back(rec);
  }
  return t;
}

}  // namespace

TEST_CASE("gap curve basic arithmetic") {
  // y0+ = 10, y* = 0, best-so-far 4 -> 0.6
  const RunTrace t = toy_trace({10.0, 12.0}, {7.0, 4.0, 5.0});
  const GapCurve curve = gap_curve(t, 0.0);
  REQUIRE(curve.values.size() == 3);
  CHECK(close_abs(curve.values[0], 0.3, 1e-15));
  CHECK(close_abs(curve.values[1], 0.6, 1e-15));
  CHECK(close_abs(curve.values[2], 0.6, 1e-15));  // no further improvement
}

TEST_CASE("gap reaches one when the optimum is hit and stays there") {
  const RunTrace t = toy_trace({10.0}, {5.0, 0.0, 3.0});
  const GapCurve curve = gap_curve(t, 0.0);
  CHECK(curve.values[1] == 1.0);
  CHECK(curve.values[2] == 1.0);
}

TEST_CASE("no improvement over the initial best gives an all-zero curve") {
  const RunTrace t = toy_trace({1.0, 2.0}, {3.0, 4.0});
  const GapCurve curve = gap_curve(t, 0.0);
  for (double v : curve.values) CHECK(v == 0.0);
}

TEST_CASE("a degenerate start (already optimal) flags an all-one curve") {
  const RunTrace t = toy_trace({0.0, 2.0}, {3.0, 4.0});
  const GapCurve curve = gap_curve(t, 0.0);
  CHECK(curve.degenerate);
  for (double v : curve.values) CHECK(v == 1.0);
}

TEST_CASE("gap curves are monotone and bounded") {
  RandomStream rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> init(4), dec(10);
    for (auto& v : init) v = rng.normal() * 10.0;
    for (auto& v : dec) v = rng.normal() * 10.0;
    const GapCurve curve = gap_curve(toy_trace(init, dec), -25.0);
    double prev = 0.0;
    for (double v : curve.values) {
      CHECK(v >= prev - 1e-15);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      prev = v;
    }
  }
}

TEST_CASE("a_gap is the curve mean") {
  CHECK(a_gap(std::vector<double>{1.0, 1.0, 1.0}) == 1.0);
  CHECK(a_gap(std::vector<double>{0.0, 0.0}) == 0.0);
  CHECK(close_abs(a_gap(std::vector<double>{0.0, 0.5, 1.0, 1.0}), 0.625, 1e-15));
  CHECK_THROWS_AS(a_gap(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("pointwise-dominated curves have smaller a_gap") {
  const std::vector<double> hi{0.2, 0.5, 0.9, 1.0};
  const std::vector<double> lo{0.1, 0.4, 0.8, 0.9};
  CHECK(a_gap(lo) <= a_gap(hi));
}

TEST_CASE("discrepancy closed form at m=1, d=1, x=0.5") {
  Matrixd X(1, 1);
  X << 0.5;
  // D^2 = 0.25 - 0.25 + 1/12
  CHECK(close_abs(l2_discrepancy(X), std::sqrt(1.0 / 12.0), 1e-12));
}

TEST_CASE("discrepancy closed form matches the Monte-Carlo oracle") {
  RandomStream rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const Index m = 3 + static_cast<Index>(rng.below(20));
    const Index d = 1 + static_cast<Index>(rng.below(3));
    const Design pts = uniform_design(m, d, rng);
    const double analytic = l2_discrepancy(pts.points);
    RandomStream mc_rng(1000 + static_cast<std::uint64_t>(trial));
    const auto mc = oracle::mc_discrepancy(pts.points, 200000, mc_rng);
    CHECK(std::abs(analytic * analytic - mc.d2) <= 3.0 * mc.stderr_d2);
  }
}

TEST_CASE("equispaced midpoints beat i.i.d. uniform points in d=1") {
  const Index m = 16;
  Matrixd mid(m, 1);
  for (Index i = 0; i < m; ++i)
    mid(i, 0) = (2.0 * static_cast<double>(i) + 1.0) / (2.0 * static_cast<double>(m));
  const double d_mid = l2_discrepancy(mid);
  int wins = 0;
  for (int trial = 0; trial < 200; ++trial) {
    RandomStream rng(3000 + static_cast<std::uint64_t>(trial));
    const Design pts = uniform_design(m, 1, rng);
    if (d_mid < l2_discrepancy(pts.points)) ++wins;
  }
  CHECK(wins >= 190);  // >= 95% of trials
}

TEST_CASE("discrepancy is invariant under point and dimension permutations") {
  RandomStream rng(4);
  const Design pts = uniform_design(12, 3, rng);
  const double base = l2_discrepancy(pts.points);

  Matrixd rows = pts.points;
  rows.row(0).swap(rows.row(7));
  rows.row(3).swap(rows.row(11));
  CHECK(close_abs(l2_discrepancy(rows), base, 1e-14));

  Matrixd dims(12, 3);
  dims.col(0) = pts.points.col(2);
  dims.col(1) = pts.points.col(0);
  dims.col(2) = pts.points.col(1);
  CHECK(close_abs(l2_discrepancy(dims), base, 1e-14));
}

TEST_CASE("discrepancy of growing uniform samples trends to zero") {
  std::vector<double> small, large;
  for (int trial = 0; trial < 50; ++trial) {
    RandomStream rng(5000 + static_cast<std::uint64_t>(trial));
    small.push_back(l2_discrepancy(uniform_design(10, 2, rng).points));
    large.push_back(l2_discrepancy(uniform_design(1000, 2, rng).points));
  }
  std::sort(small.begin(), small.end());
  std::sort(large.begin(), large.end());
  CHECK(large[25] < small[25]);  // median comparison
}

TEST_CASE("discrepancy input validation") {
  Matrixd bad(1, 1);
  bad << 1.5;
  CHECK_THROWS_AS(l2_discrepancy(bad), std::invalid_argument);
  CHECK_THROWS_AS(l2_discrepancy(Matrixd(0, 2)), std::invalid_argument);
}

TEST_CASE("pareto dominance rules") {
  std::vector<ParetoPoint> pts;
  pts.push_back({"a", 1.0, 0.1, false});
  pts.push_back({"b", 0.5, 0.2, false});
  annotate_dominance(pts);
  CHECK(!pts[0].dominated);
  CHECK(pts[1].dominated);

  std::vector<ParetoPoint> single{{"only", 0.3, 0.4, false}};
  const auto front = pareto_front(single);
  REQUIRE(front.size() == 1);
  CHECK(!front[0].dominated);

  // exact duplicates: no strict inequality, both stay
  std::vector<ParetoPoint> dup{{"x", 0.5, 0.5, false}, {"y", 0.5, 0.5, false}};
  annotate_dominance(dup);
  CHECK(!dup[0].dominated);
  CHECK(!dup[1].dominated);
}

TEST_CASE("pareto front is idempotent and sorted by a_gap") {
  std::vector<ParetoPoint> pts;
  pts.push_back({"a", 0.9, 0.30, false});
  pts.push_back({"b", 0.7, 0.10, false});
  pts.push_back({"c", 0.8, 0.20, false});
  pts.push_back({"d", 0.6, 0.25, false});  // dominated by b and c
  const auto front = pareto_front(pts);
  REQUIRE(front.size() == 3);
  CHECK(front[0].policy == "b");
  CHECK(front[1].policy == "c");
  CHECK(front[2].policy == "a");
  std::vector<ParetoPoint> again(front.begin(), front.end());
  const auto front2 = pareto_front(again);
  REQUIRE(front2.size() == front.size());
  for (size_t i = 0; i < front.size(); ++i)
    CHECK(front2[i].policy == front[i].policy);
}

TEST_CASE("pareto flags agree with the brute-force oracle") {
  RandomStream rng(6);
  std::vector<ParetoPoint> pts;
  std::vector<double> first, second;
  for (int i = 0; i < 25; ++i) {
    ParetoPoint p{"p" + std::to_string(i), rng.uniform(), rng.uniform(), false};
    // oracle works in (minimize, maximize): flip a_gap
    first.push_back(p.d_l2);
    second.push_back(p.a_gap);
    pts.push_back(p);
  }
  annotate_dominance(pts);
  const auto dom = oracle::dominated_min_max(first, second);
  for (size_t i = 0; i < pts.size(); ++i) CHECK(pts[i].dominated == dom[i]);
}

TEST_CASE("regret accumulates decision-wise differences to the optimum") {
  const RunTrace hits = toy_trace({3.0}, {0.0, 0.0});
  const RegretSummary r0 = regret(hits, 0.0);
  CHECK(r0.cumulative == 0.0);

  const RunTrace flat = toy_trace({3.0}, std::vector<double>(10, 1.0));
  const RegretSummary r1 = regret(flat, 0.0);
  CHECK(close_abs(r1.cumulative, 10.0, 1e-15));
  CHECK(close_abs(r1.average, 1.0, 1e-15));

  // extending a run with optimal decisions lowers the average regret
  const RunTrace longer =
      toy_trace({3.0}, [] {
        std::vector<double> v(10, 1.0);
        v.resize(20, 0.0);
        return v;
      }());
  CHECK(regret(longer, 0.0).average < r1.average);
}
