#include <doctest.h>

#include "bobench/sampling.hpp"
#include "bobench/testbed.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace bobench;

TEST_CASE("catalog holds the ten problems with their dimensions") {
  const auto problems = catalog();
  REQUIRE(problems.size() == 10);
  const std::vector<std::pair<std::string, int>> expected = {
      {"Branin", 2},    {"Camel3", 2},    {"Camel6", 2},    {"GoldPr", 2},
      {"Hartmann3", 3}, {"Hartmann4", 4}, {"Hartmann6", 6}, {"Rosenbrock", 2},
      {"Schwefel", 2},  {"StybTang", 2}};
  for (const auto& [name, d] : expected) {
    bool found = false;
    for (const auto& p : problems)
      if (p.name == name && p.dim() == d) found = true;
    CHECK_MESSAGE(found, name);
  }
}

TEST_CASE("objective at the documented optimizer equals y_star") {
  for (const auto& p : catalog()) {
    CAPTURE(p.name);
    CHECK(close_abs(p.normalized_objective(p.x_star), p.y_star, 1e-6));
    // strictly inside the box
    for (Index k = 0; k < p.dim(); ++k) {
      CHECK(p.x_star[k] > p.space.lower[k]);
      CHECK(p.x_star[k] < p.space.upper[k]);
    }
  }
}

TEST_CASE("Branin optimum matches independent numeric minimization") {
  const TestProblem branin = make_problem("Branin");
  RandomStream rng(3);
  const auto [x, fx] = oracle::pattern_search_minimize(
      branin.objective, branin.space.lower, branin.space.upper, 200, rng);
  CHECK(close_abs(fx, 0.397887, 1e-5));
  CHECK(close_abs(branin.y_star, fx, 1e-5));
}

TEST_CASE("catalog optima match independent numeric minimization (d=2)") {
  for (const std::string name : {"Camel3", "Camel6", "GoldPr", "StybTang"}) {
    const TestProblem p = make_problem(name);
    RandomStream rng(17);
    const auto [x, fx] = oracle::pattern_search_minimize(
        p.objective, p.space.lower, p.space.upper, 300, rng);
    CAPTURE(name);
    CHECK(close_abs(p.y_star, fx, 1e-5));
  }
}

TEST_CASE("StybTang at the origin is zero") {
  const TestProblem p = make_problem("StybTang");
  CHECK(p.objective(Vectord::Zero(2)) == 0.0);
}

TEST_CASE("noise-free evaluation is deterministic") {
  for (const auto& p : catalog()) {
    RandomStream rng(5);
    const Vectord mid = 0.5 * (p.space.lower + p.space.upper);
    const double y1 = evaluate(p, mid, rng);
    const double y2 = evaluate(p, mid, rng);
    CHECK(y1 == y2);
  }
}

TEST_CASE("noisy evaluation adds N(0, sd^2)") {
  TestProblem p = make_problem("Branin", std::nullopt, 0.5);
  RandomStream rng(6);
  const Vectord mid = 0.5 * (p.space.lower + p.space.upper);
  const double base = p.objective(mid);
  double sum = 0.0, sum_sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double e = evaluate(p, mid, rng) - base;
    sum += e;
    sum_sq += e * e;
  }
  CHECK(close_abs(sum / n, 0.0, 0.02));
  CHECK(sum_sq / n == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("out-of-bounds evaluation names the violated coordinate") {
  const TestProblem p = make_problem("Branin");
  RandomStream rng(1);
  Vectord x(2);
  x << 0.0, 16.0;  // second coordinate above its bound
  try {
    evaluate(p, x, rng);
    FAIL("expected domain_error");
  } catch (const std::domain_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("coordinate 1") != std::string::npos);
  }
}

TEST_CASE("unit-cube rescaling round-trips within 1e-12") {
  RandomStream rng(8);
  for (const auto& p : catalog()) {
    const Design design = uniform_design(1000 / 10, p.dim(), rng);
    for (Index i = 0; i < design.n(); ++i) {
      const Vectord u = design.points.row(i).transpose();
      const Vectord back = p.space.to_unit(p.space.from_unit(u));
      CHECK((back - u).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("10000 LHS samples never beat the recorded optimum") {
  for (const auto& p : catalog()) {
    RandomStream rng(detail::hash_str(p.name));
    const Design design = lhs(10000, p.dim(), rng);
    CAPTURE(p.name);
    double best = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < design.n(); ++i) {
      const Vectord x = p.space.from_unit(design.points.row(i).transpose());
      best = std::min(best, p.normalized_objective(x));
    }
    CHECK(best >= p.y_star - 1e-9);
  }
}

TEST_CASE("maximization problems are negated at the boundary") {
  TestProblem p = make_problem("Branin");
  p.minimize = false;  // pretend f is to be maximized
  const Vectord mid = 0.5 * (p.space.lower + p.space.upper);
  CHECK(p.normalized_objective(mid) == -p.objective(mid));
}

TEST_CASE("dimension overrides apply to the parametric functions only") {
  const TestProblem r5 = make_problem("Rosenbrock", 5);
  CHECK(r5.dim() == 5);
  CHECK(r5.normalized_objective(Vectord::Ones(5)) == 0.0);
  const TestProblem s3 = make_problem("Schwefel", 3);
  CHECK(s3.dim() == 3);
  CHECK(close_abs(s3.normalized_objective(s3.x_star), s3.y_star, 1e-6));
  CHECK_THROWS_AS(make_problem("Branin", 3), std::invalid_argument);
  CHECK_THROWS_AS(make_problem("NoSuchProblem"), std::invalid_argument);
}
