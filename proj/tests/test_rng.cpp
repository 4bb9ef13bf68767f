#include <doctest.h>

#include "bobench/rng.hpp"

using bobench::RandomStream;

TEST_CASE("same seed reproduces the sequence bit-for-bit") {
  RandomStream a(42), b(42);
  for (int i = 0; i < 200; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  RandomStream c(42), d(42);
  for (int i = 0; i < 200; ++i) {
    CHECK(c.uniform() == d.uniform());
    CHECK(c.normal() == d.normal());
  }
}

TEST_CASE("uniform lies in [0,1) with mean near 1/2") {
  RandomStream rng(7);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("child streams are unaffected by advancing the parent") {
  RandomStream parent(99);
  RandomStream child_before = parent.child(3);
  for (int i = 0; i < 50; ++i) parent.next_u64();
  RandomStream child_after = parent.child(3);
  for (int i = 0; i < 50; ++i)
    CHECK(child_before.next_u64() == child_after.next_u64());
}

TEST_CASE("distinct tags give distinct children") {
  RandomStream parent(1);
  RandomStream a = parent.child(1), b = parent.child(2);
  int diff = 0;
  for (int i = 0; i < 16; ++i)
    if (a.next_u64() != b.next_u64()) ++diff;
  CHECK(diff > 0);
}

TEST_CASE("normal moments") {
  RandomStream rng(11);
  const int n = 200000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    s1 += z;
    s2 += z * z;
  }
  CHECK(s1 / n == doctest::Approx(0.0).epsilon(0.02));
  CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("gamma mean matches shape * scale") {
  RandomStream rng(13);
  const double shape = 3.5, scale = 0.7;
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rng.gamma(shape, scale);
  CHECK(sum / n == doctest::Approx(shape * scale).epsilon(0.02));
}

TEST_CASE("gamma with shape < 1") {
  RandomStream rng(14);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gamma(0.4, 2.0);
    REQUIRE(g >= 0.0);
    sum += g;
  }
  CHECK(sum / n == doctest::Approx(0.8).epsilon(0.05));
  CHECK_THROWS_AS(rng.gamma(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(rng.gamma(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("permutation covers every index once") {
  RandomStream rng(5);
  const auto p = rng.permutation(17);
  std::vector<bool> seen(17, false);
  for (int v : p) {
    REQUIRE(v >= 0);
    REQUIRE(v < 17);
    CHECK(!seen[static_cast<size_t>(v)]);
    seen[static_cast<size_t>(v)] = true;
  }
}
