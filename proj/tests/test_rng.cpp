#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "rrtcut/rng.hpp"

using rrtcut::RngStream;

TEST_CASE("streams are reproducible and keyed") {
  RngStream a(7, 3, 1), b(7, 3, 1);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  RngStream c(7, 3, 1), d(7, 4, 1), e(7, 3, 2), f(8, 3, 1);
  bool all_same_trial = true, all_same_tag = true, all_same_seed = true;
  for (int i = 0; i < 8; ++i) {
    const auto x = c.next_u64();
    all_same_trial &= x == d.next_u64();
    all_same_tag &= x == e.next_u64();
    all_same_seed &= x == f.next_u64();
  }
  CHECK_FALSE(all_same_trial);
  CHECK_FALSE(all_same_tag);
  CHECK_FALSE(all_same_seed);
}

TEST_CASE("uniform_below stays in range and is roughly flat") {
  RngStream rng(1, 0, 0);
  std::array<int, 7> counts{};
  const int trials = 70000;
  for (int i = 0; i < trials; ++i) ++counts[rng.uniform_below(7)];
  for (int c : counts) {
    CHECK(c > 9000);
    CHECK(c < 11000);
  }
  CHECK_THROWS_AS(rng.uniform_below(0), std::invalid_argument);
}

TEST_CASE("next_unit lies in (0,1] with mean near one half") {
  RngStream rng(2, 0, 0);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.next_unit();
    REQUIRE(u > 0.0);
    REQUIRE(u <= 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / 100000 - 0.5) < 0.005);
}

TEST_CASE("exponential has unit mean") {
  RngStream rng(3, 0, 0);
  double sum = 0.0;
  const int trials = 200000;
  for (int i = 0; i < trials; ++i) sum += rng.exponential();
  CHECK(std::abs(sum / trials - 1.0) < 0.01);
}

TEST_CASE("bernoulli frequency matches p") {
  RngStream rng(4, 0, 0);
  int hits = 0;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) hits += rng.bernoulli(0.3);
  CHECK(std::abs(hits / static_cast<double>(trials) - 0.3) < 0.01);
}

TEST_CASE("shuffle visits every permutation of three items") {
  RngStream rng(5, 0, 0);
  std::map<std::array<int, 3>, int> seen;
  const int trials = 60000;
  for (int i = 0; i < trials; ++i) {
    std::array<int, 3> a{0, 1, 2};
    rng.shuffle(std::span<int>(a));
    ++seen[a];
  }
  REQUIRE(seen.size() == 6);
  for (const auto& [perm, count] : seen) {
    CHECK(count > 9000);
    CHECK(count < 11000);
  }
}
