#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "rrtcut/coupling.hpp"
#include "rrtcut/exact.hpp"

using namespace rrtcut;

namespace {

// Frequencies within four standard errors of the exact atom.
void check_law(const std::map<std::int64_t, std::uint64_t>& counts, std::uint64_t trials,
               const ExactDistribution& law) {
  for (const auto& [value, count] : counts) {
    const double p = law.p_double(value);
    REQUIRE_MESSAGE(p > 0.0, "off-support value ", value);
    const double freq = static_cast<double>(count) / static_cast<double>(trials);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    CHECK_MESSAGE(std::abs(freq - p) <= 4.0 * se + 1e-12, "value ", value, " freq ", freq,
                  " expected ", p);
  }
}

}  // namespace

TEST_CASE("step law inversion breakpoints") {
  CHECK(xi_from_uniform(1.0) == 1);
  CHECK(xi_from_uniform(0.51) == 1);
  CHECK(xi_from_uniform(0.5) == 2);
  CHECK(xi_from_uniform(0.34) == 2);
  CHECK(xi_from_uniform(0.2) == 5);
  CHECK(xi_from_uniform(0x1p-20) == 1048576);
  CHECK_THROWS_AS(xi_from_uniform(0.0), std::invalid_argument);
  CHECK_THROWS_AS(xi_from_uniform(1.5), std::invalid_argument);
}

TEST_CASE("step law frequencies") {
  RngStream rng(61, 0, 0);
  const std::uint64_t trials = 200000;
  std::map<std::int64_t, std::uint64_t> counts;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const std::uint64_t x = sample_xi(rng);
    if (x <= 8) ++counts[static_cast<std::int64_t>(x)];
  }
  for (std::int64_t j = 1; j <= 8; ++j) {
    const double p = 1.0 / (static_cast<double>(j) * static_cast<double>(j + 1));
    const double freq = static_cast<double>(counts[j]) / static_cast<double>(trials);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    CHECK(std::abs(freq - p) <= 4.0 * se);
  }
}

TEST_CASE("split size inversion matches the component law") {
  // s = 4: cumulative 2/3, 8/9, 1.
  CHECK(split_size_from_uniform(4, 0.1) == 1);
  CHECK(split_size_from_uniform(4, 2.0 / 3.0) == 1);
  CHECK(split_size_from_uniform(4, 0.67) == 2);
  CHECK(split_size_from_uniform(4, 8.0 / 9.0) == 2);
  CHECK(split_size_from_uniform(4, 0.9) == 3);
  CHECK(split_size_from_uniform(4, 1.0) == 3);
  CHECK(split_size_from_uniform(2, 0.3) == 1);

  RngStream rng(62, 0, 0);
  const std::uint64_t trials = 60000;
  for (std::uint64_t s : {3u, 7u}) {
    std::map<std::int64_t, std::uint64_t> counts;
    for (std::uint64_t i = 0; i < trials; ++i)
      ++counts[static_cast<std::int64_t>(split_size_from_uniform(s, rng.next_unit()))];
    check_law(counts, trials, exact_split_law(s - 1));
  }
}

TEST_CASE("coupling invariants hold pathwise") {
  RngStream rng(63, 0, 0);
  for (int rep = 0; rep < 400; ++rep) {
    const std::uint64_t n = 1 + rng.uniform_below(300);
    const CoupledIsolation c = coupled_isolation(n, rng);
    REQUIRE(c.severed.size() == c.cuts);
    REQUIRE(c.xi.size() == c.cuts);
    CHECK(c.cuts >= c.last_passage);
    CHECK(std::accumulate(c.severed.begin(), c.severed.end(), std::uint64_t{0}) == n);
    std::uint64_t walk = 0;
    for (std::uint64_t i = 0; i < c.last_passage; ++i) {
      CHECK(c.severed[i] == c.xi[i]);
      walk += c.xi[i];
    }
    CHECK(walk == c.walk_position);
    CHECK(walk <= n);
    if (!c.overshoot_seen) {
      CHECK(c.cuts == c.last_passage);
      CHECK(walk == n);
    } else {
      CHECK(c.xi[c.last_passage] + walk > n);
    }
  }
}

TEST_CASE("coupled cut count keeps the exact law") {
  RngStream rng(64, 0, 0);
  const std::uint64_t trials = 40000;
  for (std::uint64_t n : {2u, 4u}) {
    std::map<std::int64_t, std::uint64_t> counts;
    for (std::uint64_t i = 0; i < trials; ++i)
      ++counts[static_cast<std::int64_t>(coupled_isolation(n, rng).cuts)];
    check_law(counts, trials, exact_isolation_law(n));
  }
}

TEST_CASE("last passage law on two edges, both routes") {
  // By hand: P(L=0) = 1/3, P(L=1) = 5/12, P(L=2) = 1/4.
  ExactDistribution law;
  law.support = {0, 1, 2};
  law.prob = {Rational(1, 3), Rational(5, 12), Rational(1, 4)};
  law.check_normalized();

  RngStream rng(65, 0, 0);
  const std::uint64_t trials = 60000;
  std::map<std::int64_t, std::uint64_t> walk_counts, coupled_counts;
  for (std::uint64_t i = 0; i < trials; ++i)
    ++walk_counts[static_cast<std::int64_t>(last_passage_walk(2, rng).last_passage)];
  for (std::uint64_t i = 0; i < trials; ++i)
    ++coupled_counts[static_cast<std::int64_t>(coupled_isolation(2, rng).last_passage)];
  check_law(walk_counts, trials, law);
  check_law(coupled_counts, trials, law);
}

TEST_CASE("walk position never exceeds the level") {
  RngStream rng(66, 0, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::uint64_t n = 1 + rng.uniform_below(100000);
    const WalkResult w = last_passage_walk(n, rng);
    CHECK(w.position <= n);
    CHECK(w.position >= w.last_passage);  // increments are >= 1
  }
}

TEST_CASE("centering formula") {
  const double v = cauchy_statistic(3.0, 100);
  const double ln = std::log(100.0);
  CHECK(v == doctest::Approx(ln * ln / 100.0 * 3.0 - ln - std::log(ln)).epsilon(1e-12));
}
