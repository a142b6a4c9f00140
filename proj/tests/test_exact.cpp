#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <stdexcept>

#include "rrtcut/exact.hpp"
#include "rrtcut/tree.hpp"

using namespace rrtcut;

namespace {

Rational r(std::int64_t num, std::int64_t den) { return Rational(BigInt(num), BigInt(den)); }

StatisticSpec spec(std::string name, std::uint64_t ell = 0, std::uint64_t k = 0) {
  return {std::move(name), ell, k, {}};
}

}  // namespace

TEST_CASE("split law at small sizes") {
  const ExactDistribution two = exact_split_law(2);
  REQUIRE(two.support == std::vector<std::int64_t>{1, 2});
  CHECK(two.prob[0] == r(3, 4));
  CHECK(two.prob[1] == r(1, 4));

  const ExactDistribution three = exact_split_law(3);
  REQUIRE(three.support == std::vector<std::int64_t>{1, 2, 3});
  CHECK(three.prob[0] == r(2, 3));
  CHECK(three.prob[1] == r(2, 9));
  CHECK(three.prob[2] == r(1, 9));
  CHECK(three.mean() == r(13, 9));
}

TEST_CASE("root isolation law by size recursion") {
  const ExactDistribution one = exact_isolation_law(1);
  REQUIRE(one.support == std::vector<std::int64_t>{1});
  CHECK(one.prob[0] == 1);

  const ExactDistribution two = exact_isolation_law(2);
  REQUIRE(two.support == std::vector<std::int64_t>{1, 2});
  CHECK(two.p(1) == r(1, 4));
  CHECK(two.p(2) == r(3, 4));
  CHECK(two.mean() == r(7, 4));

  CHECK(exact_isolation_law(0).support == std::vector<std::int64_t>{0});
  CHECK_THROWS_AS(exact_isolation_law(201), std::invalid_argument);
}

TEST_CASE("exhaustive replay reproduces the recursion laws") {
  for (std::uint64_t n = 1; n <= 5; ++n) {
    const ExactDistribution by_replay = exhaustive_destruction(n, spec("isolate-root"));
    CHECK(by_replay == exact_isolation_law(n));
    const ExactDistribution first_cut = exhaustive_destruction(n, spec("first-cut-size"));
    CHECK(first_cut == exact_split_law(n));
  }
}

TEST_CASE("isolating the last vertex, exhaustively") {
  const ExactDistribution z11 = exhaustive_destruction(1, spec("isolate-last", 1));
  REQUIRE(z11.support == std::vector<std::int64_t>{1});

  const ExactDistribution z21 = exhaustive_destruction(2, spec("isolate-last", 1));
  REQUIRE(z21.support == std::vector<std::int64_t>{1, 2});
  CHECK(z21.p(1) == r(1, 2));
  CHECK(z21.p(2) == r(1, 2));
}

TEST_CASE("disconnection of two random targets, exhaustively") {
  // 3 target pairs x 2 trees x 2 orders, averaged: A = 1 in 8 of 12 atoms.
  const ExactDistribution a22 =
      exhaustive_destruction(2, spec("disconnect-random", 2, 2));
  REQUIRE(a22.support == std::vector<std::int64_t>{1, 2});
  CHECK(a22.p(1) == r(2, 3));
  CHECK(a22.p(2) == r(1, 3));
}

TEST_CASE("fixed-pair disconnection on the two-edge path and star") {
  // targets {0,1}: both trees split them at the first or second counted
  // removal with equal probability
  const ExactDistribution d =
      exhaustive_destruction(2, spec("disconnect-first", 2, 2));
  REQUIRE(d.support == std::vector<std::int64_t>{1, 2});
  CHECK(d.p(1) == r(1, 2));
  CHECK(d.p(2) == r(1, 2));
}

TEST_CASE("staged two-target isolation matches single-target composition") {
  // ell=1 staging is plain root isolation
  const ExactDistribution x1 = exhaustive_destruction(3, spec("isolate-first", 1));
  CHECK(x1 == exact_isolation_law(3));
}

TEST_CASE("conditional split factorization is exact") {
  for (std::uint64_t n = 2; n <= 4; ++n) {
    const SplitCheckResult res = exact_conditional_split_check(n);
    CHECK(res.pass);
    CHECK(res.max_deviation == 0);
  }
}

TEST_CASE("subtree size law is flat for the first vertex") {
  const ExactDistribution law = subtree_size_law(20, 1);
  REQUIRE(law.support.size() == 20);
  for (std::size_t i = 0; i < 20; ++i) CHECK(law.prob[i] == r(1, 20));
}

TEST_CASE("subtree size law for k=2 and its enumeration cross-check") {
  const ExactDistribution law = subtree_size_law(5, 2);
  REQUIRE(law.support == std::vector<std::int64_t>{1, 2, 3, 4});
  CHECK(law.p(1) == r(2, 5));
  CHECK(law.p(2) == r(3, 10));
  CHECK(law.p(3) == r(1, 5));
  CHECK(law.p(4) == r(1, 10));

  std::map<std::int64_t, std::uint64_t> counts;
  const auto trees = enumerate_increasing_trees(5);
  for (const auto& t : trees) ++counts[static_cast<std::int64_t>(subtree_size(t, 2))];
  for (const auto& [size, count] : counts)
    CHECK(law.p(size) == Rational(BigInt(count), BigInt(trees.size())));
}

TEST_CASE("urn law and percolation root cluster agree") {
  const ExactDistribution urn = urn_red_law(2, r(1, 2));
  REQUIRE(urn.support == std::vector<std::int64_t>{1, 2, 3});
  CHECK(urn.p(1) == r(3, 8));
  CHECK(urn.p(2) == r(3, 8));
  CHECK(urn.p(3) == r(1, 4));

  CHECK(urn_red_law(2, Rational(1)).support == std::vector<std::int64_t>{3});

  for (std::uint64_t n = 1; n <= 5; ++n)
    CHECK(percolation_root_cluster_law(n, r(1, 2)) == urn_red_law(n, r(1, 2)));
  CHECK(percolation_root_cluster_law(4, r(1, 3)) == urn_red_law(4, r(1, 3)));
}

TEST_CASE("ordered cut shapes follow the random search-tree chain") {
  // one three-leaf shape exists, so the n=2 law is a point mass
  const ShapeLaw two = exhaustive_ordered_cut_shape_law(2);
  REQUIRE(two.size() == 1);
  CHECK(two.begin()->second == 1);

  const ShapeLaw chain = bst_chain_shape_law(4);
  const ShapeLaw ordered = exhaustive_ordered_cut_shape_law(3);
  CHECK(chain == ordered);
  // 4-leaf shapes: the balanced one arises from the middle pivot, weight 1/3
  REQUIRE(chain.size() == 2);
  CHECK(chain.at("((..)(..))") == r(1, 3));
  CHECK(chain.at("(((..).).)") == r(2, 3));
}

TEST_CASE("shape encoders on hand examples") {
  IncreasingTree path;
  path.parent = {kNoVertex, 0, 1};
  CHECK(ordered_cut_shape_direct(path) == "((..).)");
  IncreasingTree star;
  star.parent = {kNoVertex, 0, 0};
  CHECK(ordered_cut_shape_direct(star) == "((..).)");

  const std::vector<Vertex> order{1, 2};
  CHECK(component_shape_direct(path, order) == "3(2(1()))");
}

TEST_CASE("guards reject out-of-range requests") {
  CHECK_THROWS_AS(exhaustive_destruction(7, spec("isolate-root")), std::invalid_argument);
  CHECK_THROWS_AS(exhaustive_destruction(3, spec("no-such-statistic")),
                  std::invalid_argument);
  CHECK_THROWS_AS(exact_conditional_split_check(6), std::invalid_argument);
  CHECK_THROWS_AS(percolation_root_cluster_law(7, r(1, 2)), std::invalid_argument);
}
