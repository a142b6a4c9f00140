#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "rrtcut/rng.hpp"
#include "rrtcut/tree.hpp"

using namespace rrtcut;

namespace {

IncreasingTree from_parents(std::vector<Vertex> parents) {
  IncreasingTree t;
  t.parent = std::move(parents);
  return t;
}

}  // namespace

TEST_CASE("sample_rrt draws valid trees with uniform attachment") {
  RngStream rng(11, 0, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const IncreasingTree t = sample_rrt(20, rng);
    REQUIRE(t.vertex_count() == 21);
    validate(t);
  }
  // parent of vertex 3 is uniform on {0,1,2}
  int counts[3] = {0, 0, 0};
  const int trials = 30000;
  for (int i = 0; i < trials; ++i) ++counts[sample_rrt(3, rng).parent[3]];
  for (int c : counts) {
    CHECK(c > 9000);
    CHECK(c < 11000);
  }
}

TEST_CASE("enumerate_increasing_trees counts factorially") {
  CHECK(enumerate_increasing_trees(0).size() == 1);
  CHECK(enumerate_increasing_trees(1).size() == 1);
  CHECK(enumerate_increasing_trees(2).size() == 2);
  CHECK(enumerate_increasing_trees(3).size() == 6);
  CHECK(enumerate_increasing_trees(6).size() == 720);
  CHECK_THROWS_AS(enumerate_increasing_trees(9), std::invalid_argument);

  const auto all = enumerate_increasing_trees(3);
  // lexicographic in the parent array: star first, path last
  CHECK(all.front().parent == std::vector<Vertex>{kNoVertex, 0, 0, 0});
  CHECK(all.back().parent == std::vector<Vertex>{kNoVertex, 0, 1, 2});
  for (const auto& t : all) validate(t);
}

TEST_CASE("canonical_relabel keeps the fragment's shape") {
  // 0 -> 1 -> {2, 4}, 2 -> 3
  const IncreasingTree host = from_parents({kNoVertex, 0, 1, 2, 1});

  const IncreasingTree single = canonical_relabel(host, VertexSet::of({3}));
  CHECK(single.parent == std::vector<Vertex>{kNoVertex});

  const IncreasingTree chain = canonical_relabel(host, VertexSet::of({1, 2, 3}));
  CHECK(chain.parent == std::vector<Vertex>{kNoVertex, 0, 1});

  const IncreasingTree fork = canonical_relabel(host, VertexSet::of({1, 2, 4}));
  CHECK(fork.parent == std::vector<Vertex>{kNoVertex, 0, 0});

  CHECK_THROWS_AS(canonical_relabel(host, VertexSet::of({0, 2})), std::invalid_argument);
  CHECK_THROWS_AS(canonical_relabel(host, VertexSet::of({2, 4})), std::invalid_argument);
}

TEST_CASE("subtree sizes, depth, and root degree") {
  // 0 -> {1, 3}, 1 -> 2, 3 -> {4, 5}
  const IncreasingTree t = from_parents({kNoVertex, 0, 1, 0, 3, 3});
  CHECK(subtree_sizes(t) == std::vector<std::uint64_t>{6, 2, 1, 3, 1, 1});
  CHECK(subtree_size(t, 3) == 3);
  CHECK(depth(t, 0) == 0);
  CHECK(depth(t, 2) == 2);
  CHECK(depth(t, 5) == 2);
  CHECK(root_degree(t) == 2);
}

TEST_CASE("validate rejects malformed parent arrays") {
  CHECK_THROWS_AS(validate(from_parents({})), std::invalid_argument);
  CHECK_THROWS_AS(validate(from_parents({0})), std::invalid_argument);
  CHECK_THROWS_AS(validate(from_parents({kNoVertex, 1})), std::invalid_argument);
  CHECK_THROWS_AS(validate(from_parents({kNoVertex, 0, 2})), std::invalid_argument);
  CHECK_NOTHROW(validate(from_parents({kNoVertex, 0, 0, 2})));
}
