#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rrtcut/tree.hpp"

namespace rrtcut {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact law of an integer statistic: strictly increasing support, rational
// atoms summing to one.
struct ExactDistribution {
  std::vector<std::int64_t> support;
  std::vector<Rational> prob;

  Rational p(std::int64_t v) const;
  double p_double(std::int64_t v) const;
  Rational mean() const;
  void check_normalized() const;
  bool operator==(const ExactDistribution&) const = default;
};

// Law of the size of the subtree severed by one uniform edge removal:
// P(size = j) = (n+1) / (n j (j+1)), j = 1..n.
ExactDistribution exact_split_law(std::uint64_t n);

// Law of the number of cuts needed to isolate the root, by the splitting
// recursion: X_n = 1 + X_{n-D} with D drawn from the split law. Capped at
// n <= 200 (rational arithmetic grows quickly).
ExactDistribution exact_isolation_law(std::uint64_t n);

// Named statistic evaluated by exhaustive replay over all n! trees times all
// n! removal orders. Names:
//   isolate-root         cuts made in components containing the root
//   isolate-first        cuts in components containing any of {0..ell-1}
//   isolate-last         same for the last ell vertices {n-ell+1..n}
//   isolate-targets      same for an explicit target list
//   disconnect-random    steps of the >=2-target filtered process until the
//                        targets span k components, averaged over all
//                        ell-subsets of vertices
//   disconnect-first     same with targets fixed to {0..ell-1}
//   first-cut-size       size of the subtree severed by the first removal
struct StatisticSpec {
  std::string name;
  std::uint64_t ell = 0;
  std::uint64_t k = 0;
  std::vector<Vertex> targets;
};

// Exhaustive law of the named statistic; capped at n <= 6. Throws
// std::invalid_argument for unknown names or out-of-range parameters.
ExactDistribution exhaustive_destruction(std::uint64_t n, const StatisticSpec& stat);

// Distribution over shape encodings (see the encoders below).
using ShapeLaw = std::map<std::string, Rational>;

// Canonical unordered binary-shape string of the cut tree under the natural
// removal order 1,2,...,n: leaf = ".", internal = "(AB)" with A <= B.
std::string ordered_cut_shape_direct(const IncreasingTree& t);

// Ordered-tree encoding of the component-size tree of one destruction,
// computed by direct set-based simulation: node = "<size>(" children in
// creation order ")".
std::string component_shape_direct(const IncreasingTree& t, std::span<const Vertex> order);

ShapeLaw exhaustive_ordered_cut_shape_law(std::uint64_t n);   // over uniform trees
ShapeLaw exhaustive_component_shape_law(std::uint64_t n);     // over trees x orders

// Shape law of the binary-search-tree growth chain after the leaf count
// reaches `leaf_count`: start from a single leaf, repeatedly replace a
// uniformly chosen leaf by an internal node with two leaf children.
ShapeLaw bst_chain_shape_law(std::uint64_t leaf_count);

// Exhaustive verification that conditionally on the first-cut split sizes
// (n-j+1, j), the canonically relabeled root side and severed side are
// independent uniform increasing trees. max_deviation is the largest
// absolute difference between an observed configuration frequency and the
// product law; it must be exactly zero. Capped at n <= 5.
struct SplitCheckResult {
  bool pass;
  Rational max_deviation;
};
SplitCheckResult exact_conditional_split_check(std::uint64_t n);

// Exact law of the size of the subtree rooted at vertex k in a uniform
// recursive tree on {0..n}: 1 + beta-binomial(n-k, 1, k) for k >= 1.
ExactDistribution subtree_size_law(std::uint64_t n, std::uint64_t k);

// Red-ball count after `draws` draws of the reinforcement urn that starts
// with one red ball; a drawn ball is returned together with a new ball: red
// draws add red with probability p (else black), black draws add black.
ExactDistribution urn_red_law(std::uint64_t draws, const Rational& p);

// Root-cluster size of Bernoulli(p) edge percolation on a uniform recursive
// tree with n edges, by enumeration over trees and edge subsets; n <= 6.
ExactDistribution percolation_root_cluster_law(std::uint64_t n, const Rational& p);

}  // namespace rrtcut
