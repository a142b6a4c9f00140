#pragma once

#include <cstdint>
#include <vector>

#include "rrtcut/rng.hpp"

namespace rrtcut {

using Vertex = std::uint64_t;
inline constexpr Vertex kNoVertex = ~std::uint64_t{0};

// Rooted labeled tree on {0..n} in which every child has a larger label than
// its parent. Stored as a parent array; edge i is the edge between vertex i
// and parent[i], for i = 1..n.
struct IncreasingTree {
  std::vector<Vertex> parent;  // parent[0] == kNoVertex, parent[i] < i otherwise

  std::uint64_t vertex_count() const { return parent.size(); }
  std::uint64_t edge_count() const { return parent.size() - 1; }
};

// Sorted duplicate-free set of vertex labels.
struct VertexSet {
  std::vector<Vertex> members;  // strictly increasing

  static VertexSet of(std::vector<Vertex> v);
  std::uint64_t size() const { return members.size(); }
  bool contains(Vertex v) const;
};

// Uniform random recursive tree with n edges: parent[i] uniform on {0..i-1}.
IncreasingTree sample_rrt(std::uint64_t n_edges, RngStream& rng);

// All n! increasing trees with n edges, in lexicographic order of the parent
// array. Capped at n <= 8.
std::vector<IncreasingTree> enumerate_increasing_trees(std::uint64_t n_edges);

// Order-preserving relabeling of a connected fragment of `host` onto
// {0..|members|-1}. Throws std::invalid_argument if the member set does not
// induce a single subtree of host.
IncreasingTree canonical_relabel(const IncreasingTree& host, const VertexSet& members);

// Sizes of all vertex-rooted subtrees, one reverse pass.
std::vector<std::uint64_t> subtree_sizes(const IncreasingTree& t);

std::uint64_t subtree_size(const IncreasingTree& t, Vertex k);

std::uint64_t depth(const IncreasingTree& t, Vertex v);

std::uint64_t root_degree(const IncreasingTree& t);

void validate(const IncreasingTree& t);

}  // namespace rrtcut
