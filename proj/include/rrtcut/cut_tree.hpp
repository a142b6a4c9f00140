#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rrtcut/destruction.hpp"
#include "rrtcut/tree.hpp"

namespace rrtcut {

// Binary tree recording how a removal order splits the source tree into
// blocks. Nodes 0..n are leaves, leaf v standing for source vertex v; the
// forward removal step t (1-based) owns internal node n + t, so the root is
// n + 1 and internal ids increase with depth. child0 holds the side of the
// removed edge's child endpoint, child1 the parent side.
struct CutTree {
  std::uint64_t leaf_count = 0;
  std::vector<Vertex> parent;            // size 2n+1, root has kNoVertex
  std::vector<Vertex> child0, child1;    // size n, index t-1 for node n+t

  std::uint64_t internal_count() const { return leaf_count == 0 ? 0 : leaf_count - 1; }
  std::uint64_t node_count() const { return leaf_count + internal_count(); }
  Vertex root_node() const { return leaf_count <= 1 ? 0 : leaf_count; }
  bool is_leaf(Vertex node) const { return node < leaf_count; }
  Vertex left(Vertex node) const { return child0[node - leaf_count]; }
  Vertex right(Vertex node) const { return child1[node - leaf_count]; }
};

CutTree build_cut_tree(const DestructionTrace&);

// Cut tree of the deterministic removal order 1..n.
CutTree build_ordered_cut_tree(IncreasingTree);

// Depth of every node; depth of leaf v equals the number of removals made in
// components containing v.
std::vector<std::uint64_t> node_depths(const CutTree&);
std::uint64_t leaf_depth(const CutTree&, Vertex leaf);

// Sorted source vertices below a node. Costs the block size; intended for
// small trees and spot checks.
std::vector<Vertex> block_of(const CutTree&, Vertex node);

// Edge count of the subtree spanned by the root and the given leaves: the
// distinct removals made in components holding at least one of them.
std::uint64_t reduced_length(const CutTree&, const std::vector<Vertex>& leaves);

// The trunk is the root-to-leaf-0 path; each trunk internal node hangs one
// subtree off it, the block severed from the root component at that removal.
// Reported in severance order with leaf counts and heights (a bare leaf has
// height 0).
struct TrunkBranch {
  Vertex node = 0;
  std::uint64_t leaves = 0;
  std::uint64_t height = 0;
};
std::vector<TrunkBranch> trunk_decomposition(const CutTree&);

// Max and min leaf depth.
struct HeightSaturation {
  std::uint64_t height = 0;
  std::uint64_t saturation = 0;
};
HeightSaturation height_and_saturation(const CutTree&);

// Canonical shape: "." for a leaf, "(AB)" with A <= B lexicographically.
std::string shape_string(const CutTree&);

}  // namespace rrtcut
