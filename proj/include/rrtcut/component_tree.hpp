#pragma once

#include <cstdint>
#include <vector>

#include "rrtcut/cut_tree.hpp"
#include "rrtcut/destruction.hpp"

namespace rrtcut {

// Genealogy of blocks under edge removal. The root block is the whole vertex
// set; whenever a removal splits a block, the side keeping the block's
// smallest label continues it and the other side founds a child block. Every
// vertex ends up founding exactly one block (the one whose smallest label it
// is), so a tree with n+1 vertices yields n+1 blocks.
struct ComponentTree {
  std::vector<std::uint64_t> parent;  // index of parent block, root 0 has ~0
  std::vector<std::uint64_t> size;    // vertices in the block when founded
  std::vector<Vertex> min_label;
  std::vector<std::uint64_t> generation;
  std::vector<std::vector<std::uint64_t>> children;  // in severance order

  std::uint64_t block_count() const { return parent.size(); }
};

ComponentTree build_component_tree(const CutTree&);
ComponentTree build_component_tree(const DestructionTrace&);

// Sizes of the generation-g blocks in severance order.
std::vector<std::uint64_t> generation_sizes(const ComponentTree&, std::uint64_t gen);

}  // namespace rrtcut
