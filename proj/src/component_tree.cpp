#include "rrtcut/component_tree.hpp"

#include <algorithm>

namespace rrtcut {

ComponentTree build_component_tree(const CutTree& ct) {
  const std::uint64_t nodes = ct.node_count();
  std::vector<Vertex> min_label(nodes);
  std::vector<std::uint64_t> leaves(nodes, 1);
  for (Vertex v = 0; v < ct.leaf_count; ++v) min_label[v] = v;
  for (Vertex u = nodes; u-- > ct.leaf_count;) {
    min_label[u] = std::min(min_label[ct.left(u)], min_label[ct.right(u)]);
    leaves[u] = leaves[ct.left(u)] + leaves[ct.right(u)];
  }
  ComponentTree out;
  const auto new_block = [&](std::uint64_t parent_idx, Vertex top) {
    out.parent.push_back(parent_idx);
    out.size.push_back(leaves[top]);
    out.min_label.push_back(min_label[top]);
    out.generation.push_back(parent_idx == ~std::uint64_t{0} ? 0
                                                             : out.generation[parent_idx] + 1);
    out.children.emplace_back();
    if (parent_idx != ~std::uint64_t{0}) out.children[parent_idx].push_back(out.parent.size() - 1);
    return out.parent.size() - 1;
  };
  std::vector<std::uint64_t> block_of(nodes);
  block_of[ct.root_node()] = new_block(~std::uint64_t{0}, ct.root_node());
  // Internal ids grow with depth, so ascending order visits parents first and
  // appends children blocks in severance order.
  for (Vertex u = ct.leaf_count; u < nodes; ++u) {
    const std::uint64_t b = block_of[u];
    for (Vertex c : {ct.left(u), ct.right(u)}) {
      if (min_label[c] == min_label[u])
        block_of[c] = b;
      else
        block_of[c] = new_block(b, c);
    }
  }
  return out;
}

ComponentTree build_component_tree(const DestructionTrace& trace) {
  return build_component_tree(build_cut_tree(trace));
}

std::vector<std::uint64_t> generation_sizes(const ComponentTree& bt, std::uint64_t gen) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t b = 0; b < bt.block_count(); ++b)
    if (bt.generation[b] == gen) out.push_back(bt.size[b]);
  return out;
}

}  // namespace rrtcut
