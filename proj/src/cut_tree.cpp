#include "rrtcut/cut_tree.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rrtcut {
namespace {

Vertex find_root(std::vector<Vertex>& p, Vertex v) {
  Vertex r = v;
  while (p[r] != r) r = p[r];
  while (p[v] != r) {
    Vertex next = p[v];
    p[v] = r;
    v = next;
  }
  return r;
}

}  // namespace

CutTree build_cut_tree(const DestructionTrace& trace) {
  const auto& t = trace.tree;
  const std::uint64_t n = t.edge_count();
  CutTree ct;
  ct.leaf_count = n + 1;
  ct.parent.assign(2 * n + 1, kNoVertex);
  ct.child0.resize(n);
  ct.child1.resize(n);
  // Reverse union-find replay; node_of[r] is the cut-tree node for the
  // current component with representative r.
  std::vector<Vertex> uf(n + 1), node_of(n + 1);
  std::iota(uf.begin(), uf.end(), Vertex{0});
  std::iota(node_of.begin(), node_of.end(), Vertex{0});
  std::vector<std::uint64_t> sz(n + 1, 1);
  for (std::uint64_t i = n; i-- > 0;) {
    const EdgeId e = trace.order[i];
    const Vertex a = find_root(uf, e);
    const Vertex b = find_root(uf, t.parent[e]);
    const Vertex merged = n + 1 + i;  // forward step i+1 owns node n+1+i
    ct.child0[i] = node_of[a];
    ct.child1[i] = node_of[b];
    ct.parent[node_of[a]] = merged;
    ct.parent[node_of[b]] = merged;
    Vertex big = a, small = b;
    if (sz[big] < sz[small]) std::swap(big, small);
    uf[small] = big;
    sz[big] += sz[small];
    node_of[big] = merged;
  }
  return ct;
}

CutTree build_ordered_cut_tree(IncreasingTree tree) {
  return build_cut_tree(natural_order_trace(std::move(tree)));
}

std::vector<std::uint64_t> node_depths(const CutTree& ct) {
  std::vector<std::uint64_t> depth(ct.node_count(), 0);
  // Internal ids grow with depth, so one ascending pass settles them before
  // their children; leaves then read their parent.
  for (Vertex u = ct.leaf_count + 1; u < ct.node_count(); ++u)
    depth[u] = depth[ct.parent[u]] + 1;
  for (Vertex v = 0; v < ct.leaf_count; ++v)
    if (ct.parent[v] != kNoVertex) depth[v] = depth[ct.parent[v]] + 1;
  return depth;
}

std::uint64_t leaf_depth(const CutTree& ct, Vertex leaf) {
  std::uint64_t d = 0;
  for (Vertex v = leaf; ct.parent[v] != kNoVertex; v = ct.parent[v]) ++d;
  return d;
}

std::vector<Vertex> block_of(const CutTree& ct, Vertex node) {
  std::vector<Vertex> out, stack{node};
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    if (ct.is_leaf(u)) {
      out.push_back(u);
    } else {
      stack.push_back(ct.left(u));
      stack.push_back(ct.right(u));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t reduced_length(const CutTree& ct, const std::vector<Vertex>& leaves) {
  std::vector<char> marked(ct.node_count(), 0);
  std::uint64_t nodes = 0;
  for (Vertex v : leaves) {
    if (v >= ct.leaf_count) throw std::invalid_argument("not a leaf");
    for (Vertex u = v; u != kNoVertex && !marked[u]; u = ct.parent[u]) {
      marked[u] = 1;
      ++nodes;
    }
  }
  return nodes == 0 ? 0 : nodes - 1;
}

std::vector<TrunkBranch> trunk_decomposition(const CutTree& ct) {
  std::vector<std::uint64_t> leaves(ct.node_count(), 0);
  std::vector<std::uint64_t> height(ct.node_count(), 0);
  for (Vertex v = 0; v < ct.leaf_count; ++v) leaves[v] = 1;
  for (Vertex u = ct.node_count(); u-- > ct.leaf_count;) {
    leaves[u] = leaves[ct.left(u)] + leaves[ct.right(u)];
    height[u] = 1 + std::max(height[ct.left(u)], height[ct.right(u)]);
  }
  // Walk from the root toward leaf 0, collecting the other child each time.
  std::vector<char> on_root_path(ct.node_count(), 0);
  for (Vertex v = 0; v != kNoVertex; v = ct.parent[v]) on_root_path[v] = 1;
  std::vector<TrunkBranch> out;
  Vertex u = ct.root_node();
  while (!ct.is_leaf(u)) {
    const Vertex l = ct.left(u), r = ct.right(u);
    const Vertex off = on_root_path[l] ? r : l;
    out.push_back({off, leaves[off], height[off]});
    u = on_root_path[l] ? l : r;
  }
  return out;
}

HeightSaturation height_and_saturation(const CutTree& ct) {
  const auto depth = node_depths(ct);
  HeightSaturation hs;
  hs.saturation = ~std::uint64_t{0};
  for (Vertex v = 0; v < ct.leaf_count; ++v) {
    hs.height = std::max(hs.height, depth[v]);
    hs.saturation = std::min(hs.saturation, depth[v]);
  }
  if (ct.leaf_count == 0) hs.saturation = 0;
  return hs;
}

std::string shape_string(const CutTree& ct) {
  // Post-order by descending node id: children of an internal node have
  // larger ids, so they are encoded before it.
  std::vector<std::string> enc(ct.node_count());
  for (Vertex v = 0; v < ct.leaf_count; ++v) enc[v] = ".";
  for (Vertex u = ct.node_count(); u-- > ct.leaf_count;) {
    std::string a = enc[ct.left(u)], b = enc[ct.right(u)];
    if (b < a) std::swap(a, b);
    enc[u] = "(" + a + b + ")";
  }
  return enc[ct.root_node()];
}

}  // namespace rrtcut
