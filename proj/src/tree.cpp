#include "rrtcut/tree.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace rrtcut {

VertexSet VertexSet::of(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return VertexSet{std::move(v)};
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members.begin(), members.end(), v);
}

IncreasingTree sample_rrt(std::uint64_t n_edges, RngStream& rng) {
  IncreasingTree t;
  t.parent.resize(n_edges + 1);
  t.parent[0] = kNoVertex;
  for (std::uint64_t i = 1; i <= n_edges; ++i) t.parent[i] = rng.uniform_below(i);
  return t;
}

std::vector<IncreasingTree> enumerate_increasing_trees(std::uint64_t n_edges) {
  if (n_edges > 8) throw std::invalid_argument("enumerate_increasing_trees: capped at n <= 8");
  std::vector<IncreasingTree> out;
  IncreasingTree t;
  t.parent.assign(n_edges + 1, 0);
  t.parent[0] = kNoVertex;
  while (true) {
    out.push_back(t);
    // odometer over parent[i] in {0..i-1}, last position fastest
    std::uint64_t i = n_edges;
    for (; i >= 1; --i) {
      if (t.parent[i] + 1 < i) {
        ++t.parent[i];
        for (std::uint64_t j = i + 1; j <= n_edges; ++j) t.parent[j] = 0;
        break;
      }
    }
    if (i == 0) break;
  }
  return out;
}

IncreasingTree canonical_relabel(const IncreasingTree& host, const VertexSet& members) {
  if (members.size() == 0) throw std::invalid_argument("canonical_relabel: empty fragment");
  std::unordered_map<Vertex, std::uint64_t> rank;
  rank.reserve(members.size());
  for (std::uint64_t r = 0; r < members.size(); ++r) {
    Vertex v = members.members[r];
    if (v >= host.vertex_count()) throw std::invalid_argument("canonical_relabel: vertex not in host");
    rank.emplace(v, r);
  }
  IncreasingTree out;
  out.parent.assign(members.size(), kNoVertex);
  std::uint64_t roots = 0;
  for (std::uint64_t r = 0; r < members.size(); ++r) {
    Vertex v = members.members[r];
    Vertex p = host.parent[v];
    auto it = (p == kNoVertex) ? rank.end() : rank.find(p);
    if (it == rank.end()) {
      ++roots;
    } else {
      out.parent[r] = it->second;
    }
  }
  if (roots != 1) throw std::invalid_argument("canonical_relabel: fragment is not a tree");
  return out;
}

std::vector<std::uint64_t> subtree_sizes(const IncreasingTree& t) {
  std::vector<std::uint64_t> sizes(t.vertex_count(), 1);
  for (std::uint64_t i = t.vertex_count() - 1; i >= 1; --i) sizes[t.parent[i]] += sizes[i];
  return sizes;
}

std::uint64_t subtree_size(const IncreasingTree& t, Vertex k) {
  if (k >= t.vertex_count()) throw std::invalid_argument("subtree_size: vertex out of range");
  return subtree_sizes(t)[k];
}

std::uint64_t depth(const IncreasingTree& t, Vertex v) {
  if (v >= t.vertex_count()) throw std::invalid_argument("depth: vertex out of range");
  std::uint64_t d = 0;
  while (v != 0) {
    v = t.parent[v];
    ++d;
  }
  return d;
}

std::uint64_t root_degree(const IncreasingTree& t) {
  std::uint64_t d = 0;
  for (std::uint64_t i = 1; i < t.vertex_count(); ++i)
    if (t.parent[i] == 0) ++d;
  return d;
}

void validate(const IncreasingTree& t) {
  if (t.vertex_count() == 0 || t.parent[0] != kNoVertex)
    throw std::invalid_argument("IncreasingTree: vertex 0 must be the root");
  for (std::uint64_t i = 1; i < t.vertex_count(); ++i)
    if (t.parent[i] >= i) throw std::invalid_argument("IncreasingTree: parent[i] must be < i");
}

}  // namespace rrtcut
