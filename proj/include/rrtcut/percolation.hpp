#pragma once

#include <cstdint>
#include <vector>

#include "rrtcut/rng.hpp"
#include "rrtcut/tree.hpp"

namespace rrtcut {

// Bernoulli(p) edge percolation. cluster[v] is the smallest vertex of v's
// cluster, found in one forward pass since parents precede children.
struct Percolation {
  std::vector<Vertex> cluster;
  std::uint64_t root_cluster_size = 0;
  std::vector<std::uint64_t> other_sizes;  // non-root cluster sizes, by founding vertex order
};
Percolation percolate(const IncreasingTree&, double p, RngStream&);

// Percolation in the supercritical window p = 1 - t/ln n on a fresh tree
// with n edges; exposes the sizes the limit statements are about.
struct SupercriticalRun {
  std::uint64_t root_cluster = 0;
  std::uint64_t largest_other = 0;
  std::uint64_t cluster_count = 0;
};
SupercriticalRun supercritical_run(std::uint64_t n_edges, double t, RngStream&);

// Growth process giving the same joint law: individuals split at rate 1,
// each newborn attaches to a uniform existing individual and keeps its type
// with probability p, else founds a new one. Run until the population has
// n+1 members; the genealogy is then a uniform recursive tree and the types
// are its percolation clusters.
struct YuleResult {
  IncreasingTree tree;
  std::vector<char> kept;  // kept[v]: edge to parent kept, entry 0 unused
  std::vector<double> birth_times;
};
YuleResult yule_with_mutations(std::uint64_t n_edges, double p, RngStream&);

// Urn for the root cluster size alone: after k draws the root cluster has r
// members and the next vertex joins it with probability p*r/(k+1).
std::uint64_t polya_hoppe_urn(std::uint64_t n_edges, double p, RngStream&);

// Vertices still reachable from the root after removing edges 1..k.
std::uint64_t ordered_root_component_size(const IncreasingTree&, std::uint64_t k);

}  // namespace rrtcut
