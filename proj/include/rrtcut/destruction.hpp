#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rrtcut/rng.hpp"
#include "rrtcut/tree.hpp"

namespace rrtcut {

using EdgeId = Vertex;  // edge i joins vertex i and parent[i]

// A tree together with one realized removal order of all its edges.
struct DestructionTrace {
  IncreasingTree tree;
  std::vector<EdgeId> order;          // permutation of 1..n
  std::vector<double> removal_times;  // indexed by edge id, entry 0 unused; empty if order-built
};

// i.i.d. uniform removal times, sorted ascending; ties broken by edge id.
DestructionTrace sample_destruction(IncreasingTree tree, RngStream& rng);

// Explicit removal order (validated as a permutation of 1..n); no times.
DestructionTrace trace_from_order(IncreasingTree tree, std::vector<EdgeId> order);

// The deterministic order 1, 2, ..., n.
DestructionTrace natural_order_trace(IncreasingTree tree);

struct IsolationResult {
  std::uint64_t cuts = 0;                    // removals made in root components
  std::vector<std::uint64_t> severed_sizes;  // in severance order; sums to n
  bool operator==(const IsolationResult&) const = default;
};

// Replays the removal order with a reverse union-find pass, counting the
// removals whose pre-removal component contains the root and the sizes they
// sever from it.
IsolationResult isolate_root(const DestructionTrace&);

// O(n) variant. An edge is cut in a root component exactly when its removal
// rank is the smallest along its path to the root, and the subtree it severs
// is the set of vertices whose root-path argmin it is. One forward pass over
// parent order computes both. Must agree with isolate_root exactly.
IsolationResult fast_isolation(const DestructionTrace&);
std::uint64_t isolate_root_fast(const DestructionTrace&);

// Staged isolation of vertices 0..ell-1: stage i collects the removals whose
// pre-removal component contains i but no smaller stage vertex. Partial sums
// over stages give the cuts needed to isolate the first 1, 2, ..., ell
// vertices.
struct MultiIsolationResult {
  std::vector<std::uint64_t> stage_cuts;   // stage i isolates vertex i
  std::vector<std::uint64_t> stage_sizes;  // component size when stage i begins (1 if already isolated)
  std::uint64_t total_cuts = 0;
  std::vector<std::uint64_t> partial_counts() const;  // cumulative over stages
};
MultiIsolationResult isolate_first_ell(const DestructionTrace&, std::uint64_t ell);

// Removals whose pre-removal component contains at least one target.
std::uint64_t isolate_targets(const DestructionTrace&, const VertexSet& targets);

// Filtered disconnection: count removals made in components holding >= 2
// targets; steps_to_blocks[k-2] is the count when the targets first span k
// components, for k = 2..|targets|.
struct DisconnectionResult {
  std::uint64_t ell = 0;
  std::vector<std::uint64_t> steps_to_blocks;
};
DisconnectionResult disconnect_targets(const DestructionTrace&, const VertexSet& targets);
DisconnectionResult disconnect_first_ell(const DestructionTrace&, std::uint64_t ell);

// Batched form: one replay serving several marked sets (<= 64 distinct
// marked vertices across all sets).
struct TargetSweep {
  std::uint64_t hit_count = 0;
  std::vector<std::uint64_t> steps_to_blocks;  // filled when the set has >= 2 members
};
std::vector<TargetSweep> sweep_targets(const DestructionTrace&, std::span<const VertexSet> sets);

// Direct simulators drawing a uniform edge inside the retained components at
// every step with fresh randomness. They realize the algorithm definitions
// literally and exist to cross-check the replay-filtering implementations.
std::uint64_t isolate_root_direct(const IncreasingTree&, RngStream&);
std::uint64_t isolate_targets_direct(const IncreasingTree&, const VertexSet&, RngStream&);
MultiIsolationResult isolate_first_ell_direct(const IncreasingTree&, std::uint64_t ell, RngStream&);
DisconnectionResult disconnect_targets_direct(const IncreasingTree&, const VertexSet&, RngStream&);

// Vertex-removal variant: repeatedly pick a uniform vertex of the remaining
// root component and delete its whole subtree; returns the number of picks
// including the final pick of the root.
std::uint64_t isolate_root_by_vertex_removal(const IncreasingTree&, RngStream&);

// Removals in the deterministic order 1..n touch the root component exactly
// once per root child, so this equals root_degree; computed by replay.
std::uint64_t ordered_root_isolation_count(const IncreasingTree&);

// Ring-deletion coalescent on a tree read over labels {1..vertex_count}:
// every live edge carries an exp(1) clock; when one rings, the edge and
// everything distal to it are deleted and those labels merge into the
// proximal block. Live edges always form the root component, so each ring
// picks a uniform live edge.
struct CoalescentResult {
  std::uint64_t collisions = 0;
  std::vector<double> times;          // ring times
  std::vector<std::uint64_t> blocks;  // block count after each ring
};
CoalescentResult ring_coalescent(const IncreasingTree&, RngStream&);

}  // namespace rrtcut
