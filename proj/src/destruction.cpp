#include "rrtcut/destruction.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace rrtcut {
namespace {

// One forward removal step, reconstructed backwards: the two components the
// removal leaves behind. stat_* carries a per-component aggregate chosen by
// the replay (target count, minimum marked label, or bitmask).
struct StepRecord {
  std::uint64_t stat_child = 0;  // side of the edge's child endpoint
  std::uint64_t stat_parent = 0;
  std::uint64_t size_child = 0;
  std::uint64_t size_parent = 0;
};

struct Workspace {
  std::vector<Vertex> uf_parent;
  std::vector<std::uint64_t> uf_size;
  std::vector<std::uint64_t> uf_stat;
  std::vector<StepRecord> steps;
};

Workspace& workspace() {
  thread_local Workspace ws;
  return ws;
}

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

enum class Combine { kAdd, kMin, kOr };

// Runs the removal order backwards through a union-find, recording for every
// forward step the sizes and aggregated stats of the two sides it separates.
template <Combine kHow>
const std::vector<StepRecord>& replay_steps(const DestructionTrace& trace,
                                            const std::vector<std::uint64_t>& vertex_stat) {
  const auto& t = trace.tree;
  const std::uint64_t n = t.edge_count();
  auto& ws = workspace();
  ws.uf_parent.resize(t.vertex_count());
  ws.uf_size.assign(t.vertex_count(), 1);
  ws.uf_stat = vertex_stat;
  std::iota(ws.uf_parent.begin(), ws.uf_parent.end(), Vertex{0});
  ws.steps.resize(n);
  for (std::uint64_t i = n; i-- > 0;) {
    const EdgeId e = trace.order[i];
    const Vertex a = find_root(ws.uf_parent, e);
    const Vertex b = find_root(ws.uf_parent, t.parent[e]);
    ws.steps[i] = {ws.uf_stat[a], ws.uf_stat[b], ws.uf_size[a], ws.uf_size[b]};
    Vertex big = a, small = b;
    if (ws.uf_size[big] < ws.uf_size[small]) std::swap(big, small);
    ws.uf_parent[small] = big;
    ws.uf_size[big] += ws.uf_size[small];
    if constexpr (kHow == Combine::kAdd)
      ws.uf_stat[big] += ws.uf_stat[small];
    else if constexpr (kHow == Combine::kMin)
      ws.uf_stat[big] = std::min(ws.uf_stat[big], ws.uf_stat[small]);
    else
      ws.uf_stat[big] |= ws.uf_stat[small];
  }
  return ws.steps;
}

const std::vector<StepRecord>& replay_target_counts(const DestructionTrace& trace,
                                                    const VertexSet& targets) {
  std::vector<std::uint64_t> flag(trace.tree.vertex_count(), 0);
  for (Vertex v : targets.members) {
    if (v >= flag.size()) throw std::invalid_argument("target out of range");
    flag[v] = 1;
  }
  return replay_steps<Combine::kAdd>(trace, flag);
}

std::vector<std::uint64_t> removal_ranks(const DestructionTrace& trace) {
  const std::uint64_t n = trace.tree.edge_count();
  std::vector<std::uint64_t> rank(n + 1, 0);
  for (std::uint64_t i = 0; i < n; ++i) rank[trace.order[i]] = i;
  return rank;
}

// Members of comp (sorted host labels) lying in the subtree of top. comp is
// connected, so the host ancestor path from any member to top stays inside it.
std::vector<Vertex> subtree_members(const IncreasingTree& t, const std::vector<Vertex>& comp,
                                    Vertex top) {
  std::vector<Vertex> out;
  for (Vertex v : comp) {
    Vertex w = v;
    while (w > top) w = t.parent[w];
    if (w == top) out.push_back(v);
  }
  return out;
}

bool contains_sorted(const std::vector<Vertex>& sorted, Vertex v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

std::uint64_t count_targets(const std::vector<Vertex>& comp, const VertexSet& targets) {
  std::uint64_t c = 0;
  for (Vertex v : comp)
    if (targets.contains(v)) ++c;
  return c;
}

// Splits comp by removing the parent edge of a uniformly chosen non-root
// member; returns {remainder, severed subtree} as sorted vectors.
std::pair<std::vector<Vertex>, std::vector<Vertex>> cut_uniform_edge(const IncreasingTree& t,
                                                                     const std::vector<Vertex>& comp,
                                                                     RngStream& rng) {
  const Vertex e = comp[1 + rng.uniform_below(comp.size() - 1)];
  std::vector<Vertex> severed = subtree_members(t, comp, e);
  std::vector<Vertex> rest;
  rest.reserve(comp.size() - severed.size());
  std::set_difference(comp.begin(), comp.end(), severed.begin(), severed.end(),
                      std::back_inserter(rest));
  return {std::move(rest), std::move(severed)};
}

}  // namespace

DestructionTrace sample_destruction(IncreasingTree tree, RngStream& rng) {
  const std::uint64_t n = tree.edge_count();
  DestructionTrace trace;
  trace.tree = std::move(tree);
  trace.removal_times.resize(n + 1);
  trace.removal_times[0] = 0.0;
  for (std::uint64_t e = 1; e <= n; ++e) trace.removal_times[e] = rng.next_unit();
  trace.order.resize(n);
  std::iota(trace.order.begin(), trace.order.end(), EdgeId{1});
  std::sort(trace.order.begin(), trace.order.end(), [&](EdgeId a, EdgeId b) {
    const double ta = trace.removal_times[a], tb = trace.removal_times[b];
    return ta != tb ? ta < tb : a < b;
  });
  return trace;
}

DestructionTrace trace_from_order(IncreasingTree tree, std::vector<EdgeId> order) {
  const std::uint64_t n = tree.edge_count();
  if (order.size() != n) throw std::invalid_argument("order must list every edge once");
  std::vector<char> seen(n + 1, 0);
  for (EdgeId e : order) {
    if (e < 1 || e > n || seen[e]) throw std::invalid_argument("order is not a permutation of 1..n");
    seen[e] = 1;
  }
  DestructionTrace trace;
  trace.tree = std::move(tree);
  trace.order = std::move(order);
  return trace;
}

DestructionTrace natural_order_trace(IncreasingTree tree) {
  std::vector<EdgeId> order(tree.edge_count());
  std::iota(order.begin(), order.end(), EdgeId{1});
  return trace_from_order(std::move(tree), std::move(order));
}

IsolationResult isolate_root(const DestructionTrace& trace) {
  const auto& steps = replay_target_counts(trace, VertexSet::of({0}));
  IsolationResult r;
  for (const StepRecord& s : steps) {
    if (s.stat_child + s.stat_parent == 0) continue;
    ++r.cuts;
    r.severed_sizes.push_back(s.stat_child ? s.size_parent : s.size_child);
  }
  return r;
}

IsolationResult fast_isolation(const DestructionTrace& trace) {
  const auto& t = trace.tree;
  const std::uint64_t n = t.edge_count();
  const std::vector<std::uint64_t> rank = removal_ranks(trace);
  // min_rank[v]: smallest rank on the edge path v -> root; argmin[v]: the edge
  // attaining it. Parent order makes a single forward pass sufficient.
  std::vector<std::uint64_t> min_rank(n + 1, ~std::uint64_t{0});
  std::vector<EdgeId> argmin(n + 1, 0);
  std::vector<std::uint64_t> severed_count(n + 1, 0);
  for (Vertex v = 1; v <= n; ++v) {
    const Vertex p = t.parent[v];
    if (rank[v] < min_rank[p]) {
      min_rank[v] = rank[v];
      argmin[v] = v;
    } else {
      min_rank[v] = min_rank[p];
      argmin[v] = argmin[p];
    }
    ++severed_count[argmin[v]];
  }
  IsolationResult r;
  std::vector<EdgeId> counted;
  for (Vertex e = 1; e <= n; ++e)
    if (argmin[e] == e) counted.push_back(e);
  std::sort(counted.begin(), counted.end(),
            [&](EdgeId a, EdgeId b) { return rank[a] < rank[b]; });
  r.cuts = counted.size();
  r.severed_sizes.reserve(counted.size());
  for (EdgeId e : counted) r.severed_sizes.push_back(severed_count[e]);
  return r;
}

std::uint64_t isolate_root_fast(const DestructionTrace& trace) {
  const auto& t = trace.tree;
  const std::uint64_t n = t.edge_count();
  const std::vector<std::uint64_t> rank = removal_ranks(trace);
  std::vector<std::uint64_t> min_rank(n + 1, ~std::uint64_t{0});
  std::uint64_t cuts = 0;
  for (Vertex v = 1; v <= n; ++v) {
    const std::uint64_t up = min_rank[t.parent[v]];
    if (rank[v] < up) {
      min_rank[v] = rank[v];
      ++cuts;
    } else {
      min_rank[v] = up;
    }
  }
  return cuts;
}

std::vector<std::uint64_t> MultiIsolationResult::partial_counts() const {
  std::vector<std::uint64_t> out(stage_cuts.size());
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < stage_cuts.size(); ++i) {
    acc += stage_cuts[i];
    out[i] = acc;
  }
  return out;
}

MultiIsolationResult isolate_first_ell(const DestructionTrace& trace, std::uint64_t ell) {
  const std::uint64_t vertices = trace.tree.vertex_count();
  if (ell == 0 || ell > vertices) throw std::invalid_argument("stage count must be in 1..vertices");
  // Per-component stat: smallest label < ell present, else the sentinel ell.
  std::vector<std::uint64_t> stat(vertices, ell);
  for (Vertex v = 0; v < ell; ++v) stat[v] = v;
  const auto& steps = replay_steps<Combine::kMin>(trace, stat);
  MultiIsolationResult r;
  r.stage_cuts.assign(ell, 0);
  r.stage_sizes.assign(ell, 1);
  for (const StepRecord& s : steps) {
    const std::uint64_t stage = std::min(s.stat_child, s.stat_parent);
    if (stage == ell) continue;
    if (r.stage_cuts[stage] == 0) r.stage_sizes[stage] = s.size_child + s.size_parent;
    ++r.stage_cuts[stage];
    ++r.total_cuts;
  }
  return r;
}

std::uint64_t isolate_targets(const DestructionTrace& trace, const VertexSet& targets) {
  if (targets.size() == 0) throw std::invalid_argument("need at least one target");
  const auto& steps = replay_target_counts(trace, targets);
  std::uint64_t cuts = 0;
  for (const StepRecord& s : steps)
    if (s.stat_child + s.stat_parent > 0) ++cuts;
  return cuts;
}

namespace {

DisconnectionResult disconnect_from_steps(const std::vector<StepRecord>& steps,
                                          std::uint64_t ell) {
  DisconnectionResult r;
  r.ell = ell;
  if (ell < 2) return r;
  r.steps_to_blocks.assign(ell - 1, 0);
  std::uint64_t counted = 0, blocks = 1;
  for (const StepRecord& s : steps) {
    if (s.stat_child + s.stat_parent < 2) continue;
    ++counted;
    if (s.stat_child > 0 && s.stat_parent > 0) {
      ++blocks;
      r.steps_to_blocks[blocks - 2] = counted;
      if (blocks == ell) break;
    }
  }
  return r;
}

}  // namespace

DisconnectionResult disconnect_targets(const DestructionTrace& trace, const VertexSet& targets) {
  if (targets.size() < 2) throw std::invalid_argument("need at least two targets");
  return disconnect_from_steps(replay_target_counts(trace, targets), targets.size());
}

DisconnectionResult disconnect_first_ell(const DestructionTrace& trace, std::uint64_t ell) {
  if (ell < 2 || ell > trace.tree.vertex_count())
    throw std::invalid_argument("target count must be in 2..vertices");
  std::vector<Vertex> marked(ell);
  std::iota(marked.begin(), marked.end(), Vertex{0});
  return disconnect_targets(trace, VertexSet::of(std::move(marked)));
}

std::vector<TargetSweep> sweep_targets(const DestructionTrace& trace,
                                       std::span<const VertexSet> sets) {
  std::vector<Vertex> marked;
  for (const VertexSet& s : sets)
    for (Vertex v : s.members)
      if (std::find(marked.begin(), marked.end(), v) == marked.end()) marked.push_back(v);
  if (marked.size() > 64) throw std::invalid_argument("at most 64 distinct marked vertices");
  std::vector<std::uint64_t> bits(trace.tree.vertex_count(), 0);
  for (std::size_t b = 0; b < marked.size(); ++b) bits[marked[b]] = std::uint64_t{1} << b;
  std::vector<std::uint64_t> set_mask(sets.size(), 0);
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (Vertex v : sets[i].members) set_mask[i] |= bits[v];
  const auto& steps = replay_steps<Combine::kOr>(trace, bits);
  std::vector<TargetSweep> out(sets.size());
  std::vector<std::uint64_t> blocks(sets.size(), 1);
  std::vector<std::uint64_t> counted(sets.size(), 0);  // steps under the >= 2 filter
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (sets[i].size() >= 2) out[i].steps_to_blocks.assign(sets[i].size() - 1, 0);
  for (const StepRecord& s : steps) {
    const std::uint64_t pre = s.stat_child | s.stat_parent;
    if (pre == 0) continue;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const std::uint64_t m = set_mask[i];
      if ((pre & m) == 0) continue;
      ++out[i].hit_count;
      if (std::popcount(pre & m) < 2) continue;
      ++counted[i];
      if ((s.stat_child & m) && (s.stat_parent & m)) {
        ++blocks[i];
        out[i].steps_to_blocks[blocks[i] - 2] = counted[i];
      }
    }
  }
  return out;
}

std::uint64_t isolate_root_direct(const IncreasingTree& t, RngStream& rng) {
  std::vector<Vertex> comp(t.vertex_count());
  std::iota(comp.begin(), comp.end(), Vertex{0});
  std::uint64_t cuts = 0;
  while (comp.size() > 1) {
    auto [rest, severed] = cut_uniform_edge(t, comp, rng);
    ++cuts;
    comp = rest.empty() || rest[0] != 0 ? std::move(severed) : std::move(rest);
  }
  return cuts;
}

std::uint64_t isolate_targets_direct(const IncreasingTree& t, const VertexSet& targets,
                                     RngStream& rng) {
  std::vector<std::vector<Vertex>> comps;
  {
    std::vector<Vertex> all(t.vertex_count());
    std::iota(all.begin(), all.end(), Vertex{0});
    comps.push_back(std::move(all));
  }
  std::uint64_t cuts = 0;
  while (true) {
    std::uint64_t edges = 0;
    for (const auto& c : comps) edges += c.size() - 1;
    if (edges == 0) break;
    std::uint64_t pick = rng.uniform_below(edges);
    std::size_t ci = 0;
    while (pick >= comps[ci].size() - 1) pick -= comps[ci].size() - 1, ++ci;
    ++cuts;
    auto [rest, severed] = cut_uniform_edge(t, comps[ci], rng);
    comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(ci));
    for (auto& side : {std::ref(rest), std::ref(severed)})
      if (count_targets(side.get(), targets) > 0 && side.get().size() > 1)
        comps.push_back(std::move(side.get()));
  }
  return cuts;
}

MultiIsolationResult isolate_first_ell_direct(const IncreasingTree& t, std::uint64_t ell,
                                              RngStream& rng) {
  if (ell == 0 || ell > t.vertex_count())
    throw std::invalid_argument("stage count must be in 1..vertices");
  MultiIsolationResult r;
  r.stage_cuts.assign(ell, 0);
  r.stage_sizes.assign(ell, 1);
  std::vector<std::vector<Vertex>> held;  // severed parts containing later stage vertices
  std::vector<Vertex> active(t.vertex_count());
  std::iota(active.begin(), active.end(), Vertex{0});
  for (std::uint64_t stage = 0; stage < ell; ++stage) {
    const Vertex goal = stage;
    for (std::size_t i = 0; i < held.size(); ++i)
      if (contains_sorted(held[i], goal)) {
        active = std::move(held[i]);
        held.erase(held.begin() + static_cast<std::ptrdiff_t>(i));
        break;
      }
    r.stage_sizes[stage] = active.size();
    while (active.size() > 1) {
      ++r.stage_cuts[stage];
      ++r.total_cuts;
      auto [rest, severed] = cut_uniform_edge(t, active, rng);
      const bool goal_in_rest = contains_sorted(rest, goal);
      auto& keep = goal_in_rest ? rest : severed;
      auto& other = goal_in_rest ? severed : rest;
      bool holds_later = false;
      for (Vertex v = stage + 1; v < ell; ++v)
        if (contains_sorted(other, v)) {
          holds_later = true;
          break;
        }
      if (holds_later) held.push_back(std::move(other));
      active = std::move(keep);
    }
  }
  return r;
}

DisconnectionResult disconnect_targets_direct(const IncreasingTree& t, const VertexSet& targets,
                                              RngStream& rng) {
  if (targets.size() < 2) throw std::invalid_argument("need at least two targets");
  DisconnectionResult r;
  r.ell = targets.size();
  r.steps_to_blocks.assign(r.ell - 1, 0);
  std::vector<std::vector<Vertex>> comps;  // components holding >= 2 targets
  {
    std::vector<Vertex> all(t.vertex_count());
    std::iota(all.begin(), all.end(), Vertex{0});
    comps.push_back(std::move(all));
  }
  std::uint64_t cuts = 0, blocks = 1;
  while (!comps.empty()) {
    std::uint64_t edges = 0;
    for (const auto& c : comps) edges += c.size() - 1;
    std::uint64_t pick = rng.uniform_below(edges);
    std::size_t ci = 0;
    while (pick >= comps[ci].size() - 1) pick -= comps[ci].size() - 1, ++ci;
    ++cuts;
    auto [rest, severed] = cut_uniform_edge(t, comps[ci], rng);
    comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(ci));
    const std::uint64_t in_rest = count_targets(rest, targets);
    const std::uint64_t in_severed = count_targets(severed, targets);
    if (in_rest > 0 && in_severed > 0) {
      ++blocks;
      r.steps_to_blocks[blocks - 2] = cuts;
    }
    if (in_rest >= 2) comps.push_back(std::move(rest));
    if (in_severed >= 2) comps.push_back(std::move(severed));
  }
  return r;
}

std::uint64_t isolate_root_by_vertex_removal(const IncreasingTree& t, RngStream& rng) {
  const std::uint64_t n = t.edge_count();
  std::vector<std::vector<Vertex>> kids(n + 1);
  for (Vertex v = 1; v <= n; ++v) kids[t.parent[v]].push_back(v);
  std::vector<Vertex> alive(n + 1);
  std::iota(alive.begin(), alive.end(), Vertex{0});
  std::vector<std::uint64_t> pos(n + 1);
  std::iota(pos.begin(), pos.end(), std::uint64_t{0});
  std::vector<char> gone(n + 1, 0);
  const auto drop = [&](Vertex v) {
    const std::uint64_t p = pos[v];
    alive[p] = alive.back();
    pos[alive[p]] = p;
    alive.pop_back();
    gone[v] = 1;
  };
  std::uint64_t picks = 0;
  std::vector<Vertex> stack;
  while (true) {
    const Vertex v = alive[rng.uniform_below(alive.size())];
    ++picks;
    if (v == 0) return picks;
    stack.assign(1, v);
    while (!stack.empty()) {
      const Vertex w = stack.back();
      stack.pop_back();
      drop(w);
      for (Vertex c : kids[w])
        if (!gone[c]) stack.push_back(c);
    }
  }
}

std::uint64_t ordered_root_isolation_count(const IncreasingTree& t) {
  return isolate_root(natural_order_trace(t)).cuts;
}

CoalescentResult ring_coalescent(const IncreasingTree& t, RngStream& rng) {
  if (t.vertex_count() < 2) throw std::invalid_argument("need at least two labels");
  // Deleting an edge drops its whole distal subtree from the live set, so the
  // live edges are exactly the non-root vertices of the remaining root
  // component; a uniform pick among them is the next ring.
  CoalescentResult r;
  std::vector<Vertex> comp(t.vertex_count());
  std::iota(comp.begin(), comp.end(), Vertex{0});
  double time = 0.0;
  while (comp.size() > 1) {
    const std::uint64_t live_edges = comp.size() - 1;
    time += rng.exponential() / static_cast<double>(live_edges);
    const Vertex e = comp[1 + rng.uniform_below(live_edges)];
    std::vector<Vertex> severed = subtree_members(t, comp, e);
    std::vector<Vertex> rest;
    rest.reserve(comp.size() - severed.size());
    std::set_difference(comp.begin(), comp.end(), severed.begin(), severed.end(),
                        std::back_inserter(rest));
    comp = std::move(rest);
    ++r.collisions;
    r.times.push_back(time);
    r.blocks.push_back(comp.size());
  }
  return r;
}

}  // namespace rrtcut
