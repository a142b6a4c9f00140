#include "rrtcut/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rrtcut {

Percolation percolate(const IncreasingTree& t, double p, RngStream& rng) {
  const std::uint64_t n = t.edge_count();
  Percolation out;
  out.cluster.resize(n + 1);
  out.cluster[0] = 0;
  for (Vertex v = 1; v <= n; ++v)
    out.cluster[v] = rng.bernoulli(p) ? out.cluster[t.parent[v]] : v;
  std::vector<std::uint64_t> count(n + 1, 0);
  for (Vertex v = 0; v <= n; ++v) ++count[out.cluster[v]];
  out.root_cluster_size = count[0];
  for (Vertex v = 1; v <= n; ++v)
    if (count[v] > 0) out.other_sizes.push_back(count[v]);
  return out;
}

SupercriticalRun supercritical_run(std::uint64_t n_edges, double t, RngStream& rng) {
  const double ln = std::log(static_cast<double>(n_edges));
  const double p = 1.0 - t / ln;
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("t out of range for this n");
  const IncreasingTree tree = sample_rrt(n_edges, rng);
  const Percolation perc = percolate(tree, p, rng);
  SupercriticalRun run;
  run.root_cluster = perc.root_cluster_size;
  run.cluster_count = 1 + perc.other_sizes.size();
  for (std::uint64_t s : perc.other_sizes) run.largest_other = std::max(run.largest_other, s);
  return run;
}

YuleResult yule_with_mutations(std::uint64_t n_edges, double p, RngStream& rng) {
  YuleResult out;
  out.tree.parent.resize(n_edges + 1);
  out.tree.parent[0] = kNoVertex;
  out.kept.assign(n_edges + 1, 0);
  out.birth_times.resize(n_edges + 1);
  out.birth_times[0] = 0.0;
  double time = 0.0;
  for (Vertex v = 1; v <= n_edges; ++v) {
    // v individuals alive, each splitting at rate 1; the splitter is uniform
    time += rng.exponential() / static_cast<double>(v);
    out.birth_times[v] = time;
    out.tree.parent[v] = rng.uniform_below(v);
    out.kept[v] = rng.bernoulli(p) ? 1 : 0;
  }
  return out;
}

std::uint64_t polya_hoppe_urn(std::uint64_t n_edges, double p, RngStream& rng) {
  std::uint64_t r = 1;
  for (std::uint64_t k = 1; k <= n_edges; ++k)
    if (rng.bernoulli(p * static_cast<double>(r) / static_cast<double>(k))) ++r;
  return r;
}

std::uint64_t ordered_root_component_size(const IncreasingTree& t, std::uint64_t k) {
  const std::uint64_t n = t.edge_count();
  std::vector<char> in_comp(n + 1, 0);
  in_comp[0] = 1;
  std::uint64_t size = 1;
  for (Vertex v = 1; v <= n; ++v) {
    if (v > k && in_comp[t.parent[v]]) {
      in_comp[v] = 1;
      ++size;
    }
  }
  return size;
}

}  // namespace rrtcut
