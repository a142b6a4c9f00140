#pragma once

#include <cstdint>
#include <vector>

#include "rrtcut/rng.hpp"

namespace rrtcut {

// Step law with P(xi = j) = 1/(j(j+1)), j >= 1: the limit of the size severed
// from a large root component by one removal.
std::uint64_t xi_from_uniform(double u);  // u in (0,1], returns floor(1/u)
std::uint64_t sample_xi(RngStream&);

// Walk with i.i.d. xi increments; last_passage is the number of steps taken
// while the running sum stays <= n, position the sum at that moment.
struct WalkResult {
  std::uint64_t last_passage = 0;
  std::uint64_t position = 0;
};
WalkResult last_passage_walk(std::uint64_t n, RngStream&);

// Size severed by one uniform removal from a component with s vertices,
// drawn by inverting its cumulative law; equals xi conditioned on xi < s.
std::uint64_t split_size_from_uniform(std::uint64_t s, double u);

// Root isolation run jointly with the xi-walk on the size chain. Each step
// sees the current component of s vertices; with probability 1/s the walk
// step overshoots (xi >= s) and decouples, otherwise the severed size is the
// walk step itself. last_passage is the step count before the first
// overshoot, so severed[i] == xi[i] for i < last_passage and cuts >=
// last_passage always; when no overshoot happens before isolation the two
// coincide. Walk values are capped at 10^18 to avoid overflow; the cap can
// only touch post-overshoot entries.
struct CoupledIsolation {
  std::uint64_t cuts = 0;           // removals until the root stands alone
  std::uint64_t last_passage = 0;
  std::uint64_t walk_position = 0;  // walk sum after last_passage steps
  bool overshoot_seen = false;
  std::vector<std::uint64_t> severed;  // component sizes severed, per step
  std::vector<std::uint64_t> xi;       // coupled walk increments, per step
};
CoupledIsolation coupled_isolation(std::uint64_t n_edges, RngStream&);

// Centering used by the limit comparisons: (ln^2 n / n) x - ln n - ln ln n.
// Throws for n < 3 (ln ln n must be defined).
double cauchy_statistic(double x, std::uint64_t n);

}  // namespace rrtcut
