#include "rrtcut/coupling.hpp"

#include <cmath>
#include <stdexcept>

namespace rrtcut {
namespace {

constexpr double kWalkCap = 1e18;

std::uint64_t floor_ratio(double num, double u, std::uint64_t lo) {
  const double r = num / u;
  if (r >= kWalkCap) return static_cast<std::uint64_t>(kWalkCap);
  const auto v = static_cast<std::uint64_t>(r);
  return v < lo ? lo : v;
}

}  // namespace

std::uint64_t xi_from_uniform(double u) {
  if (!(u > 0.0) || u > 1.0) throw std::invalid_argument("u must lie in (0,1]");
  return floor_ratio(1.0, u, 1);
}

std::uint64_t sample_xi(RngStream& rng) { return xi_from_uniform(rng.next_unit()); }

WalkResult last_passage_walk(std::uint64_t n, RngStream& rng) {
  WalkResult w;
  while (true) {
    const std::uint64_t step = sample_xi(rng);
    if (step > n - w.position) return w;
    w.position += step;
    ++w.last_passage;
  }
}

std::uint64_t split_size_from_uniform(std::uint64_t s, double u) {
  if (s < 2) throw std::invalid_argument("component must have an edge");
  if (!(u > 0.0) || u > 1.0) throw std::invalid_argument("u must lie in (0,1]");
  // Cumulative law: P(D <= j) = s*j / ((s-1)*(j+1)), j = 1..s-1.
  const double m = static_cast<double>(s - 1);
  const auto j = static_cast<std::uint64_t>(std::ceil(u * m / (static_cast<double>(s) - u * m)));
  return j < 1 ? 1 : (j > s - 1 ? s - 1 : j);
}

CoupledIsolation coupled_isolation(std::uint64_t n_edges, RngStream& rng) {
  CoupledIsolation out;
  std::uint64_t s = n_edges + 1;
  while (s > 1) {
    std::uint64_t severed, step;
    if (rng.bernoulli(1.0 / static_cast<double>(s))) {
      // overshoot: walk takes xi | xi >= s, the tree severs an independent piece
      step = floor_ratio(static_cast<double>(s), rng.next_unit(), s);
      severed = split_size_from_uniform(s, rng.next_unit());
      if (!out.overshoot_seen) {
        out.overshoot_seen = true;
        out.last_passage = out.cuts;
        out.walk_position = n_edges + 1 - s;  // walk sum so far equals severed total
      }
    } else {
      severed = split_size_from_uniform(s, rng.next_unit());
      step = severed;
    }
    out.severed.push_back(severed);
    out.xi.push_back(step);
    s -= severed;
    ++out.cuts;
  }
  if (!out.overshoot_seen) {
    out.last_passage = out.cuts;
    out.walk_position = n_edges;
  }
  return out;
}

double cauchy_statistic(double x, std::uint64_t n) {
  if (n < 3) throw std::invalid_argument("centering needs n >= 3");
  const double ln = std::log(static_cast<double>(n));
  return ln * ln / static_cast<double>(n) * x - ln - std::log(ln);
}

}  // namespace rrtcut
