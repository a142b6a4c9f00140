#include "rrtcut/exact.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace rrtcut {

namespace {

std::uint64_t factorial_u64(std::uint64_t n) {
  std::uint64_t f = 1;
  for (std::uint64_t i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt factorial_big(std::uint64_t n) {
  BigInt f = 1;
  for (std::uint64_t i = 2; i <= n; ++i) f *= i;
  return f;
}

ExactDistribution from_counts(const std::map<std::int64_t, std::uint64_t>& counts,
                              std::uint64_t total) {
  ExactDistribution d;
  for (const auto& [v, c] : counts) {
    d.support.push_back(v);
    d.prob.emplace_back(BigInt(c), BigInt(total));
  }
  d.check_normalized();
  return d;
}

// membership flags for a small vertex set
std::vector<char> set_flags(std::uint64_t vertices, const std::vector<Vertex>& targets) {
  std::vector<char> f(vertices, 0);
  for (Vertex v : targets) {
    if (v >= vertices) throw std::invalid_argument("exhaustive_destruction: target out of range");
    f[v] = 1;
  }
  return f;
}

// Component of `start` among still-present edges, collected by a parent/child
// walk. `present[i]` refers to edge i. Small n only.
void component_of(const IncreasingTree& t, const std::vector<std::vector<Vertex>>& kids,
                  const std::vector<char>& present, Vertex start, std::vector<Vertex>& out) {
  out.clear();
  std::vector<char> seen(t.vertex_count(), 0);
  out.push_back(start);
  seen[start] = 1;
  for (std::size_t q = 0; q < out.size(); ++q) {
    Vertex v = out[q];
    if (v != 0 && present[v] && !seen[t.parent[v]]) {
      seen[t.parent[v]] = 1;
      out.push_back(t.parent[v]);
    }
    for (Vertex c : kids[v])
      if (present[c] && !seen[c]) {
        seen[c] = 1;
        out.push_back(c);
      }
  }
}

std::vector<std::vector<Vertex>> children_of(const IncreasingTree& t) {
  std::vector<std::vector<Vertex>> kids(t.vertex_count());
  for (Vertex i = 1; i < t.vertex_count(); ++i) kids[t.parent[i]].push_back(i);
  return kids;
}

// number of cuts whose pre-removal component contains a flagged vertex
std::int64_t eval_hit_count(const IncreasingTree& t, const std::vector<std::vector<Vertex>>& kids,
                            std::span<const Vertex> order, const std::vector<char>& flag) {
  std::vector<char> present(t.vertex_count(), 1);
  std::vector<Vertex> comp;
  std::int64_t cnt = 0;
  for (Vertex e : order) {
    component_of(t, kids, present, e, comp);
    for (Vertex v : comp)
      if (flag[v]) {
        ++cnt;
        break;
      }
    present[e] = 0;
  }
  return cnt;
}

// steps of the >=2-target filtered destruction until the targets span k blocks
std::int64_t eval_disconnect(const IncreasingTree& t, const std::vector<std::vector<Vertex>>& kids,
                             std::span<const Vertex> order, const std::vector<char>& flag,
                             std::uint64_t k) {
  std::vector<char> present(t.vertex_count(), 1);
  std::vector<Vertex> comp;
  std::int64_t steps = 0;
  std::uint64_t blocks = 1;
  for (Vertex e : order) {
    component_of(t, kids, present, e, comp);
    std::uint64_t in_comp = 0;
    for (Vertex v : comp) in_comp += flag[v];
    present[e] = 0;
    if (in_comp < 2) continue;
    ++steps;
    component_of(t, kids, present, e, comp);  // severed side
    std::uint64_t below = 0;
    for (Vertex v : comp) below += flag[v];
    if (below >= 1 && in_comp - below >= 1) {
      ++blocks;
      if (blocks == k) return steps;
    }
  }
  throw std::logic_error("eval_disconnect: block threshold not reached");
}

std::int64_t eval_first_cut_size(const IncreasingTree& t, const std::vector<std::vector<Vertex>>& kids,
                                 std::span<const Vertex> order) {
  std::vector<char> present(t.vertex_count(), 1);
  present[order[0]] = 0;
  std::vector<Vertex> comp;
  component_of(t, kids, present, order[0], comp);
  return static_cast<std::int64_t>(comp.size());
}

// descendants of `top` within the member flags of one component (host labels)
std::vector<Vertex> descendants_within(const IncreasingTree& t, const std::vector<Vertex>& members,
                                       Vertex top) {
  std::vector<Vertex> out;
  for (Vertex v : members) {
    Vertex w = v;
    while (w != kNoVertex && w >= top) {
      if (w == top) {
        out.push_back(v);
        break;
      }
      w = t.parent[w];
    }
  }
  return out;
}

std::string encode_parents(const IncreasingTree& t) {
  std::string s;
  for (std::uint64_t i = 1; i < t.vertex_count(); ++i) {
    s += std::to_string(t.parent[i]);
    s += ',';
  }
  return s;
}

// --- small binary trees used by the BST chain law ---

struct BinNode {
  int left = -1, right = -1;
};

struct BinTree {
  std::vector<BinNode> nodes;  // node 0 is the root
  int add() {
    nodes.push_back({});
    return static_cast<int>(nodes.size()) - 1;
  }
};

std::string encode_canonical(const BinTree& bt, int u) {
  const BinNode& nd = bt.nodes[u];
  if (nd.left < 0) return ".";
  std::string a = encode_canonical(bt, nd.left);
  std::string b = encode_canonical(bt, nd.right);
  if (b < a) std::swap(a, b);
  return "(" + a + b + ")";
}

int parse_shape(const std::string& s, std::size_t& pos, BinTree& bt) {
  int u = bt.add();
  if (s[pos] == '.') {
    ++pos;
    return u;
  }
  assert(s[pos] == '(');
  ++pos;
  int l = parse_shape(s, pos, bt);
  int r = parse_shape(s, pos, bt);
  assert(s[pos] == ')');
  ++pos;
  bt.nodes[u].left = l;
  bt.nodes[u].right = r;
  return u;
}

void expand_kth_leaf(BinTree& bt, int u, int& k) {
  if (bt.nodes[u].left < 0) {
    if (k-- == 0) {
      int l = bt.add();
      int r = bt.add();
      bt.nodes[u].left = l;
      bt.nodes[u].right = r;
    }
    return;
  }
  expand_kth_leaf(bt, bt.nodes[u].left, k);
  if (k >= 0) expand_kth_leaf(bt, bt.nodes[u].right, k);
}

}  // namespace

Rational ExactDistribution::p(std::int64_t v) const {
  auto it = std::lower_bound(support.begin(), support.end(), v);
  if (it == support.end() || *it != v) return Rational(0);
  return prob[static_cast<std::size_t>(it - support.begin())];
}

double ExactDistribution::p_double(std::int64_t v) const { return static_cast<double>(p(v)); }

Rational ExactDistribution::mean() const {
  Rational m = 0;
  for (std::size_t i = 0; i < support.size(); ++i) m += Rational(support[i]) * prob[i];
  return m;
}

void ExactDistribution::check_normalized() const {
  Rational s = 0;
  for (const auto& q : prob) s += q;
  if (s != 1) throw std::logic_error("ExactDistribution: probabilities do not sum to 1");
  for (std::size_t i = 1; i < support.size(); ++i)
    if (support[i - 1] >= support[i]) throw std::logic_error("ExactDistribution: support not sorted");
}

ExactDistribution exact_split_law(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("exact_split_law: need n >= 1");
  ExactDistribution d;
  for (std::uint64_t j = 1; j <= n; ++j) {
    d.support.push_back(static_cast<std::int64_t>(j));
    d.prob.emplace_back(BigInt(n + 1), BigInt(n) * j * (j + 1));
  }
  d.check_normalized();
  return d;
}

ExactDistribution exact_isolation_law(std::uint64_t n) {
  if (n > 200) throw std::invalid_argument("exact_isolation_law: capped at n <= 200");
  // laws[m][x] = P(X_m = x); X_0 = 0
  std::vector<std::vector<Rational>> laws(n + 1);
  laws[0] = {Rational(1)};
  for (std::uint64_t m = 1; m <= n; ++m) {
    laws[m].assign(m + 1, Rational(0));
    for (std::uint64_t j = 1; j <= m; ++j) {
      Rational q(BigInt(m + 1), BigInt(m) * j * (j + 1));
      const auto& sub = laws[m - j];
      for (std::size_t x = 0; x < sub.size(); ++x)
        if (!sub[x].is_zero()) laws[m][x + 1] += q * sub[x];
    }
  }
  ExactDistribution d;
  for (std::size_t x = 0; x <= n; ++x)
    if (!laws[n][x].is_zero()) {
      d.support.push_back(static_cast<std::int64_t>(x));
      d.prob.push_back(laws[n][x]);
    }
  d.check_normalized();
  return d;
}

ExactDistribution exhaustive_destruction(std::uint64_t n, const StatisticSpec& stat) {
  if (n < 1 || n > 6) throw std::invalid_argument("exhaustive_destruction: need 1 <= n <= 6");
  const std::uint64_t vertices = n + 1;

  enum class Kind { Hit, Disconnect, DisconnectRandom, FirstCut };
  Kind kind;
  std::vector<Vertex> targets;
  if (stat.name == "isolate-root") {
    kind = Kind::Hit;
    targets = {0};
  } else if (stat.name == "isolate-first") {
    if (stat.ell < 1 || stat.ell > vertices)
      throw std::invalid_argument("exhaustive_destruction: bad ell");
    kind = Kind::Hit;
    for (Vertex v = 0; v < stat.ell; ++v) targets.push_back(v);
  } else if (stat.name == "isolate-last") {
    if (stat.ell < 1 || stat.ell > vertices)
      throw std::invalid_argument("exhaustive_destruction: bad ell");
    kind = Kind::Hit;
    for (Vertex v = vertices - stat.ell; v < vertices; ++v) targets.push_back(v);
  } else if (stat.name == "isolate-targets") {
    if (stat.targets.empty()) throw std::invalid_argument("exhaustive_destruction: no targets");
    kind = Kind::Hit;
    targets = stat.targets;
  } else if (stat.name == "disconnect-first") {
    if (stat.ell < 2 || stat.ell > vertices || stat.k < 2 || stat.k > stat.ell)
      throw std::invalid_argument("exhaustive_destruction: bad ell/k");
    kind = Kind::Disconnect;
    for (Vertex v = 0; v < stat.ell; ++v) targets.push_back(v);
  } else if (stat.name == "disconnect-random") {
    if (stat.ell < 2 || stat.ell > vertices || stat.k < 2 || stat.k > stat.ell)
      throw std::invalid_argument("exhaustive_destruction: bad ell/k");
    kind = Kind::DisconnectRandom;
  } else if (stat.name == "first-cut-size") {
    kind = Kind::FirstCut;
  } else {
    throw std::invalid_argument("exhaustive_destruction: unknown statistic name " + stat.name);
  }

  // target sets to average over
  std::vector<std::vector<Vertex>> target_sets;
  if (kind == Kind::DisconnectRandom) {
    std::vector<Vertex> comb(stat.ell);
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
      target_sets.push_back(comb);
      std::uint64_t i = stat.ell;
      while (i-- > 0) {
        if (comb[i] + (stat.ell - i) <= n) {
          ++comb[i];
          for (std::uint64_t j = i + 1; j < stat.ell; ++j) comb[j] = comb[j - 1] + 1;
          break;
        }
        if (i == 0) goto done;
      }
    }
  done:;
  } else {
    target_sets.push_back(targets);
  }

  std::map<std::int64_t, std::uint64_t> counts;
  auto trees = enumerate_increasing_trees(n);
  std::vector<Vertex> order(n);
  for (const auto& t : trees) {
    auto kids = children_of(t);
    std::iota(order.begin(), order.end(), 1);
    do {
      for (const auto& ts : target_sets) {
        std::int64_t v;
        switch (kind) {
          case Kind::Hit:
            v = eval_hit_count(t, kids, order, set_flags(vertices, ts));
            break;
          case Kind::Disconnect:
          case Kind::DisconnectRandom:
            v = eval_disconnect(t, kids, order, set_flags(vertices, ts), stat.k);
            break;
          case Kind::FirstCut:
            v = eval_first_cut_size(t, kids, order);
            break;
        }
        ++counts[v];
      }
    } while (std::next_permutation(order.begin(), order.end()));
  }
  std::uint64_t total = factorial_u64(n) * factorial_u64(n) * target_sets.size();
  return from_counts(counts, total);
}

namespace {

// canonical binary shape of the natural-order cut tree of one component,
// given its member list in increasing label order
std::string ordered_cut_shape_of(const IncreasingTree& t, const std::vector<Vertex>& members) {
  if (members.size() == 1) return ".";
  Vertex first_edge = members[1];  // smallest non-root member = first removed edge
  std::vector<Vertex> severed = descendants_within(t, members, first_edge);
  std::vector<Vertex> rest;
  std::set_difference(members.begin(), members.end(), severed.begin(), severed.end(),
                      std::back_inserter(rest));
  std::string a = ordered_cut_shape_of(t, rest);
  std::string b = ordered_cut_shape_of(t, severed);
  if (b < a) std::swap(a, b);
  return "(" + a + b + ")";
}

}  // namespace

std::string ordered_cut_shape_direct(const IncreasingTree& t) {
  std::vector<Vertex> all(t.vertex_count());
  std::iota(all.begin(), all.end(), 0);
  return ordered_cut_shape_of(t, all);
}

std::string component_shape_direct(const IncreasingTree& t, std::span<const Vertex> order) {
  struct Node {
    std::uint64_t size;
    std::vector<std::size_t> children;
  };
  std::vector<Node> nodes;
  nodes.push_back({t.vertex_count(), {}});
  // comp id per vertex, member lists, node per comp
  std::vector<std::size_t> comp(t.vertex_count(), 0);
  std::vector<std::vector<Vertex>> members(1);
  std::vector<std::size_t> node_of{0};
  members[0].resize(t.vertex_count());
  std::iota(members[0].begin(), members[0].end(), 0);

  for (Vertex e : order) {
    std::size_t c = comp[e];
    std::vector<Vertex> severed = descendants_within(t, members[c], e);
    std::vector<Vertex> rest;
    std::set_difference(members[c].begin(), members[c].end(), severed.begin(), severed.end(),
                        std::back_inserter(rest));
    std::size_t nc = members.size();
    members.push_back(severed);
    members[c] = std::move(rest);
    for (Vertex v : severed) comp[v] = nc;
    nodes.push_back({severed.size(), {}});
    nodes[node_of[c]].children.push_back(nodes.size() - 1);
    node_of.push_back(nodes.size() - 1);
  }

  // encode in creation order
  std::string out;
  auto rec = [&](auto&& self, std::size_t u) -> void {
    out += std::to_string(nodes[u].size);
    out += '(';
    for (std::size_t ch : nodes[u].children) self(self, ch);
    out += ')';
  };
  rec(rec, 0);
  return out;
}

ShapeLaw exhaustive_ordered_cut_shape_law(std::uint64_t n) {
  if (n < 1 || n > 6) throw std::invalid_argument("exhaustive_ordered_cut_shape_law: need 1 <= n <= 6");
  ShapeLaw law;
  auto trees = enumerate_increasing_trees(n);
  Rational w(BigInt(1), factorial_big(n));
  for (const auto& t : trees) law[ordered_cut_shape_direct(t)] += w;
  return law;
}

ShapeLaw exhaustive_component_shape_law(std::uint64_t n) {
  if (n < 1 || n > 6) throw std::invalid_argument("exhaustive_component_shape_law: need 1 <= n <= 6");
  ShapeLaw law;
  auto trees = enumerate_increasing_trees(n);
  Rational w(BigInt(1), factorial_big(n) * factorial_big(n));
  std::vector<Vertex> order(n);
  for (const auto& t : trees) {
    std::iota(order.begin(), order.end(), 1);
    do {
      law[component_shape_direct(t, order)] += w;
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return law;
}

ShapeLaw bst_chain_shape_law(std::uint64_t leaf_count) {
  if (leaf_count < 1 || leaf_count > 8)
    throw std::invalid_argument("bst_chain_shape_law: need 1 <= leaves <= 8");
  ShapeLaw cur;
  cur["."] = 1;
  for (std::uint64_t leaves = 1; leaves < leaf_count; ++leaves) {
    ShapeLaw next;
    for (const auto& [key, p] : cur) {
      Rational share = p / leaves;
      for (std::uint64_t k = 0; k < leaves; ++k) {
        BinTree bt;
        std::size_t pos = 0;
        parse_shape(key, pos, bt);
        int kk = static_cast<int>(k);
        expand_kth_leaf(bt, 0, kk);
        next[encode_canonical(bt, 0)] += share;
      }
    }
    cur = std::move(next);
  }
  return cur;
}

SplitCheckResult exact_conditional_split_check(std::uint64_t n) {
  if (n < 1 || n > 5) throw std::invalid_argument("exact_conditional_split_check: need 1 <= n <= 5");
  const std::uint64_t vertices = n + 1;
  auto trees = enumerate_increasing_trees(n);

  // observed joint counts keyed by (j, canonical root side, canonical severed side)
  std::map<std::string, std::uint64_t> counts;
  std::vector<Vertex> all(vertices);
  std::iota(all.begin(), all.end(), 0);
  for (const auto& t : trees) {
    for (Vertex e = 1; e <= n; ++e) {
      std::vector<Vertex> severed = descendants_within(t, all, e);
      std::vector<Vertex> rest;
      std::set_difference(all.begin(), all.end(), severed.begin(), severed.end(),
                          std::back_inserter(rest));
      IncreasingTree t_sev = canonical_relabel(t, VertexSet{severed});
      IncreasingTree t_rest = canonical_relabel(t, VertexSet{rest});
      std::string key = std::to_string(severed.size()) + "|" + encode_parents(t_rest) + "|" +
                        encode_parents(t_sev);
      ++counts[key];
    }
  }

  // compare against the product law over every theoretical configuration
  Rational total(BigInt(factorial_u64(n)) * n);
  Rational max_dev(0);
  for (std::uint64_t j = 1; j <= n; ++j) {
    Rational pj(BigInt(n + 1), BigInt(n) * j * (j + 1));
    auto rest_trees = enumerate_increasing_trees(n - j);
    auto sev_trees = enumerate_increasing_trees(j - 1);
    Rational per_pair = pj / (factorial_big(n - j) * factorial_big(j - 1));
    for (const auto& tr : rest_trees) {
      for (const auto& ts : sev_trees) {
        std::string key =
            std::to_string(j) + "|" + encode_parents(tr) + "|" + encode_parents(ts);
        auto it = counts.find(key);
        Rational observed = (it == counts.end()) ? Rational(0) : Rational(BigInt(it->second)) / total;
        Rational dev = observed - per_pair;
        if (dev < 0) dev = -dev;
        if (dev > max_dev) max_dev = dev;
        if (it != counts.end()) counts.erase(it);
      }
    }
  }
  // leftover observed keys would be configurations outside the product support
  bool leftovers = !counts.empty();
  return SplitCheckResult{max_dev == 0 && !leftovers, max_dev};
}

ExactDistribution subtree_size_law(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw std::invalid_argument("subtree_size_law: need k <= n");
  ExactDistribution d;
  if (k == 0) {
    d.support = {static_cast<std::int64_t>(n + 1)};
    d.prob = {Rational(1)};
    return d;
  }
  // 1 + beta-binomial(m, 1, k): P(X = x) = C(m,x) k x! (m-x+k-1)! / (m+k)!
  std::uint64_t m = n - k;
  BigInt denom = factorial_big(m + k);
  for (std::uint64_t x = 0; x <= m; ++x) {
    BigInt c = factorial_big(m) / (factorial_big(x) * factorial_big(m - x));
    BigInt num = c * k * factorial_big(x) * factorial_big(m - x + k - 1);
    d.support.push_back(static_cast<std::int64_t>(1 + x));
    d.prob.emplace_back(num, denom);
  }
  d.check_normalized();
  return d;
}

ExactDistribution urn_red_law(std::uint64_t draws, const Rational& p) {
  if (p < 0 || p > 1) throw std::invalid_argument("urn_red_law: need p in [0,1]");
  // reds[r] after d draws; total balls = d + 1
  std::vector<Rational> reds(draws + 2, Rational(0));
  reds[1] = 1;
  for (std::uint64_t d = 0; d < draws; ++d) {
    std::vector<Rational> next(draws + 2, Rational(0));
    Rational total(BigInt(d + 1));
    for (std::uint64_t r = 1; r <= d + 1; ++r) {
      if (reds[r].is_zero()) continue;
      Rational up = p * Rational(BigInt(r)) / total;
      next[r + 1] += reds[r] * up;
      next[r] += reds[r] * (1 - up);
    }
    reds = std::move(next);
  }
  ExactDistribution out;
  for (std::uint64_t r = 1; r <= draws + 1; ++r)
    if (!reds[r].is_zero()) {
      out.support.push_back(static_cast<std::int64_t>(r));
      out.prob.push_back(reds[r]);
    }
  out.check_normalized();
  return out;
}

ExactDistribution percolation_root_cluster_law(std::uint64_t n, const Rational& p) {
  if (n < 1 || n > 6) throw std::invalid_argument("percolation_root_cluster_law: need 1 <= n <= 6");
  if (p < 0 || p > 1) throw std::invalid_argument("percolation_root_cluster_law: need p in [0,1]");
  auto trees = enumerate_increasing_trees(n);
  std::vector<Rational> pow_p(n + 1), pow_q(n + 1);
  pow_p[0] = pow_q[0] = 1;
  for (std::uint64_t i = 1; i <= n; ++i) {
    pow_p[i] = pow_p[i - 1] * p;
    pow_q[i] = pow_q[i - 1] * (1 - p);
  }
  std::map<std::int64_t, Rational> acc;
  Rational tree_w(BigInt(1), factorial_big(n));
  std::vector<char> in_cluster(n + 1);
  for (const auto& t : trees) {
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
      in_cluster[0] = 1;
      std::int64_t size = 1;
      for (Vertex v = 1; v <= n; ++v) {
        in_cluster[v] = ((mask >> (v - 1)) & 1) && in_cluster[t.parent[v]];
        size += in_cluster[v];
      }
      std::uint64_t kept = static_cast<std::uint64_t>(__builtin_popcountll(mask));
      acc[size] += tree_w * pow_p[kept] * pow_q[n - kept];
    }
  }
  ExactDistribution out;
  for (const auto& [v, q] : acc) {
    out.support.push_back(v);
    out.prob.push_back(q);
  }
  out.check_normalized();
  return out;
}

}  // namespace rrtcut
