// Experiment runner: every statistic of the library as a subcommand with
// reproducible seeding, parallel trials, and CSV/JSONL rows for external
// plotting. Per-trial randomness is keyed by (seed, trial, experiment tag),
// so output is byte-identical for any --threads value.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "rrtcut/coupling.hpp"
#include "rrtcut/cut_tree.hpp"
#include "rrtcut/destruction.hpp"
#include "rrtcut/exact.hpp"
#include "rrtcut/percolation.hpp"
#include "rrtcut/rng.hpp"
#include "rrtcut/stats.hpp"
#include "rrtcut/tree.hpp"

namespace {

using namespace rrtcut;

struct Config {
  std::uint64_t n = 1000;
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  std::uint64_t threads = 0;  // 0: resolve from env/hardware
  std::uint64_t ell = 1;
  std::uint64_t k = 2;
  double t = 1.0;
  double p = 0.5;
  std::string output;
  std::string format = "csv";
};

struct Row {
  double raw = 0.0;
  double normalized = 0.0;
  double ref = std::numeric_limits<double>::quiet_NaN();
};

struct Tolerance {
  std::string what;
  std::function<bool(const std::vector<Row>&, const Config&)> holds;
};

struct Experiment {
  std::string name;
  std::string stat;
  std::string blurb;
  std::uint64_t tag = 0;
  std::function<Row(const Config&, RngStream&)> sample;
  std::function<double(const Config&, double)> ref_cdf;  // null: no reference law
  std::optional<Tolerance> tolerance;
};

DestructionTrace fresh_trace(std::uint64_t n, RngStream& rng) {
  return sample_destruction(sample_rrt(n, rng), rng);
}

double ln_over_n(std::uint64_t n) {
  return std::log(static_cast<double>(n)) / static_cast<double>(n);
}

Row cauchy_row(std::uint64_t count, std::uint64_t n) {
  Row r;
  r.raw = static_cast<double>(count);
  r.normalized = cauchy_statistic(r.raw, n);
  r.ref = cauchy_limit_cdf(r.normalized);
  return r;
}

VertexSet uniform_targets(std::uint64_t n, std::uint64_t ell, bool distinct, RngStream& rng) {
  std::vector<Vertex> picks;
  picks.reserve(ell);
  while (picks.size() < ell) {
    const Vertex v = rng.uniform_below(n + 1);
    if (distinct && std::find(picks.begin(), picks.end(), v) != picks.end()) continue;
    picks.push_back(v);
  }
  return VertexSet::of(std::move(picks));
}

double root_cluster_scale(double t) { return t * std::exp(-t); }

double centered_root_cluster(std::uint64_t root_cluster, std::uint64_t n, double t) {
  const double ln = std::log(static_cast<double>(n));
  const double fraction = static_cast<double>(root_cluster) / static_cast<double>(n);
  return (fraction - std::exp(-t)) * ln - root_cluster_scale(t) * std::log(ln);
}

std::vector<Experiment> experiment_table() {
  std::vector<Experiment> out;

  out.push_back({"isolate-root", "cuts",
                 "cuts to isolate the root; centered (ln^2 n/n)x - ln n - ln ln n; stable-1 reference",
                 0,
                 [](const Config& c, RngStream& rng) {
                   return cauchy_row(isolate_root_fast(fresh_trace(c.n, rng)), c.n);
                 },
                 [](const Config&, double x) { return cauchy_limit_cdf(x); }, std::nullopt});

  out.push_back({"isolate-multi", "staged-cuts",
                 "cuts to isolate vertices 0..ell-1 in stages; same centering and reference",
                 1,
                 [](const Config& c, RngStream& rng) {
                   const auto r = isolate_first_ell(fresh_trace(c.n, rng), c.ell);
                   return cauchy_row(r.total_cuts, c.n);
                 },
                 [](const Config&, double x) { return cauchy_limit_cdf(x); }, std::nullopt});

  out.push_back({"random-targets", "isolation-cuts",
                 "cuts to isolate ell uniform vertices; scaled ln n/n; Beta(ell,1) reference",
                 2,
                 [](const Config& c, RngStream& rng) {
                   const DestructionTrace trace = fresh_trace(c.n, rng);
                   const VertexSet targets = uniform_targets(c.n, c.ell, false, rng);
                   Row r;
                   r.raw = static_cast<double>(isolate_targets(trace, targets));
                   r.normalized = ln_over_n(c.n) * r.raw;
                   r.ref = beta_cdf(r.normalized, static_cast<double>(c.ell), 1.0);
                   return r;
                 },
                 [](const Config& c, double x) {
                   return beta_cdf(x, static_cast<double>(c.ell), 1.0);
                 },
                 std::nullopt});

  out.push_back({"last-targets", "isolation-cuts",
                 "cuts to isolate the ell largest labels; scaled ln n/n; Beta(ell,1) reference",
                 3,
                 [](const Config& c, RngStream& rng) {
                   const DestructionTrace trace = fresh_trace(c.n, rng);
                   std::vector<Vertex> picks;
                   for (std::uint64_t i = 0; i < c.ell; ++i) picks.push_back(c.n - i);
                   Row r;
                   r.raw = static_cast<double>(isolate_targets(trace, VertexSet::of(picks)));
                   r.normalized = ln_over_n(c.n) * r.raw;
                   r.ref = beta_cdf(r.normalized, static_cast<double>(c.ell), 1.0);
                   return r;
                 },
                 [](const Config& c, double x) {
                   return beta_cdf(x, static_cast<double>(c.ell), 1.0);
                 },
                 std::nullopt});

  out.push_back({"disconnect", "steps",
                 "steps until ell uniform vertices span k components; scaled ln n/n; "
                 "(k-1)st order statistic of ell uniforms as reference",
                 4,
                 [](const Config& c, RngStream& rng) {
                   const DestructionTrace trace = fresh_trace(c.n, rng);
                   const VertexSet targets = uniform_targets(c.n, c.ell, true, rng);
                   const auto d = disconnect_targets(trace, targets);
                   Row r;
                   r.raw = static_cast<double>(d.steps_to_blocks[c.k - 2]);
                   r.normalized = ln_over_n(c.n) * r.raw;
                   r.ref = uniform_order_stat_cdf(r.normalized, c.k - 1, c.ell);
                   return r;
                 },
                 [](const Config& c, double x) { return uniform_order_stat_cdf(x, c.k - 1, c.ell); },
                 std::nullopt});

  out.push_back({"first-targets-disconnect", "steps",
                 "steps until vertices 0..ell-1 span k components; centered like isolate-root",
                 5,
                 [](const Config& c, RngStream& rng) {
                   const auto d = disconnect_first_ell(fresh_trace(c.n, rng), c.ell);
                   return cauchy_row(d.steps_to_blocks[c.k - 2], c.n);
                 },
                 [](const Config&, double x) { return cauchy_limit_cdf(x); }, std::nullopt});

  out.push_back({"component-tree", "largest-severed",
                 "largest first-generation block of the size genealogy; scaled ln n/n; "
                 "exp(-1/x) reference",
                 6,
                 [](const Config& c, RngStream& rng) {
                   const auto iso = fast_isolation(fresh_trace(c.n, rng));
                   std::uint64_t largest = 0;
                   for (std::uint64_t s : iso.severed_sizes) largest = std::max(largest, s);
                   Row r;
                   r.raw = static_cast<double>(largest);
                   r.normalized = ln_over_n(c.n) * r.raw;
                   r.ref = frechet_cdf(r.normalized, 1.0);
                   return r;
                 },
                 [](const Config&, double x) { return frechet_cdf(x, 1.0); }, std::nullopt});

  out.push_back({"cut-tree", "tallest-branch",
                 "tallest branch hanging off the trunk, normalized by trunk length; no closed "
                 "reference law",
                 7,
                 [](const Config& c, RngStream& rng) {
                   const CutTree ct = build_cut_tree(fresh_trace(c.n, rng));
                   const auto trunk = trunk_decomposition(ct);
                   std::uint64_t tallest = 0;
                   for (const auto& b : trunk) tallest = std::max(tallest, b.height);
                   Row r;
                   r.raw = static_cast<double>(tallest);
                   r.normalized = r.raw / static_cast<double>(trunk.size());
                   return r;
                 },
                 nullptr,
                 Tolerance{"mean branch/trunk ratio <= 0.2",
                           [](const std::vector<Row>& rows, const Config&) {
                             double sum = 0.0;
                             for (const Row& r : rows) sum += r.normalized;
                             return sum / static_cast<double>(rows.size()) <= 0.2;
                           }}});

  out.push_back({"ordered", "root-cuts",
                 "root-isolation cuts under the deterministic order 1..n (the root degree); "
                 "(x - ln n)/sqrt(ln n); standard normal reference",
                 8,
                 [](const Config& c, RngStream& rng) {
                   const auto d = ordered_root_isolation_count(sample_rrt(c.n, rng));
                   const double ln = std::log(static_cast<double>(c.n));
                   Row r;
                   r.raw = static_cast<double>(d);
                   r.normalized = (r.raw - ln) / std::sqrt(ln);
                   r.ref = normal_cdf(r.normalized);
                   return r;
                 },
                 [](const Config&, double x) { return normal_cdf(x); }, std::nullopt});

  out.push_back({"coalescent", "collisions",
                 "collision count of the ring-deletion coalescent; centered like isolate-root",
                 9,
                 [](const Config& c, RngStream& rng) {
                   const auto r = ring_coalescent(sample_rrt(c.n, rng), rng);
                   return cauchy_row(r.collisions, c.n);
                 },
                 [](const Config&, double x) { return cauchy_limit_cdf(x); }, std::nullopt});

  out.push_back(
      {"percolation", "root-cluster",
       "root cluster size under retention 1 - t/ln n; fluctuation statistic with scaled "
       "stable-1 reference; summary checks the mean root fraction against exp(-t)",
       10,
       [](const Config& c, RngStream& rng) {
         const auto run = supercritical_run(c.n, c.t, rng);
         Row r;
         r.raw = static_cast<double>(run.root_cluster);
         r.normalized = centered_root_cluster(run.root_cluster, c.n, c.t);
         r.ref = cauchy_limit_cdf(r.normalized / root_cluster_scale(c.t) + std::log(c.t));
         return r;
       },
       [](const Config& c, double x) {
         return cauchy_limit_cdf(x / root_cluster_scale(c.t) + std::log(c.t));
       },
       Tolerance{"mean root fraction within 2% of exp(-t)",
                 [](const std::vector<Row>& rows, const Config& c) {
                   double sum = 0.0;
                   for (const Row& r : rows) sum += r.raw / static_cast<double>(c.n);
                   const double mean = sum / static_cast<double>(rows.size());
                   return std::abs(mean - std::exp(-c.t)) <= 0.02 * std::exp(-c.t);
                 }}});

  out.push_back({"urn", "red-count",
                 "reinforcement-urn red count after n draws; scaled n^-p; no closed reference law",
                 11,
                 [](const Config& c, RngStream& rng) {
                   Row r;
                   r.raw = static_cast<double>(polya_hoppe_urn(c.n, c.p, rng));
                   r.normalized = r.raw / std::pow(static_cast<double>(c.n), c.p);
                   return r;
                 },
                 nullptr, std::nullopt});

  out.push_back({"yule", "root-type",
                 "root-type count of the two-type growth process at population n+1; scaled n^-p",
                 12,
                 [](const Config& c, RngStream& rng) {
                   const YuleResult y = yule_with_mutations(c.n, c.p, rng);
                   std::vector<char> in(c.n + 1, 0);
                   in[0] = 1;
                   std::uint64_t size = 1;
                   for (Vertex v = 1; v <= c.n; ++v)
                     if (y.kept[v] && in[y.tree.parent[v]]) {
                       in[v] = 1;
                       ++size;
                     }
                   Row r;
                   r.raw = static_cast<double>(size);
                   r.normalized = r.raw / std::pow(static_cast<double>(c.n), c.p);
                   return r;
                 },
                 nullptr, std::nullopt});

  out.push_back({"walk", "last-passage",
                 "last-passage step count of the 1/(j(j+1)) walk below n; centered like "
                 "isolate-root",
                 13,
                 [](const Config& c, RngStream& rng) {
                   return cauchy_row(last_passage_walk(c.n, rng).last_passage, c.n);
                 },
                 [](const Config&, double x) { return cauchy_limit_cdf(x); }, std::nullopt});

  return out;
}

std::uint64_t resolve_threads(std::uint64_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RRTCUT_THREADS")) {
    const long v = std::atol(env);
    if (v > 0) return static_cast<std::uint64_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void write_rows(std::ostream& os, const Experiment& ex, const Config& cfg,
                const std::vector<Row>& rows) {
  const bool csv = cfg.format == "csv";
  if (csv) os << "experiment,n,trial,stat,raw,normalized,ref_cdf\n";
  for (std::uint64_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    if (csv) {
      os << ex.name << ',' << cfg.n << ',' << i << ',' << ex.stat << ',' << format_double(r.raw)
         << ',' << format_double(r.normalized) << ',' << format_double(r.ref) << '\n';
    } else {
      os << "{\"experiment\":\"" << ex.name << "\",\"n\":" << cfg.n << ",\"trial\":" << i
         << ",\"stat\":\"" << ex.stat << "\",\"raw\":" << format_double(r.raw)
         << ",\"normalized\":" << format_double(r.normalized)
         << ",\"ref_cdf\":" << (std::isnan(r.ref) ? "null" : format_double(r.ref)) << "}\n";
    }
  }
}

std::vector<Row> run_experiment(const Experiment& ex, const Config& cfg) {
  std::vector<Row> rows(cfg.trials);
  run_trials(cfg.trials, resolve_threads(cfg.threads), [&](std::uint64_t trial) {
    RngStream rng(cfg.seed, trial, ex.tag);
    rows[trial] = ex.sample(cfg, rng);
  });
  return rows;
}

double ks_against_reference(const Experiment& ex, const Config& cfg,
                            const std::vector<Row>& rows) {
  std::vector<double> normalized;
  normalized.reserve(rows.size());
  for (const Row& r : rows) normalized.push_back(r.normalized);
  return ks_statistic(std::move(normalized),
                      [&](double x) { return ex.ref_cdf(cfg, x); });
}

void print_summary(std::ostream& os, const Experiment& ex, const Config& cfg,
                   const std::vector<Row>& rows) {
  std::vector<double> normalized;
  for (const Row& r : rows) normalized.push_back(r.normalized);
  const SampleSummary s = summarize(normalized);
  os << "# summary experiment=" << ex.name << " n=" << cfg.n << " trials=" << cfg.trials
     << " seed=" << cfg.seed << '\n';
  os << "# mean=" << format_double(s.mean) << " variance=" << format_double(s.variance) << '\n';
  if (ex.ref_cdf) {
    os << "# ks=" << format_double(ks_against_reference(ex, cfg, rows)) << '\n';
  } else {
    os << "# ks=n/a (no reference law)\n";
  }
  if (ex.tolerance) {
    os << "# tolerance: " << ex.tolerance->what << " -> "
       << (ex.tolerance->holds(rows, cfg) ? "pass" : "fail") << '\n';
  } else {
    os << "# tolerance: none declared\n";
  }
}

int emit(const Experiment& ex, const Config& cfg, const std::vector<Row>& rows) {
  if (!cfg.output.empty()) {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
      std::cerr << "cannot open output file: " << cfg.output << '\n';
      return 3;
    }
    write_rows(file, ex, cfg, rows);
    if (!file.flush()) {
      std::cerr << "write failed: " << cfg.output << '\n';
      return 3;
    }
    print_summary(std::cout, ex, cfg, rows);
  } else {
    write_rows(std::cout, ex, cfg, rows);
    print_summary(std::cout, ex, cfg, rows);
  }
  return 0;
}

int run_oracle(const std::string& statistic, std::uint64_t n, std::uint64_t k,
               const std::string& output) {
  ExactDistribution law;
  if (statistic == "X") {
    law = exact_isolation_law(n);
  } else if (statistic == "split") {
    law = exact_split_law(n);
  } else if (statistic == "subtree") {
    law = subtree_size_law(n, k);
  } else {
    std::cerr << "unknown oracle statistic: " << statistic << '\n';
    return 2;
  }
  std::ofstream file;
  if (!output.empty()) {
    file.open(output, std::ios::binary);
    if (!file) {
      std::cerr << "cannot open output file: " << output << '\n';
      return 3;
    }
  }
  std::ostream& os = output.empty() ? std::cout : file;
  os << "# oracle statistic=" << statistic << " n=" << n << '\n';
  os << "value,probability,probability_double\n";
  for (std::uint64_t i = 0; i < law.support.size(); ++i) {
    os << law.support[i] << ',' << law.prob[i].str() << ','
       << format_double(law.p_double(law.support[i])) << '\n';
  }
  return 0;
}

int run_sweep(const Experiment& ex, Config cfg, const std::vector<std::uint64_t>& n_values) {
  std::ostream& os = std::cout;
  os << "# sweep experiment=" << ex.name << " trials=" << cfg.trials << " seed=" << cfg.seed
     << '\n';
  double prev = std::numeric_limits<double>::infinity();
  bool nonincreasing = true;
  for (std::uint64_t n : n_values) {
    cfg.n = n;
    const std::vector<Row> rows = run_experiment(ex, cfg);
    const double ks = ks_against_reference(ex, cfg, rows);
    os << "# n=" << n << " ks=" << format_double(ks) << '\n';
    if (ks > prev + 1e-12) nonincreasing = false;
    prev = ks;
  }
  os << "# trend: " << (nonincreasing ? "nonincreasing" : "violated") << '\n';
  return 0;
}

void print_listing(const std::vector<Experiment>& table) {
  std::cout << "experiment -> statistic\n";
  for (const auto& ex : table)
    std::cout << "  " << ex.name << ": " << ex.blurb << '\n';
  std::cout << "  oracle: exact rational law printer (X | split | subtree)\n";
  std::cout << "  sweep: run one experiment over several n and report the KS trend\n";
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Experiment> table = experiment_table();

  CLI::App app{"random recursive tree destruction experiments"};
  app.require_subcommand(0, 1);
  bool list = false;
  app.add_flag("--list", list, "describe every experiment and exit");

  Config cfg;
  std::vector<std::uint64_t> sweep_n;
  std::string sweep_experiment;
  std::string oracle_statistic = "X";

  auto add_common = [&](CLI::App* sub, bool with_n) {
    if (with_n) sub->add_option("--n", cfg.n, "tree edge count")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
    sub->add_option("--trials", cfg.trials, "trial count")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
    sub->add_option("--seed", cfg.seed, "rng seed");
    sub->add_option("--threads", cfg.threads, "worker threads (default: RRTCUT_THREADS or hardware)");
    sub->add_option("--output", cfg.output, "row output path (default stdout)");
    sub->add_option("--format", cfg.format, "csv or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
  };

  for (const auto& ex : table) {
    CLI::App* sub = app.add_subcommand(ex.name, ex.blurb);
    add_common(sub, true);
    if (ex.name == "isolate-multi" || ex.name == "random-targets" || ex.name == "last-targets")
      sub->add_option("--ell", cfg.ell, "target count")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 20));
    if (ex.name == "disconnect" || ex.name == "first-targets-disconnect") {
      sub->add_option("--ell", cfg.ell, "target count")->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 20));
      sub->add_option("--k", cfg.k, "component count to reach (2..ell)");
    }
    if (ex.name == "percolation") sub->add_option("--t", cfg.t, "supercritical window parameter");
    if (ex.name == "urn" || ex.name == "yule")
      sub->add_option("--p", cfg.p, "retention probability")->check(CLI::Range(0.0, 1.0));
  }

  CLI::App* oracle = app.add_subcommand("oracle", "print an exact rational law");
  oracle->add_option("--n", cfg.n, "tree edge count")->required();
  oracle->add_option("--statistic", oracle_statistic, "X | split | subtree");
  oracle->add_option("--k", cfg.k, "subtree root vertex (subtree statistic)");
  oracle->add_option("--output", cfg.output, "output path (default stdout)");

  CLI::App* sweep = app.add_subcommand("sweep", "KS trend of one experiment over several n");
  sweep->add_option("--experiment", sweep_experiment, "experiment to sweep")->required();
  sweep->add_option("--n", sweep_n, "edge counts (repeat; at least two)")->required();
  add_common(sweep, false);
  sweep->add_option("--ell", cfg.ell, "target count");
  sweep->add_option("--k", cfg.k, "component count to reach");
  sweep->add_option("--t", cfg.t, "supercritical window parameter");
  sweep->add_option("--p", cfg.p, "retention probability");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (list) {
    print_listing(table);
    return 0;
  }

  try {
    if (oracle->parsed()) return run_oracle(oracle_statistic, cfg.n, cfg.k, cfg.output);

    if (sweep->parsed()) {
      if (sweep_n.size() < 2) {
        std::cerr << "sweep needs at least two --n values\n";
        return 2;
      }
      for (const auto& ex : table) {
        if (ex.name == sweep_experiment) {
          if (!ex.ref_cdf) {
            std::cerr << "experiment has no reference law to sweep against: " << ex.name << '\n';
            return 2;
          }
          return run_sweep(ex, cfg, sweep_n);
        }
      }
      std::cerr << "unknown experiment: " << sweep_experiment << '\n';
      return 2;
    }

    for (const auto& ex : table) {
      CLI::App* sub = app.get_subcommand(ex.name);
      if (!sub->parsed()) continue;
      if ((ex.name == "disconnect" || ex.name == "first-targets-disconnect") &&
          (cfg.k < 2 || cfg.k > cfg.ell)) {
        std::cerr << "--k must lie in 2..ell\n";
        return 2;
      }
      const bool targeted = ex.name == "isolate-multi" || ex.name == "last-targets" ||
                            ex.name == "disconnect" || ex.name == "first-targets-disconnect";
      if (targeted && cfg.ell > cfg.n + 1) {
        std::cerr << "--ell exceeds the vertex count\n";
        return 2;
      }
      return emit(ex, cfg, run_experiment(ex, cfg));
    }

    std::cerr << "no subcommand given (try --help or --list)\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
