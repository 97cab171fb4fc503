// Acceptance suite. Prints one PASS/FAIL line per criterion.
//
//   acceptance                 run every criterion
//   acceptance --criterion K   run criterion K only

#include "cscreen/brute_force.hpp"
#include "cscreen/experiments/bench.hpp"
#include "cscreen/experiments/corpus.hpp"
#include "cscreen/graph_algorithms.hpp"
#include "cscreen/hawkes.hpp"
#include "cscreen/parallel.hpp"
#include "cscreen/screening.hpp"
#include "cscreen/separation.hpp"
#include "support/fixtures.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>

#ifndef CSCREEN_CLI
#error "CSCREEN_CLI must name the command-line binary"
#endif
#ifndef CSCREEN_SAMPLES
#error "CSCREEN_SAMPLES must name the samples directory"
#endif

using namespace cscreen;
using experiments::CorpusConfig;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char *f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

constexpr double kDensities[] = {0.2, 0.5, 0.8};

/// 300 DMGs: n cycles through 3..5, then p_dir and p_bi through the grid.
DirectedMixedGraph oracle_corpus(std::size_t i) {
  const std::size_t n = 3 + i % 3;
  const double p_dir = kDensities[(i / 3) % 3];
  const double p_bi = kDensities[(i / 9) % 3];
  return experiments::random_dmg({n, p_dir, p_bi, 1, 1000 + i}, 0);
}

// 1 ---------------------------------------------------------------------------
Outcome oracle_cross_validation() {
  const auto t0 = Clock::now();
  std::size_t queries = 0, disagree = 0;
  for (std::size_t i = 0; i < 300; ++i) {
    const auto g = oracle_corpus(i);
    const std::size_t n = g.size();
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<std::size_t> pool;
      for (std::size_t v = 0; v < n; ++v)
        if (v != a) pool.push_back(v);
      for (const auto &c : fixtures::all_subsets(n, pool))
        for (std::size_t b = 0; b < n; ++b) {
          const auto q = SeparationQuery::singleton(n, a, b, c);
          ++queries;
          if (mu_separated(g, q) != brute::mu_separated(g, q)) ++disagree;
        }
    }
  }
  const double secs = seconds_since(t0);
  return {disagree == 0 && secs < 120,
          std::to_string(queries) + " queries, " + std::to_string(disagree) + " disagreements, " +
              fmt("%.1f", secs) + " s"};
}

// 2 ---------------------------------------------------------------------------
Outcome trek_criterion() {
  std::size_t pairs = 0, disagree = 0;
  for (std::size_t i = 0; i < 300; ++i) {
    const auto g = oracle_corpus(i);
    const std::size_t n = g.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        NodeSet c(n);
        c.insert(b);
        ++pairs;
        if (directed_trek_exists(g, NodeId(a), NodeId(b)) == mu_separated(g, SeparationQuery::singleton(n, a, b, c)))
          ++disagree;
      }
  }
  return {disagree == 0, std::to_string(pairs) + " pairs, " + std::to_string(disagree) + " disagreements"};
}

// 3 ---------------------------------------------------------------------------
Outcome parent_graph_identity() {
  Rng rng(3);
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < 300; ++i) {
    const std::size_t n = 2 + i % 7;
    const double p = 0.1 + 0.1 * static_cast<double>(i % 6);
    const auto d = experiments::random_dmg({n, p, 0.0, 1, 3000 + i}, 0);
    const auto o = fixtures::random_observed(d, rng, 2);
    if (!(directed_part(latent_projection(d, o)) == parent_graph(d, o))) ++mismatches;
  }
  return {mismatches == 0, "300 DGs, " + std::to_string(mismatches) + " mismatches"};
}

// 4-6 share one corpus of 500 mixed-density DMG truths with random O.
struct Truth {
  DirectedMixedGraph graph;
  ObservedSet observed;
  DirectedMixedGraph parent;      // true parent graph, via the canonical DG
  DirectedMixedGraph projection;  // latent projection on O
};

const std::vector<Truth> &learning_corpus() {
  static const std::vector<Truth> corpus = [] {
    std::vector<Truth> out;
    Rng rng(4);
    for (std::size_t i = 0; i < 500; ++i) {
      const std::size_t n = 2 + i % 7;
      const double p_dir = 0.1 + 0.15 * static_cast<double>((i / 7) % 5);
      const double p_bi = 0.1 * static_cast<double>((i / 35) % 5);
      auto g = experiments::random_dmg({n, p_dir, p_bi, 1, 4000 + i}, 0);
      auto o = fixtures::random_observed(g, rng, 2);
      const auto c = canonical_dg(g);
      auto parent = parent_graph(c.graph, ObservedSet(c.graph, {o.nodes().begin(), o.nodes().end()}));
      auto projection = latent_projection(g, o);
      out.push_back({std::move(g), std::move(o), std::move(parent), std::move(projection)});
    }
    return out;
  }();
  return corpus;
}

constexpr AlgorithmId kLearners[] = {AlgorithmId::cs, AlgorithmId::csapc, AlgorithmId::csap, AlgorithmId::ca};

Outcome soundness() {
  std::size_t runs = 0, missing = 0;
  for (const auto &t : learning_corpus())
    for (auto algo : kLearners) {
      GraphicalOracle oracle(t.graph, t.observed);
      const auto out = run(algo, oracle).graph;
      ++runs;
      for (auto [a, b] : t.parent.directed_edges())
        if (!out.has_directed(a, b)) ++missing;
    }
  return {missing == 0, std::to_string(runs) + " runs (CS, CSAPC, CSAP, CA), " + std::to_string(missing) +
                            " missing edges"};
}

Outcome unconfounded_completeness() {
  std::size_t checked = 0, violations = 0;
  for (const auto &t : learning_corpus()) {
    GraphicalOracle oracle(t.graph, t.observed);
    const auto out = run(AlgorithmId::cs, oracle).graph;
    const std::size_t m = t.observed.size();
    for (std::size_t b = 0; b < m; ++b) {
      if (!t.projection.siblings(NodeId(b)).empty()) continue;
      for (std::size_t a = 0; a < m; ++a) {
        if (a == b) continue;
        ++checked;
        if (out.has_directed(NodeId(a), NodeId(b)) && !t.projection.has_directed(NodeId(a), NodeId(b)))
          ++violations;
      }
    }
  }
  return {violations == 0, std::to_string(checked) + " unconfounded pairs, " + std::to_string(violations) +
                               " violations"};
}

Outcome call_bounds() {
  std::size_t runs = 0, violations = 0;
  for (const auto &t : learning_corpus()) {
    const std::size_t m = t.observed.size();
    GraphicalOracle trek(t.graph, t.observed);
    trek_step(trek);
    if (trek.calls() != m * (m - 1)) ++violations;
    for (auto algo : {AlgorithmId::cs, AlgorithmId::csapc}) {
      GraphicalOracle oracle(t.graph, t.observed);
      ++runs;
      if (run(algo, oracle).oracle_calls > 2 * m * (m - 1)) ++violations;
    }
  }
  return {violations == 0, std::to_string(runs) + " CS/CSAPC runs and 500 trek steps, " +
                               std::to_string(violations) + " violations"};
}

// 7 ---------------------------------------------------------------------------
constexpr double kSweep[] = {0.05, 0.1, 0.2, 0.3, 0.5};

Outcome qualitative_reproduction() {
  bool ok = true;
  std::ostringstream detail;
  detail << "n=5 CA/CS mean calls:";
  for (double p : kSweep) {
    experiments::BenchConfig cfg;
    cfg.corpus = {5, p, p / 2, 500, 7005};
    cfg.algorithms = {AlgorithmId::cs, AlgorithmId::ca};
    const auto s = experiments::summarize(experiments::bench_run(cfg));
    ok = ok && s[1].mean_calls > s[0].mean_calls;
    detail << ' ' << fmt("%.1f", s[1].mean_calls) << '/' << fmt("%.1f", s[0].mean_calls);
  }
  detail << "; n=10 mean excess CS/CSAPC/CSAP:";
  for (double p : kSweep) {
    experiments::BenchConfig cfg;
    cfg.corpus = {10, p, p / 2, 500, 7010};
    cfg.algorithms = {AlgorithmId::cs, AlgorithmId::csapc, AlgorithmId::csap};
    const auto s = experiments::summarize(experiments::bench_run(cfg));
    ok = ok && s[1].mean_excess <= s[0].mean_excess + 0.1 && s[2].mean_excess <= s[0].mean_excess + 0.1;
    detail << ' ' << fmt("%.2f", s[0].mean_excess) << '/' << fmt("%.2f", s[1].mean_excess) << '/'
           << fmt("%.2f", s[2].mean_excess);
  }
  return {ok, detail.str()};
}

// 8 ---------------------------------------------------------------------------
Outcome running_example() {
  const auto fig = fixtures::running_example();
  const auto obs = fixtures::running_example_observed(fig);
  GraphicalOracle oracle(fig, obs);
  const auto result = run(AlgorithmId::cs, oracle);
  const auto edges = fixtures::edge_strings(result.graph);
  const std::vector<std::string> expected{"alpha->delta", "alpha->epsilon", "delta->epsilon"};
  const auto excess = experiments::excess_edges(result.graph, parent_graph(fig, obs));
  std::string got;
  for (const auto &e : edges) got += (got.empty() ? "" : ", ") + e;
  return {edges == expected && excess == 1,
          "expected {alpha->delta, alpha->epsilon, delta->epsilon} with excess 1; got {" + got +
              "} with excess " + std::to_string(excess)};
}

// 9 ---------------------------------------------------------------------------
Outcome hawkes_sanity() {
  using namespace hawkes;
  const auto t0 = Clock::now();
  using Kernels = std::vector<std::vector<ExponentialKernel>>;

  // (a) vanishing kernels: homogeneous Poisson(2) on [0, 100].
  const HawkesModel poisson({2.0}, Kernels(1, std::vector<ExponentialKernel>(1)), 100);
  const auto counts = parallel_map(200, default_threads(), [&](std::size_t r) {
    return static_cast<double>(simulate(poisson, derive_seed(901, r)).count(0));
  });
  double mean = 0;
  for (double c : counts) mean += c;
  mean /= 200;
  const bool a_ok = std::abs(mean - 200) < 4 * std::sqrt(200.0 / 200);

  // (b) stationary two-process model against (I - A)^{-1} mu.
  Kernels k(2, std::vector<ExponentialKernel>(2));
  k[0][0] = {0.3, 1.5};
  k[0][1] = {0.1, 1.0};
  k[1][0] = {0.8, 2.0};
  k[1][1] = {0.2, 1.0};
  const HawkesModel two({0.5, 0.3}, k, 1e4);
  const auto a = two.branching_matrix();
  const double p = 1 - a[0][0], q = -a[0][1], r = -a[1][0], s = 1 - a[1][1], det = p * s - q * r;
  const double want[2] = {(s * 0.5 - q * 0.3) / det, (p * 0.3 - r * 0.5) / det};
  const auto h = simulate(two, 902);
  double worst = 0;
  for (std::size_t i = 0; i < 2; ++i)
    worst = std::max(worst, std::abs(static_cast<double>(h.count(i)) / 1e4 - want[i]) / want[i]);
  const bool b_ok = worst < 0.05;

  // (c) time rescaling on the same run.
  const auto xs = rescaled_intervals(two, h);
  const double d = ks_statistic_exp1(xs), crit = ks_critical_01(xs.size());
  const bool c_ok = xs.size() >= 10000 && d < crit;

  const double secs = seconds_since(t0);
  return {a_ok && b_ok && c_ok && secs < 300,
          "(a) mean count " + fmt("%.2f", mean) + " vs 200; (b) worst relative rate error " +
              fmt("%.4f", worst) + "; (c) KS " + fmt("%.4f", d) + " < " + fmt("%.4f", crit) + " on " +
              std::to_string(xs.size()) + " intervals; " + fmt("%.1f", secs) + " s"};
}

// 10 --------------------------------------------------------------------------
std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / ("cscreen_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string cli = CSCREEN_CLI, samples = CSCREEN_SAMPLES;

  // Each command writes into <run>/; {D} is replaced by that directory.
  const std::vector<std::pair<std::string, std::string>> commands{
      {"learn", "--seed 5 learn --graph " + samples + "/running_example.json --observed alpha,delta,epsilon "
                "--order random --out-dot {D}/g.dot --out-json {D}/g.json --emit-certificates {D}/c.csv "
                "--emit-trace {D}/t.csv --query-log {D}/q.csv"},
      {"learn-json", "--format json learn --graph " + samples + "/running_example.json --algo csap"},
      {"simulate", "--seed 6 simulate --model " + samples + "/hawkes_two_node.json --out {D}/events.csv"},
      {"simulate-iv", "--seed 6 --format json simulate --model " + samples +
                          "/hawkes_two_node.json --intervene x@1,5,20 --out {D}/events.json"},
      {"bench", "--seed 7 --threads 3 bench --n 6 --replicates 40 --p-dir 0.2,0.4 --p-bi 0.1 "
                "--out {D}/metrics.csv --summary {D}/summary.csv"},
      {"bench-json", "--seed 7 --threads 2 --format json bench --n 5 --replicates 20 --summary {D}/s.json"},
      {"connectome", "--seed 8 --threads 2 connectome --input " + samples +
                         "/connectome_synthetic.csv --m 40 --replicates 3 --k 10 --out {D}/rows.csv"},
      {"musep", "--format json musep --graph " + samples + "/running_example.json --a alpha --b epsilon --c delta"},
  };

  std::size_t compared = 0;
  std::vector<std::string> failures;
  for (const auto &[name, args] : commands) {
    std::vector<fs::path> runs;
    for (int k = 0; k < 2; ++k) {
      const fs::path run_dir = dir / (name + "_" + std::to_string(k));
      fs::create_directories(run_dir);
      std::string a = args;
      for (std::size_t pos; (pos = a.find("{D}")) != std::string::npos;) a.replace(pos, 3, run_dir.string());
      const std::string cmd = "\"" + cli + "\" " + a + " > \"" + (run_dir / "stdout").string() + "\" 2> \"" +
                              (run_dir / "stderr").string() + "\"";
      if (std::system(cmd.c_str()) != 0) failures.push_back(name + " exited with an error");
      runs.push_back(run_dir);
    }
    for (const auto &entry : fs::directory_iterator(runs[0])) {
      const auto file = entry.path().filename();
      if (file == "stderr") continue;
      ++compared;
      if (slurp(runs[0] / file) != slurp(runs[1] / file)) failures.push_back(name + "/" + file.string() + " differs");
      if (fs::file_size(runs[0] / file) == 0 && file != "stdout") failures.push_back(name + "/" + file.string() + " empty");
    }
  }
  fs::remove_all(dir);
  std::string detail = std::to_string(commands.size()) + " commands, " + std::to_string(compared) + " files compared";
  for (const auto &f : failures) detail += "; " + f;
  return {failures.empty() && compared > 0, detail};
}

struct Criterion {
  const char *title;
  std::function<Outcome()> check;
};

const std::vector<Criterion> &criteria() {
  static const std::vector<Criterion> all{
      {"oracle cross-validation against walk enumeration", oracle_cross_validation},
      {"trek criterion", trek_criterion},
      {"parent graph equals directed part of the latent projection", parent_graph_identity},
      {"soundness of CS, CSAPC, CSAP and CA", soundness},
      {"unconfounded completeness of CS", unconfounded_completeness},
      {"oracle call bounds", call_bounds},
      {"qualitative comparison of algorithms", qualitative_reproduction},
      {"running example end to end", running_example},
      {"Hawkes simulation sanity", hawkes_sanity},
      {"CLI determinism", determinism},
  };
  return all;
}

} // namespace

int main(int argc, char **argv) {
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      const auto k = std::strtoul(argv[++i], nullptr, 10);
      if (k < 1 || k > criteria().size()) {
        std::cerr << "no criterion " << argv[i] << "\n";
        return 2;
      }
      selected.push_back(k);
    } else {
      std::cerr << "usage: acceptance [--criterion K]\n";
      return 2;
    }
  }
  if (selected.empty())
    for (std::size_t k = 1; k <= criteria().size(); ++k) selected.push_back(k);

  bool all_pass = true;
  for (auto k : selected) {
    const auto &c = criteria()[k - 1];
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all_pass = all_pass && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k << ": " << c.title << " (" << o.detail << ")"
              << std::endl;
  }
  return all_pass ? 0 : 1;
}
