#ifndef CSCREEN_EXPERIMENTS_BENCH_HPP
#define CSCREEN_EXPERIMENTS_BENCH_HPP

#include "cscreen/experiments/connectome.hpp"
#include "cscreen/experiments/corpus.hpp"
#include "cscreen/experiments/metrics.hpp"
#include "cscreen/graph_algorithms.hpp"
#include "cscreen/parallel.hpp"
#include "cscreen/screening.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace cscreen::experiments {

struct BenchConfig {
  CorpusConfig corpus;
  std::vector<AlgorithmId> algorithms{AlgorithmId::cs, AlgorithmId::csapc, AlgorithmId::csap,
                                      AlgorithmId::ca};
  /// Fraction of nodes hidden from the oracle (rounded down).
  double latent_fraction = 0.0;
  ScreeningOptions screening;
  std::size_t threads = 1;
  /// Record wall-clock milliseconds; otherwise the column is 0 so output is
  /// reproducible byte for byte.
  bool timing = false;
};

struct MetricsRow {
  AlgorithmId algorithm = AlgorithmId::cs;
  std::size_t replicate = 0;
  std::size_t n = 0;
  double p_dir = 0;
  double p_bi = 0;
  std::size_t true_directed = 0;
  std::size_t true_bidirected = 0;
  std::size_t excess = 0;
  std::size_t calls = 0;
  double ms = 0;
};

namespace detail {

inline std::string fmt(double v, const char *spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

template <class F> double timed(bool enabled, F &&f) {
  if (!enabled) {
    f();
    return 0.0;
  }
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

} // namespace detail

/// Observed set for replicate i: all nodes, or all but a seeded random
/// floor(latent_fraction * n) of them.
inline ObservedSet bench_observed(const BenchConfig &cfg, const DirectedMixedGraph &truth, std::size_t i) {
  if (!(cfg.latent_fraction >= 0.0 && cfg.latent_fraction < 1.0))
    throw InputError("bench: latent fraction must lie in [0, 1)");
  const std::size_t n = truth.size();
  const auto hidden = static_cast<std::size_t>(cfg.latent_fraction * static_cast<double>(n));
  std::vector<std::size_t> idx(n);
  for (std::size_t v = 0; v < n; ++v) idx[v] = v;
  if (hidden > 0) {
    Rng rng(derive_seed(derive_seed(cfg.corpus.seed, i), 0x0b5e7));
    rng.shuffle(idx);
  }
  std::vector<NodeId> keep;
  for (std::size_t k = hidden; k < n; ++k) keep.emplace_back(idx[k]);
  return ObservedSet(truth, keep);
}

/// One row per (replicate, algorithm), ordered by replicate then by the
/// configured algorithm order. Each algorithm gets a fresh oracle. Throws
/// SoundnessViolation if any output misses a true edge.
inline std::vector<MetricsRow> bench_run(const BenchConfig &cfg) {
  cfg.corpus.validate();
  auto per_replicate = [&](std::size_t i) {
    const auto truth = random_dmg(cfg.corpus, i);
    const auto obs = bench_observed(cfg, truth, i);
    const auto target = directed_part(latent_projection(truth, obs));
    std::vector<MetricsRow> rows;
    for (auto algo : cfg.algorithms) {
      GraphicalOracle oracle(truth, obs);
      std::optional<LearnResult> result;
      const double ms = detail::timed(cfg.timing, [&] { result = run(algo, oracle, cfg.screening); });
      rows.push_back({algo, i, cfg.corpus.n, cfg.corpus.p_dir, cfg.corpus.p_bi,
                      truth.directed_edge_count(), truth.bidirected_edge_count(),
                      excess_edges(result->graph, target), result->oracle_calls, ms});
    }
    return rows;
  };
  std::vector<MetricsRow> out;
  for (auto &rows : parallel_map(cfg.corpus.count, cfg.threads, per_replicate))
    out.insert(out.end(), rows.begin(), rows.end());
  return out;
}

inline void write_metrics_csv(std::ostream &os, const std::vector<MetricsRow> &rows) {
  os << "algo,replicate,n,p_dir,p_bi,true_directed,true_bidirected,excess,calls,ms\n";
  for (const auto &r : rows)
    os << to_string(r.algorithm) << ',' << r.replicate << ',' << r.n << ',' << detail::fmt(r.p_dir) << ','
       << detail::fmt(r.p_bi) << ',' << r.true_directed << ',' << r.true_bidirected << ',' << r.excess
       << ',' << r.calls << ',' << detail::fmt(r.ms, "%.3f") << '\n';
}

inline nlohmann::json metrics_json(const std::vector<MetricsRow> &rows) {
  auto arr = nlohmann::json::array();
  for (const auto &r : rows)
    arr.push_back({{"algo", to_string(r.algorithm)},
                   {"replicate", r.replicate},
                   {"n", r.n},
                   {"p_dir", r.p_dir},
                   {"p_bi", r.p_bi},
                   {"true_directed", r.true_directed},
                   {"true_bidirected", r.true_bidirected},
                   {"excess", r.excess},
                   {"calls", r.calls},
                   {"ms", r.ms}});
  return arr;
}

struct BenchSummary {
  AlgorithmId algorithm = AlgorithmId::cs;
  double p_dir = 0;
  double p_bi = 0;
  std::size_t replicates = 0;
  double mean_excess = 0;
  double mean_calls = 0;
  std::size_t max_calls = 0;
  double mean_ms = 0;
};

/// Means per (density, algorithm), in order of first appearance.
inline std::vector<BenchSummary> summarize(const std::vector<MetricsRow> &rows) {
  std::vector<BenchSummary> out;
  for (const auto &r : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const BenchSummary &s) {
      return s.algorithm == r.algorithm && s.p_dir == r.p_dir && s.p_bi == r.p_bi;
    });
    if (it == out.end()) it = out.insert(out.end(), BenchSummary{r.algorithm, r.p_dir, r.p_bi});
    ++it->replicates;
    it->mean_excess += static_cast<double>(r.excess);
    it->mean_calls += static_cast<double>(r.calls);
    it->max_calls = std::max(it->max_calls, r.calls);
    it->mean_ms += r.ms;
  }
  for (auto &s : out) {
    const double k = static_cast<double>(s.replicates);
    s.mean_excess /= k;
    s.mean_calls /= k;
    s.mean_ms /= k;
  }
  return out;
}

inline void write_summary_csv(std::ostream &os, const std::vector<BenchSummary> &rows) {
  os << "algo,p_dir,p_bi,replicates,mean_excess,mean_calls,max_calls,mean_ms\n";
  for (const auto &s : rows)
    os << to_string(s.algorithm) << ',' << detail::fmt(s.p_dir) << ',' << detail::fmt(s.p_bi) << ','
       << s.replicates << ',' << detail::fmt(s.mean_excess) << ',' << detail::fmt(s.mean_calls) << ','
       << s.max_calls << ',' << detail::fmt(s.mean_ms, "%.3f") << '\n';
}

inline nlohmann::json summary_json(const std::vector<BenchSummary> &rows) {
  auto arr = nlohmann::json::array();
  for (const auto &s : rows)
    arr.push_back({{"algo", to_string(s.algorithm)},
                   {"p_dir", s.p_dir},
                   {"p_bi", s.p_bi},
                   {"replicates", s.replicates},
                   {"mean_excess", s.mean_excess},
                   {"mean_calls", s.mean_calls},
                   {"max_calls", s.max_calls},
                   {"mean_ms", s.mean_ms}});
  return arr;
}

// Connectome pipeline --------------------------------------------------------

struct ConnectomeConfig {
  ConnectomeSpec spec;
  std::size_t replicates = 10;
  std::uint64_t seed = 1;
  AlgorithmId algorithm = AlgorithmId::cs;
  ScreeningOptions screening;
  /// Size of the hub sets compared by top-k overlap.
  std::size_t k = 15;
  std::size_t threads = 1;
  bool timing = false;
};

struct ConnectomeRow {
  std::size_t replicate = 0;
  std::size_t observed = 0;
  std::size_t projection_directed = 0;
  std::size_t projection_bidirected = 0;
  std::size_t parent_directed = 0;
  std::size_t output_directed = 0;
  std::size_t excess = 0;
  std::size_t calls = 0;
  std::optional<double> spearman_in;
  std::optional<double> spearman_out;
  std::size_t topk_in = 0;
  std::size_t topk_out = 0;
  double ms = 0;
};

/// Subsample, learn against the oracle of the canonical DG, and compare with
/// the true parent graph on the sample. Replicate r samples with seed
/// derive_seed(seed, r).
inline std::vector<ConnectomeRow> connectome_run(const DirectedMixedGraph &g, const ConnectomeConfig &cfg) {
  if (cfg.spec.m > g.size())
    throw InputError("connectome: sample size " + std::to_string(cfg.spec.m) + " exceeds " +
                     std::to_string(g.size()) + " neurons");
  if (cfg.k > cfg.spec.m) throw InputError("connectome: k exceeds the sample size");
  const auto canonical = canonical_dg(g);
  auto per_replicate = [&](std::size_t r) {
    const auto obs = subsample(g, cfg.spec.m, derive_seed(cfg.seed, r), cfg.spec.weight_exponent);
    const ObservedSet lifted(canonical.graph, {obs.nodes().begin(), obs.nodes().end()});
    const auto projection = latent_projection(g, obs);
    const auto target = parent_graph(canonical.graph, lifted);
    GraphicalOracle oracle(canonical.graph, lifted);
    std::optional<LearnResult> result;
    const double ms = detail::timed(cfg.timing, [&] { result = run(cfg.algorithm, oracle, cfg.screening); });
    const auto &out = result->graph;
    ConnectomeRow row;
    row.replicate = r;
    row.observed = obs.size();
    row.projection_directed = projection.directed_edge_count();
    row.projection_bidirected = projection.bidirected_edge_count();
    row.parent_directed = target.directed_edge_count();
    row.output_directed = out.directed_edge_count();
    row.excess = excess_edges(out, target);
    row.calls = result->oracle_calls;
    row.spearman_in = spearman(as_doubles(indegrees(target)), as_doubles(indegrees(out)));
    row.spearman_out = spearman(as_doubles(outdegrees(target)), as_doubles(outdegrees(out)));
    row.topk_in = topk_overlap(indegrees(target), indegrees(out), cfg.k);
    row.topk_out = topk_overlap(outdegrees(target), outdegrees(out), cfg.k);
    row.ms = ms;
    return row;
  };
  return parallel_map(cfg.replicates, cfg.threads, per_replicate);
}

namespace detail {
inline std::string opt_fmt(const std::optional<double> &v) { return v ? fmt(*v) : "NA"; }
} // namespace detail

inline void write_connectome_csv(std::ostream &os, const std::vector<ConnectomeRow> &rows) {
  os << "replicate,observed,projection_directed,projection_bidirected,parent_directed,"
        "output_directed,excess,calls,spearman_in,spearman_out,topk_in,topk_out,ms\n";
  for (const auto &r : rows)
    os << r.replicate << ',' << r.observed << ',' << r.projection_directed << ','
       << r.projection_bidirected << ',' << r.parent_directed << ',' << r.output_directed << ','
       << r.excess << ',' << r.calls << ',' << detail::opt_fmt(r.spearman_in) << ','
       << detail::opt_fmt(r.spearman_out) << ',' << r.topk_in << ',' << r.topk_out << ','
       << detail::fmt(r.ms, "%.3f") << '\n';
}

inline nlohmann::json connectome_json(const std::vector<ConnectomeRow> &rows) {
  auto opt = [](const std::optional<double> &v) { return v ? nlohmann::json(*v) : nlohmann::json(); };
  auto arr = nlohmann::json::array();
  for (const auto &r : rows)
    arr.push_back({{"replicate", r.replicate},
                   {"observed", r.observed},
                   {"projection_directed", r.projection_directed},
                   {"projection_bidirected", r.projection_bidirected},
                   {"parent_directed", r.parent_directed},
                   {"output_directed", r.output_directed},
                   {"excess", r.excess},
                   {"calls", r.calls},
                   {"spearman_in", opt(r.spearman_in)},
                   {"spearman_out", opt(r.spearman_out)},
                   {"topk_in", r.topk_in},
                   {"topk_out", r.topk_out},
                   {"ms", r.ms}});
  return arr;
}

} // namespace cscreen::experiments

#endif
