#ifndef CSCREEN_SCREENING_HPP
#define CSCREEN_SCREENING_HPP

#include "cscreen/graph.hpp"
#include "cscreen/oracle.hpp"
#include "cscreen/random.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cscreen {

enum class AlgorithmId { cs, csapc, csap, ca, trek_only };

inline std::string_view to_string(AlgorithmId a) {
  switch (a) {
  case AlgorithmId::cs: return "cs";
  case AlgorithmId::csapc: return "csapc";
  case AlgorithmId::csap: return "csap";
  case AlgorithmId::ca: return "ca";
  case AlgorithmId::trek_only: return "trek";
  }
  return "?";
}

inline AlgorithmId parse_algorithm(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "cs") return AlgorithmId::cs;
  if (lower == "csapc") return AlgorithmId::csapc;
  if (lower == "csap") return AlgorithmId::csap;
  if (lower == "ca") return AlgorithmId::ca;
  if (lower == "trek" || lower == "trek_only") return AlgorithmId::trek_only;
  throw InputError("unknown algorithm '" + std::string(s) + "'");
}

/// Visiting order for ordered node pairs. Lexicographic by default; a seeded
/// permutation otherwise.
struct PairOrder {
  bool randomized = false;
  std::uint64_t seed = 0;

  /// Accepts `lex` or `random(<seed>)`.
  static PairOrder parse(std::string_view s) {
    if (s == "lex") return {};
    if (s.starts_with("random(") && s.ends_with(")")) {
      const std::string digits(s.substr(7, s.size() - 8));
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw InputError("bad seed in order '" + std::string(s) + "'");
      return {true, std::stoull(digits)};
    }
    throw InputError("unknown pair order '" + std::string(s) + "' (expected lex or random(seed))");
  }

  std::string str() const { return randomized ? "random(" + std::to_string(seed) + ")" : "lex"; }

  /// All ordered pairs (a, b), a != b, over m nodes. `salt` decorrelates the
  /// permutations of successive stages.
  std::vector<Edge> pairs(std::size_t m, std::uint64_t salt = 0) const {
    std::vector<Edge> out;
    out.reserve(m * (m ? m - 1 : 0));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        if (a != b) out.emplace_back(NodeId(a), NodeId(b));
    if (randomized) {
      Rng rng(derive_seed(seed, salt));
      rng.shuffle(out);
    }
    return out;
  }
};

struct ScreeningOptions {
  PairOrder order;
  /// Repeat the parent step until nothing changes. Off by default: the
  /// standard procedure is a single pass.
  bool parent_fixpoint = false;
};

enum class Stage { trek, ancestry_cheap, ancestry, parent, exhaustive };

inline std::string_view to_string(Stage s) {
  switch (s) {
  case Stage::trek: return "trek";
  case Stage::ancestry_cheap: return "propagation";
  case Stage::ancestry: return "ancestry";
  case Stage::parent: return "parent";
  case Stage::exhaustive: return "exhaustive";
  }
  return "?";
}

/// The independence statement that justified removing an edge. For most
/// stages it is <tail, head | conditioning>; the oracle-assisted ancestry
/// step records the <alpha, gamma | {}> test that licensed removing
/// beta -> gamma.
struct Certificate {
  Stage stage = Stage::trek;
  Edge tested;
  NodeSet conditioning;

  friend bool operator==(const Certificate &, const Certificate &) = default;
};

enum class Action { keep, remove };

struct TraceEntry {
  Edge edge;
  Action action = Action::keep;
  Stage stage = Stage::trek;

  friend bool operator==(const TraceEntry &, const TraceEntry &) = default;
};

/// Certificates and trace accumulated across stages of a run.
struct ScreeningLog {
  std::map<Edge, Certificate> certificates;
  std::vector<TraceEntry> trace;

  void kept(Edge e, Stage s) { trace.push_back({e, Action::keep, s}); }
  void removed(Edge e, Stage s, std::optional<Certificate> cert) {
    trace.push_back({e, Action::remove, s});
    if (cert) certificates.emplace(e, std::move(*cert));
  }
};

struct LearnResult {
  AlgorithmId algorithm = AlgorithmId::cs;
  DirectedMixedGraph graph;
  std::size_t oracle_calls = 0;
  std::map<Edge, Certificate> certificates;
  std::vector<TraceEntry> trace;
};

namespace detail {

inline GraphBuilder labelled_builder(const IndependenceOracle &o) {
  GraphBuilder b;
  for (std::size_t i = 0; i < o.observed_size(); ++i) b.add_node(o.label(i));
  return b;
}

inline GraphBuilder complete_builder(const IndependenceOracle &o) {
  GraphBuilder b = labelled_builder(o);
  const std::size_t m = b.size();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t c = 0; c < m; ++c) b.add_directed(NodeId(a), NodeId(c));
  return b;
}

inline void require_matching(const IndependenceOracle &o, const DirectedMixedGraph &d,
                             const char *what) {
  if (d.size() != o.observed_size())
    throw InputError(std::string(what) + ": graph is not on the oracle's observed set");
  if (!d.is_dg()) throw InputError(std::string(what) + ": input must be a DG");
}

/// One pass of the parent step over `b`; returns the number of removals.
inline std::size_t parent_pass(IndependenceOracle &o, GraphBuilder &b, const PairOrder &order,
                               std::uint64_t salt, ScreeningLog *log) {
  std::size_t removed = 0;
  for (auto [a, c] : order.pairs(b.size(), salt)) {
    if (!b.has_directed(a, c)) continue;
    NodeSet given = b.parents(c);
    given.erase(a);
    if (o.independent(a.value(), c.value(), given)) {
      b.remove_directed(a, c);
      ++removed;
      if (log) log->removed({a, c}, Stage::parent, Certificate{Stage::parent, {a, c}, given});
    } else if (log) {
      log->kept({a, c}, Stage::parent);
    }
  }
  return removed;
}

} // namespace detail

/// Complete DG on m labelled nodes (all ordered pairs, loops included).
inline DirectedMixedGraph complete_dg(const IndependenceOracle &o) {
  return detail::complete_builder(o).build();
}

/// Trek step: from the complete DG, delete alpha -> beta whenever
/// <alpha, beta | {beta}> holds. Exactly m(m-1) oracle calls.
inline DirectedMixedGraph trek_step(IndependenceOracle &o, const ScreeningOptions &opt = {},
                                    ScreeningLog *log = nullptr) {
  GraphBuilder b = detail::complete_builder(o);
  const std::size_t m = b.size();
  for (auto [a, c] : opt.order.pairs(m, 1)) {
    NodeSet given(m);
    given.insert(c);
    if (o.independent(a.value(), c.value(), given)) {
      b.remove_directed(a, c);
      if (log) log->removed({a, c}, Stage::trek, Certificate{Stage::trek, {a, c}, given});
    } else if (log) {
      log->kept({a, c}, Stage::trek);
    }
  }
  return b.build();
}

/// Parent step: for each present alpha -> beta, test
/// <alpha, beta | pa(beta) \ {alpha}> against the graph as it currently
/// stands (earlier removals in the same pass are visible). Single pass.
inline DirectedMixedGraph parent_step(IndependenceOracle &o, const DirectedMixedGraph &d,
                                      const ScreeningOptions &opt = {},
                                      ScreeningLog *log = nullptr) {
  detail::require_matching(o, d, "parent_step");
  GraphBuilder b(d);
  std::uint64_t salt = 2;
  std::size_t removed = detail::parent_pass(o, b, opt.order, salt, log);
  while (opt.parent_fixpoint && removed > 0) removed = detail::parent_pass(o, b, opt.order, ++salt, log);
  return b.build();
}

/// Test-free ancestry propagation. Schedules beta -> gamma whenever some
/// alpha has alpha -> beta, not beta -> alpha, and not alpha -> gamma; all
/// scheduled edges are removed together at the end.
inline DirectedMixedGraph ancestry_propagation_cheap(const DirectedMixedGraph &d,
                                                     ScreeningLog *log = nullptr) {
  if (!d.is_dg()) throw InputError("ancestry_propagation_cheap: input must be a DG");
  const std::size_t m = d.size();
  std::set<Edge> scheduled;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t bb = 0; bb < m; ++bb) {
      if (bb == a) continue;
      const NodeId alpha(a), beta(bb);
      if (!d.has_directed(alpha, beta) || d.has_directed(beta, alpha)) continue;
      for (std::size_t c = 0; c < m; ++c) {
        if (c == a || c == bb) continue;
        const NodeId gamma(c);
        if (d.has_directed(beta, gamma) && !d.has_directed(alpha, gamma))
          scheduled.emplace(beta, gamma);
      }
    }
  GraphBuilder b(d);
  for (const Edge &e : scheduled) {
    b.remove_directed(e.first, e.second);
    if (log) log->removed(e, Stage::ancestry_cheap, std::nullopt);
  }
  return b.build();
}

/// Oracle-assisted ancestry propagation. For distinct alpha, beta, gamma with
/// alpha and beta adjacent (either direction), beta -> gamma, and no
/// alpha -> gamma, test <alpha, gamma | {}>; on independence schedule
/// beta -> gamma. One call per qualifying triple; removals batched.
inline DirectedMixedGraph ancestry_propagation(IndependenceOracle &o, const DirectedMixedGraph &d,
                                               ScreeningLog *log = nullptr) {
  detail::require_matching(o, d, "ancestry_propagation");
  const std::size_t m = d.size();
  std::map<Edge, Certificate> scheduled;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t bb = 0; bb < m; ++bb) {
      if (bb == a) continue;
      const NodeId alpha(a), beta(bb);
      if (!d.has_directed(alpha, beta) && !d.has_directed(beta, alpha)) continue;
      for (std::size_t c = 0; c < m; ++c) {
        if (c == a || c == bb) continue;
        const NodeId gamma(c);
        if (!d.has_directed(beta, gamma) || d.has_directed(alpha, gamma)) continue;
        NodeSet none(m);
        if (o.independent(a, c, none))
          scheduled.emplace(Edge{beta, gamma}, Certificate{Stage::ancestry, {alpha, gamma}, none});
      }
    }
  GraphBuilder b(d);
  for (auto &[e, cert] : scheduled) {
    b.remove_directed(e.first, e.second);
    if (log) log->removed(e, Stage::ancestry, cert);
  }
  return b.build();
}

/// Exhaustive simple screening: for each ordered pair, search conditioning
/// sets C within O \ {alpha} by increasing size (lexicographic within a size)
/// and remove the edge at the first separating set.
inline LearnResult ca_baseline(IndependenceOracle &o, const ScreeningOptions &opt = {}) {
  ScreeningLog log;
  const std::size_t start_calls = o.calls();
  GraphBuilder b = detail::complete_builder(o);
  const std::size_t m = b.size();
  for (auto [a, c] : opt.order.pairs(m, 1)) {
    std::vector<std::size_t> pool;
    for (std::size_t v = 0; v < m; ++v)
      if (v != a.value()) pool.push_back(v);
    bool removed = false;
    for (std::size_t k = 0; k <= pool.size() && !removed; ++k) {
      // Lexicographic k-combinations of pool.
      std::vector<std::size_t> idx(k);
      for (std::size_t i = 0; i < k; ++i) idx[i] = i;
      while (true) {
        NodeSet given(m);
        for (auto i : idx) given.insert(pool[i]);
        if (o.independent(a.value(), c.value(), given)) {
          b.remove_directed(a, c);
          log.removed({a, c}, Stage::exhaustive, Certificate{Stage::exhaustive, {a, c}, given});
          removed = true;
          break;
        }
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == pool.size() - k + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    if (!removed) log.kept({a, c}, Stage::exhaustive);
  }
  return {AlgorithmId::ca, b.build(), o.calls() - start_calls, std::move(log.certificates),
          std::move(log.trace)};
}

/// CS = trek + parent; CSAPC = trek + cheap propagation + parent;
/// CSAP = trek + oracle-assisted propagation + parent.
inline LearnResult run(AlgorithmId algorithm, IndependenceOracle &o,
                       const ScreeningOptions &opt = {}) {
  if (algorithm == AlgorithmId::ca) return ca_baseline(o, opt);
  ScreeningLog log;
  const std::size_t start_calls = o.calls();
  DirectedMixedGraph g = trek_step(o, opt, &log);
  switch (algorithm) {
  case AlgorithmId::trek_only:
    break;
  case AlgorithmId::cs:
    g = parent_step(o, g, opt, &log);
    break;
  case AlgorithmId::csapc:
    g = ancestry_propagation_cheap(g, &log);
    g = parent_step(o, g, opt, &log);
    break;
  case AlgorithmId::csap:
    g = ancestry_propagation(o, g, &log);
    g = parent_step(o, g, opt, &log);
    break;
  default:
    throw InputError("unsupported algorithm");
  }
  return {algorithm, std::move(g), o.calls() - start_calls, std::move(log.certificates),
          std::move(log.trace)};
}

} // namespace cscreen

#endif
