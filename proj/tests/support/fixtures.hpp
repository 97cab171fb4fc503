#ifndef CSCREEN_TESTS_FIXTURES_HPP
#define CSCREEN_TESTS_FIXTURES_HPP

#include "cscreen/graph.hpp"
#include "cscreen/random.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace fixtures {

using cscreen::DirectedMixedGraph;
using cscreen::GraphBuilder;
using cscreen::NodeId;
using cscreen::NodeSet;
using cscreen::ObservedSet;

/// Builds a graph from labels and edge lists given by label.
inline DirectedMixedGraph make_graph(
    std::initializer_list<const char *> nodes,
    std::initializer_list<std::pair<const char *, const char *>> directed,
    std::initializer_list<std::pair<const char *, const char *>> bidirected = {}) {
  GraphBuilder b;
  for (auto n : nodes) b.add_node(n);
  for (auto [t, h] : directed) b.add_directed(*b.find(t), *b.find(h));
  for (auto [x, y] : bidirected) b.add_bidirected(*b.find(x), *b.find(y));
  return b.build();
}

/// Causal graph of the running example: alpha, delta, epsilon observed;
/// beta, gamma, phi latent; phi confounds beta, delta and epsilon.
inline DirectedMixedGraph running_example() {
  return make_graph({"alpha", "beta", "gamma", "delta", "epsilon", "phi"},
                    {{"alpha", "beta"},
                     {"beta", "gamma"},
                     {"gamma", "beta"},
                     {"beta", "delta"},
                     {"delta", "gamma"},
                     {"delta", "epsilon"},
                     {"phi", "beta"},
                     {"phi", "delta"},
                     {"phi", "epsilon"}});
}

inline ObservedSet running_example_observed(const DirectedMixedGraph &g) {
  const std::vector<std::string> labels{"alpha", "delta", "epsilon"};
  return ObservedSet::from_labels(g, labels);
}

inline DirectedMixedGraph chain3() {
  return make_graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
}

inline NodeSet set_of(const DirectedMixedGraph &g, std::initializer_list<const char *> labels) {
  NodeSet s(g.size());
  for (auto l : labels) s.insert(g.node(l));
  return s;
}

/// Non-loop directed edges rendered as "t->h" strings, sorted.
inline std::vector<std::string> edge_strings(const DirectedMixedGraph &g) {
  std::vector<std::string> out;
  for (auto [t, h] : g.directed_edges()) out.push_back(g.label(t) + "->" + g.label(h));
  return out;
}

inline std::vector<std::string> bi_strings(const DirectedMixedGraph &g) {
  std::vector<std::string> out;
  for (auto [a, b] : g.bidirected_edges()) out.push_back(g.label(a) + "<->" + g.label(b));
  return out;
}

/// Uniformly random subset of size in [min_size, n].
inline ObservedSet random_observed(const DirectedMixedGraph &g, cscreen::Rng &rng,
                                   std::size_t min_size = 1) {
  const std::size_t n = g.size();
  const std::size_t k = min_size + static_cast<std::size_t>(rng.below(n - min_size + 1));
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  rng.shuffle(idx);
  std::vector<NodeId> chosen;
  for (std::size_t i = 0; i < k; ++i) chosen.emplace_back(idx[i]);
  return ObservedSet(g, chosen);
}

/// All subsets of `pool` (bitmask enumeration), as NodeSets of `universe`.
inline std::vector<NodeSet> all_subsets(std::size_t universe, const std::vector<std::size_t> &pool) {
  std::vector<NodeSet> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << pool.size()); ++mask) {
    NodeSet s(universe);
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (mask & (std::size_t{1} << i)) s.insert(pool[i]);
    out.push_back(std::move(s));
  }
  return out;
}

} // namespace fixtures

#endif
