#ifndef CSCREEN_BRUTE_FORCE_HPP
#define CSCREEN_BRUTE_FORCE_HPP

// Exhaustive reference implementations for small graphs. They share no search
// code with the production routines in separation.hpp / graph_algorithms.hpp
// and exist to cross-check them.

#include "cscreen/graph.hpp"
#include "cscreen/separation.hpp"
#include "cscreen/walk.hpp"

#include <optional>
#include <vector>

namespace cscreen::brute {

inline constexpr std::size_t default_node_cap = 6;

/// an(C) by explicit directed-path search from every node.
inline NodeSet ancestors(const DirectedMixedGraph &g, const NodeSet &c) {
  const std::size_t n = g.size();
  NodeSet out(n);
  for (std::size_t start = 0; start < n; ++start) {
    std::vector<bool> on_path(n, false);
    bool hit = false;
    auto dfs = [&](auto &self, std::size_t v) -> void {
      if (hit) return;
      if (c.contains(v)) {
        hit = true;
        return;
      }
      on_path[v] = true;
      for (std::size_t w = 0; w < n; ++w)
        if (!on_path[w] && g.has_directed(NodeId(v), NodeId(w))) self(self, w);
      on_path[v] = false;
    };
    dfs(dfs, start);
    if (hit) out.insert(start);
  }
  return out;
}

/// Enumerates walks from each source in A \ C up to 2|V|+1 edges and checks
/// the mu-connecting definition on each completed walk.
///
/// A walk that repeats a (node, arrival mark) occurrence can be spliced at the
/// repeat without changing any collider status, so only walks with distinct
/// occurrences are generated; prefixes are abandoned as soon as an interior
/// node violates its condition.
inline std::optional<Walk> find_connecting_walk(const DirectedMixedGraph &g,
                                                const SeparationQuery &q,
                                                std::size_t node_cap = default_node_cap) {
  const std::size_t n = g.size();
  if (n > node_cap)
    throw CapacityError("brute-force mu-separation refused: graph has " + std::to_string(n) +
                        " nodes, cap is " + std::to_string(node_cap));
  if (q.a.universe() != n || q.b.universe() != n || q.c.universe() != n)
    throw InputError("brute-force mu-separation: query does not match graph");
  if (q.a.empty() || q.b.empty()) throw InputError("brute-force mu-separation: empty A or B");

  const NodeSet an_c = brute::ancestors(g, q.c);
  const std::size_t max_len = 2 * n + 1;

  // Candidate edge instances leaving `v`.
  auto options = [&](NodeId v) {
    std::vector<WalkStep> out;
    for (std::size_t w = 0; w < n; ++w) {
      const NodeId u(w);
      if (g.has_directed(v, u)) out.push_back({Mark::tail, Mark::head, u});
      if (g.has_directed(u, v)) out.push_back({Mark::head, Mark::tail, u});
      if (g.has_bidirected(v, u)) out.push_back({Mark::head, Mark::head, u});
    }
    return out;
  };

  std::optional<Walk> result;
  Walk walk;
  std::vector<bool> used(2 * n, false);

  auto extend = [&](auto &self) -> void {
    if (result || walk.steps.size() >= max_len) return;
    const NodeId at = walk.end();
    for (const WalkStep &s : options(at)) {
      if (!walk.steps.empty()) {
        const bool collider = walk.steps.back().arrive == Mark::head && s.leave == Mark::head;
        if (collider ? !an_c.contains(at) : q.c.contains(at)) continue;
      }
      const std::size_t occ = 2 * s.to.value() + (s.arrive == Mark::head ? 1 : 0);
      if (used[occ]) continue;
      walk.steps.push_back(s);
      if (s.arrive == Mark::head && q.b.contains(s.to) && is_mu_connecting(walk, q.c, an_c)) {
        result = walk;
        return;
      }
      used[occ] = true;
      self(self);
      used[occ] = false;
      walk.steps.pop_back();
      if (result) return;
    }
  };

  for (std::size_t a = 0; a < n && !result; ++a) {
    if (!q.a.contains(a) || q.c.contains(a)) continue;
    walk = Walk{NodeId(a), {}};
    extend(extend);
  }
  return result;
}

inline bool mu_separated(const DirectedMixedGraph &g, const SeparationQuery &q,
                         std::size_t node_cap = default_node_cap) {
  return !find_connecting_walk(g, q, node_cap).has_value();
}

/// Enumerates every path (no repeated node) from alpha to beta and tests the
/// trek conditions directly.
inline bool directed_trek_exists(const DirectedMixedGraph &g, NodeId alpha, NodeId beta,
                                 std::size_t node_cap = 8) {
  const std::size_t n = g.size();
  if (n > node_cap) throw CapacityError("brute-force trek search refused: graph too large");
  if (alpha == beta) return false;
  std::vector<bool> on_path(n, false);
  Walk walk{alpha, {}};
  bool found = false;
  auto dfs = [&](auto &self) -> void {
    if (found) return;
    const NodeId at = walk.end();
    if (at == beta) {
      bool colliderless = true;
      for (std::size_t i = 1; i < walk.steps.size(); ++i)
        if (is_collider(walk, i)) colliderless = false;
      if (colliderless && walk.steps.back().arrive == Mark::head) found = true;
      return;
    }
    on_path[at.value()] = true;
    for (std::size_t w = 0; w < n && !found; ++w) {
      if (on_path[w]) continue;
      const NodeId u(w);
      const WalkStep cand[3] = {{Mark::tail, Mark::head, u}, {Mark::head, Mark::tail, u},
                                {Mark::head, Mark::head, u}};
      const bool present[3] = {g.has_directed(at, u), g.has_directed(u, at),
                               g.has_bidirected(at, u)};
      for (int k = 0; k < 3 && !found; ++k) {
        if (!present[k]) continue;
        walk.steps.push_back(cand[k]);
        self(self);
        walk.steps.pop_back();
      }
    }
    on_path[at.value()] = false;
  };
  dfs(dfs);
  return found;
}

} // namespace cscreen::brute

#endif
