#ifndef CSCREEN_GRAPH_ALGORITHMS_HPP
#define CSCREEN_GRAPH_ALGORITHMS_HPP

#include "cscreen/graph.hpp"

#include <deque>
#include <string>
#include <vector>

namespace cscreen {

namespace detail {

inline void require_universe(const DirectedMixedGraph &g, const NodeSet &s, const char *what) {
  if (s.universe() != g.size())
    throw InputError(std::string(what) + ": node set does not belong to this graph");
}

inline void require_observed(const DirectedMixedGraph &g, const ObservedSet &o, const char *what) {
  if (o.universe() != g.size())
    throw InputError(std::string(what) + ": observed set is not a subset of the graph's nodes");
}

/// Builder holding only the nodes of O (labels preserved, index order kept).
inline GraphBuilder builder_on(const DirectedMixedGraph &g, const ObservedSet &o) {
  GraphBuilder b;
  for (NodeId v : o.nodes()) b.add_node(g.label(v));
  return b;
}

} // namespace detail

/// an(C): every node with a directed path into C. Reflexive through loops.
inline NodeSet ancestors(const DirectedMixedGraph &g, const NodeSet &targets) {
  detail::require_universe(g, targets, "ancestors");
  NodeSet seen = targets;
  std::vector<std::size_t> stack = targets.members();
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (NodeId p : g.parent_list(NodeId(v))) {
      if (!seen.contains(p)) {
        seen.insert(p);
        stack.push_back(p.value());
      }
    }
  }
  return seen;
}

/// Ancestors of `target` in the graph with `removed` deleted (target != removed).
inline NodeSet ancestors_avoiding(const DirectedMixedGraph &g, NodeId target, NodeId removed) {
  NodeSet seen(g.size());
  if (target == removed) return seen;
  seen.insert(target);
  std::vector<NodeId> stack{target};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (NodeId p : g.parent_list(v)) {
      if (p != removed && !seen.contains(p)) {
        seen.insert(p);
        stack.push_back(p);
      }
    }
  }
  return seen;
}

/// Parent graph of a DG on O: alpha -> beta iff some directed path from alpha
/// to beta has all of its intermediate nodes outside O.
inline DirectedMixedGraph parent_graph(const DirectedMixedGraph &d, const ObservedSet &o) {
  if (!d.is_dg()) throw InputError("parent_graph: input must be a DG (no bidirected edges)");
  detail::require_observed(d, o, "parent_graph");
  GraphBuilder out = detail::builder_on(d, o);
  for (std::size_t i = 0; i < o.size(); ++i) {
    NodeSet seen(d.size());
    std::vector<NodeId> stack;
    auto visit = [&](NodeId from) {
      for (NodeId c : d.child_list(from)) {
        if (seen.contains(c)) continue;
        seen.insert(c);
        if (auto j = o.local_index(c))
          out.add_directed(NodeId(i), NodeId(*j));
        else
          stack.push_back(c);
      }
    };
    visit(o[i]);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      visit(v);
    }
  }
  return out.build();
}

/// Latent projection m(G, O), computed by marginalising latent nodes one at a
/// time in increasing index order.
///
/// Removing latent u adds p -> c for every p -> u -> c, and s <-> c for every
/// pair of distinct nodes joined through u as a noncollider (c1 <- u -> c2 or
/// s <-> u -> c). Colliders at u (-> u <-, <-> u <->, -> u <->) contribute
/// nothing.
inline DirectedMixedGraph latent_projection(const DirectedMixedGraph &g, const ObservedSet &o) {
  detail::require_observed(g, o, "latent_projection");
  const std::size_t n = g.size();
  std::vector<NodeSet> ch(n), pa(n), sib(n);
  for (std::size_t v = 0; v < n; ++v) {
    ch[v] = g.children(NodeId(v));
    pa[v] = g.parents(NodeId(v));
    sib[v] = g.siblings(NodeId(v));
  }
  NodeSet alive = NodeSet::full(n);
  for (std::size_t u = 0; u < n; ++u) {
    if (o.contains(NodeId(u))) continue;
    NodeSet p = pa[u];
    NodeSet c = ch[u];
    p.erase(u);
    c.erase(u);
    const NodeSet s = sib[u];
    p.for_each([&](std::size_t t) {
      ch[t] |= c;
      c.for_each([&](std::size_t h) { pa[h].insert(t); });
    });
    c.for_each([&](std::size_t h) {
      NodeSet mates = c | s;
      mates.erase(h);
      sib[h] |= mates;
      mates.for_each([&](std::size_t m) { sib[m].insert(h); });
    });
    alive.erase(u);
    for (std::size_t v = 0; v < n; ++v) {
      ch[v].erase(u);
      pa[v].erase(u);
      sib[v].erase(u);
    }
    ch[u] = pa[u] = sib[u] = NodeSet(n);
  }

  GraphBuilder out = detail::builder_on(g, o);
  for (std::size_t i = 0; i < o.size(); ++i) {
    const std::size_t a = o[i].value();
    for (std::size_t j = 0; j < o.size(); ++j) {
      const std::size_t b = o[j].value();
      if (ch[a].contains(b)) out.add_directed(NodeId(i), NodeId(j));
      if (j > i && sib[a].contains(b)) out.add_bidirected(NodeId(i), NodeId(j));
    }
  }
  return out.build();
}

/// D(G): drops all bidirected edges.
inline DirectedMixedGraph directed_part(const DirectedMixedGraph &g) {
  GraphBuilder b(g);
  b.clear_bidirected();
  return b.build();
}

struct CanonicalDg {
  DirectedMixedGraph graph;
  /// The original nodes, which keep their indices in `graph`.
  ObservedSet observed;
};

/// Replaces each bidirected a <-> b by a fresh latent u with u -> a, u -> b.
/// Latents are appended after the original nodes, in bidirected-edge order.
inline CanonicalDg canonical_dg(const DirectedMixedGraph &g) {
  GraphBuilder b(g);
  b.clear_bidirected();
  for (auto [x, y] : g.bidirected_edges()) {
    std::string base = "latent(" + g.label(x) + "," + g.label(y) + ")";
    std::string label = base;
    for (int k = 1; b.find(label); ++k) label = base + "#" + std::to_string(k);
    const NodeId u = b.add_node(label);
    b.add_directed(u, x).add_directed(u, y);
  }
  CanonicalDg out{b.build(), {}};
  std::vector<NodeId> original;
  for (std::size_t i = 0; i < g.size(); ++i) original.emplace_back(i);
  out.observed = ObservedSet(out.graph, std::move(original));
  return out;
}

/// True iff some trek (colliderless path) between alpha and beta ends with a
/// head at beta, i.e. alpha is in dt(beta). Loops never take part in treks.
///
/// Such a path is either a directed path alpha => beta, or
/// alpha <= top => beta, or alpha <= x <-> y => beta. With L the ancestors of
/// alpha avoiding beta and R the ancestors of beta avoiding alpha, the last
/// two shapes exist iff L and R meet, or some x in L is a sibling of some y in
/// R; where the two directed legs cross, the crossing node closest to beta
/// serves as a new top.
inline bool directed_trek_exists(const DirectedMixedGraph &g, NodeId alpha, NodeId beta) {
  if (!g.contains(alpha) || !g.contains(beta))
    throw InputError("directed_trek_exists: unknown node");
  if (alpha == beta) return false;
  NodeSet target(g.size());
  target.insert(beta);
  if (ancestors(g, target).contains(alpha)) return true;
  const NodeSet left = ancestors_avoiding(g, alpha, beta);
  const NodeSet right = ancestors_avoiding(g, beta, alpha);
  if (left.intersects(right)) return true;
  bool found = false;
  left.for_each([&](std::size_t x) {
    if (!found && g.siblings(NodeId(x)).intersects(right)) found = true;
  });
  return found;
}

/// dt(beta) as a node set.
inline NodeSet directed_trek_sources(const DirectedMixedGraph &g, NodeId beta) {
  NodeSet out(g.size());
  for (std::size_t a = 0; a < g.size(); ++a)
    if (directed_trek_exists(g, NodeId(a), beta)) out.insert(a);
  return out;
}

} // namespace cscreen

#endif
