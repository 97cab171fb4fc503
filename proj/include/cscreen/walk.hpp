#ifndef CSCREEN_WALK_HPP
#define CSCREEN_WALK_HPP

#include "cscreen/graph.hpp"

#include <string>
#include <vector>

namespace cscreen {

enum class Mark { tail, head };

/// One edge instance of a walk, oriented by the marks it carries at the node
/// it leaves and the node it enters. (tail, head) is a directed edge traversed
/// forwards, (head, tail) backwards, (head, head) a bidirected edge. A loop
/// may be traversed either way.
struct WalkStep {
  Mark leave = Mark::tail;
  Mark arrive = Mark::head;
  NodeId to;

  friend bool operator==(const WalkStep &, const WalkStep &) = default;
};

struct Walk {
  NodeId start;
  std::vector<WalkStep> steps;

  bool nontrivial() const { return !steps.empty(); }
  NodeId end() const { return steps.empty() ? start : steps.back().to; }
  NodeId node_at(std::size_t i) const { return i == 0 ? start : steps.at(i - 1).to; }

  friend bool operator==(const Walk &, const Walk &) = default;
};

/// Every step corresponds to an edge of g.
inline bool is_walk_in(const DirectedMixedGraph &g, const Walk &w) {
  NodeId at = w.start;
  if (!g.contains(at)) return false;
  for (const auto &s : w.steps) {
    if (!g.contains(s.to)) return false;
    bool ok = false;
    if (s.leave == Mark::tail && s.arrive == Mark::head) ok = g.has_directed(at, s.to);
    else if (s.leave == Mark::head && s.arrive == Mark::tail) ok = g.has_directed(s.to, at);
    else if (s.leave == Mark::head && s.arrive == Mark::head) ok = g.has_bidirected(at, s.to);
    if (!ok) return false;
    at = s.to;
  }
  return true;
}

/// Interior node i (1 <= i < steps) is a collider iff both adjacent edges
/// have heads at it.
inline bool is_collider(const Walk &w, std::size_t i) {
  return w.steps.at(i - 1).arrive == Mark::head && w.steps.at(i).leave == Mark::head;
}

/// Definition check: nontrivial, source outside C, final head at the end node,
/// colliders in an(C), noncolliders outside C. `ancestors_of_c` must be an(C).
inline bool is_mu_connecting(const Walk &w, const NodeSet &c, const NodeSet &ancestors_of_c) {
  if (!w.nontrivial()) return false;
  if (c.contains(w.start)) return false;
  if (w.steps.back().arrive != Mark::head) return false;
  for (std::size_t i = 1; i < w.steps.size(); ++i) {
    const NodeId v = w.node_at(i);
    if (is_collider(w, i)) {
      if (!ancestors_of_c.contains(v)) return false;
    } else if (c.contains(v)) {
      return false;
    }
  }
  return true;
}

/// Human-readable form, e.g. `a -> b <-> c <- d`.
inline std::string format_walk(const DirectedMixedGraph &g, const Walk &w) {
  std::string out = g.label(w.start);
  for (const auto &s : w.steps) {
    if (s.leave == Mark::tail) out += " -> ";
    else if (s.arrive == Mark::tail) out += " <- ";
    else out += " <-> ";
    out += g.label(s.to);
  }
  return out;
}

} // namespace cscreen

#endif
