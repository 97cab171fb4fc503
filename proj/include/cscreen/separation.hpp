#ifndef CSCREEN_SEPARATION_HPP
#define CSCREEN_SEPARATION_HPP

#include "cscreen/graph.hpp"
#include "cscreen/graph_algorithms.hpp"
#include "cscreen/walk.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cscreen {

/// The statement "B is mu-separated from A given C". C may overlap A and B.
struct SeparationQuery {
  NodeSet a, b, c;

  static SeparationQuery singleton(std::size_t universe, std::size_t from, std::size_t to,
                                   NodeSet given) {
    SeparationQuery q{NodeSet(universe), NodeSet(universe), std::move(given)};
    q.a.insert(from);
    q.b.insert(to);
    return q;
  }

  friend bool operator==(const SeparationQuery &, const SeparationQuery &) = default;
};

/// A search refused to run because the instance exceeds its configured size.
class CapacityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void validate_query(const DirectedMixedGraph &g, const SeparationQuery &q) {
  require_universe(g, q.a, "separation query A");
  require_universe(g, q.b, "separation query B");
  require_universe(g, q.c, "separation query C");
  if (q.a.empty()) throw InputError("separation query: A is empty");
  if (q.b.empty()) throw InputError("separation query: B is empty");
}

} // namespace detail

/// Returns a mu-connecting walk from A to B given C, if one exists.
///
/// Breadth-first search over (node, arrival mark) states. Leaving v after an
/// arrival with a head, through an edge with a head at v, makes v a collider
/// and needs v in an(C); every other continuation needs v outside C. Sources
/// in A \ C are unconstrained. The search stops at the first head-arrival in
/// B, since any prefix ending that way is itself connecting.
inline std::optional<Walk> find_mu_connecting_walk(const DirectedMixedGraph &g,
                                                   const SeparationQuery &q) {
  detail::validate_query(g, q);
  const std::size_t n = g.size();
  const NodeSet an_c = ancestors(g, q.c);

  // States 0..2n-1 are 2*node + (arrived with head). States 2n+a are the
  // source occurrences of a, which carry no arrival mark.
  struct Pred {
    std::size_t state;
    Mark leave;
  };
  constexpr std::size_t unseen = static_cast<std::size_t>(-1);
  std::vector<Pred> pred(3 * n, Pred{unseen, Mark::tail});
  std::deque<std::size_t> queue;

  auto node_of = [n](std::size_t state) { return state >= 2 * n ? state - 2 * n : state / 2; };

  auto rebuild = [&](std::size_t last) {
    std::vector<WalkStep> rev;
    std::size_t s = last;
    while (s < 2 * n) {
      rev.push_back({pred[s].leave, (s & 1u) ? Mark::head : Mark::tail, NodeId(s / 2)});
      s = pred[s].state;
    }
    Walk w{NodeId(node_of(s)), {rev.rbegin(), rev.rend()}};
    return w;
  };

  std::optional<Walk> found;
  auto expand = [&](std::size_t state) {
    const std::size_t v = node_of(state);
    const bool is_source = state >= 2 * n;
    const bool arrived_head = !is_source && (state & 1u);
    const bool in_c = q.c.contains(v);
    const bool may_leave_tail = is_source || !in_c;
    const bool may_leave_head = is_source || (arrived_head ? an_c.contains(v) : !in_c);
    auto step = [&](NodeId w, Mark leave, Mark arrive) {
      const std::size_t next = 2 * w.value() + (arrive == Mark::head ? 1 : 0);
      if (pred[next].state != unseen) return false;
      pred[next] = {state, leave};
      if (arrive == Mark::head && q.b.contains(w)) {
        found = rebuild(next);
        return true;
      }
      queue.push_back(next);
      return false;
    };
    if (may_leave_tail)
      for (NodeId w : g.child_list(NodeId(v)))
        if (step(w, Mark::tail, Mark::head)) return true;
    if (may_leave_head) {
      for (NodeId w : g.parent_list(NodeId(v)))
        if (step(w, Mark::head, Mark::tail)) return true;
      for (NodeId w : g.sibling_list(NodeId(v)))
        if (step(w, Mark::head, Mark::head)) return true;
    }
    return false;
  };

  bool done = false;
  (q.a - q.c).for_each([&](std::size_t a) {
    if (done) return;
    pred[2 * n + a] = {2 * n + a, Mark::tail};
    done = expand(2 * n + a);
  });
  while (!done && !queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    done = expand(s);
  }
  return found;
}

/// B is mu-separated from A given C in g.
inline bool mu_separated(const DirectedMixedGraph &g, const SeparationQuery &q) {
  return !find_mu_connecting_walk(g, q).has_value();
}

} // namespace cscreen

#endif
