#ifndef CSCREEN_GRAPH_HPP
#define CSCREEN_GRAPH_HPP

#include "cscreen/node_set.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cscreen {

/// Malformed input: unknown nodes, bad sets, unparseable files.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

using Edge = std::pair<NodeId, NodeId>;

class GraphBuilder;

/// Directed mixed graph with a mandatory self-loop on every node.
///
/// A DG is the special case with no bidirected edges. Values are frozen:
/// construct through GraphBuilder, then share freely across threads.
class DirectedMixedGraph {
public:
  DirectedMixedGraph() = default;

  std::size_t size() const { return labels_.size(); }
  const std::string &label(NodeId v) const { return labels_.at(v.value()); }
  const std::vector<std::string> &labels() const { return labels_; }

  std::optional<NodeId> find(std::string_view label) const {
    auto it = by_label_.find(std::string(label));
    if (it == by_label_.end()) return std::nullopt;
    return NodeId(it->second);
  }
  /// Label lookup that throws InputError for unknown labels.
  NodeId node(std::string_view label) const {
    if (auto v = find(label)) return *v;
    throw InputError("unknown node label '" + std::string(label) + "'");
  }

  bool contains(NodeId v) const { return v.value() < size(); }

  bool has_directed(NodeId tail, NodeId head) const {
    return contains(tail) && children_[tail.value()].contains(head);
  }
  bool has_bidirected(NodeId a, NodeId b) const {
    return contains(a) && siblings_[a.value()].contains(b);
  }

  /// Rows include the node itself (loops).
  const NodeSet &children(NodeId v) const { return children_.at(v.value()); }
  const NodeSet &parents(NodeId v) const { return parents_.at(v.value()); }
  const NodeSet &siblings(NodeId v) const { return siblings_.at(v.value()); }

  std::span<const NodeId> child_list(NodeId v) const { return child_list_.at(v.value()); }
  std::span<const NodeId> parent_list(NodeId v) const { return parent_list_.at(v.value()); }
  std::span<const NodeId> sibling_list(NodeId v) const { return sibling_list_.at(v.value()); }

  bool is_dg() const { return bidirected_count_ == 0; }

  /// Edge counts exclude loops.
  std::size_t directed_edge_count() const { return directed_count_; }
  std::size_t bidirected_edge_count() const { return bidirected_count_; }

  /// Non-loop directed edges in lexicographic (tail, head) order.
  std::vector<Edge> directed_edges() const {
    std::vector<Edge> out;
    out.reserve(directed_count_);
    for (std::size_t t = 0; t < size(); ++t)
      for (NodeId h : child_list_[t])
        if (h.value() != t) out.emplace_back(NodeId(t), h);
    return out;
  }
  /// Bidirected edges as (a, b) with a < b, lexicographic.
  std::vector<Edge> bidirected_edges() const {
    std::vector<Edge> out;
    out.reserve(bidirected_count_);
    for (std::size_t a = 0; a < size(); ++a)
      for (NodeId b : sibling_list_[a])
        if (b.value() > a) out.emplace_back(NodeId(a), b);
    return out;
  }

  NodeSet empty_set() const { return NodeSet(size()); }

  /// Structural equality, labels included.
  friend bool operator==(const DirectedMixedGraph &a, const DirectedMixedGraph &b) {
    return a.labels_ == b.labels_ && a.children_ == b.children_ && a.siblings_ == b.siblings_;
  }

private:
  friend class GraphBuilder;

  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> by_label_;
  std::vector<NodeSet> children_, parents_, siblings_;
  std::vector<std::vector<NodeId>> child_list_, parent_list_, sibling_list_;
  std::size_t directed_count_ = 0;
  std::size_t bidirected_count_ = 0;
};

/// Single-owner mutable graph. Loops are inserted when a node is added and
/// cannot be removed.
class GraphBuilder {
public:
  GraphBuilder() = default;

  /// n nodes labelled "0" .. "n-1".
  explicit GraphBuilder(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) add_node();
  }

  explicit GraphBuilder(const DirectedMixedGraph &g)
      : labels_(g.labels_), by_label_(g.by_label_), children_(g.children_),
        siblings_(g.siblings_) {}

  std::size_t size() const { return labels_.size(); }

  /// Adds a node; an empty label defaults to the decimal index.
  NodeId add_node(std::string label = {}) {
    const std::size_t idx = labels_.size();
    if (label.empty()) label = std::to_string(idx);
    if (by_label_.count(label)) throw InputError("duplicate node label '" + label + "'");
    by_label_.emplace(label, idx);
    labels_.push_back(std::move(label));
    const std::size_t n = idx + 1;
    for (auto &row : children_) row.resize(n);
    for (auto &row : siblings_) row.resize(n);
    children_.emplace_back(n);
    siblings_.emplace_back(n);
    children_[idx].insert(idx);
    return NodeId(idx);
  }

  std::optional<NodeId> find(std::string_view label) const {
    auto it = by_label_.find(std::string(label));
    if (it == by_label_.end()) return std::nullopt;
    return NodeId(it->second);
  }
  const std::string &label(NodeId v) const { return labels_.at(v.value()); }

  GraphBuilder &add_directed(NodeId tail, NodeId head) {
    check(tail);
    check(head);
    children_[tail.value()].insert(head);
    return *this;
  }
  GraphBuilder &add_bidirected(NodeId a, NodeId b) {
    check(a);
    check(b);
    if (a == b) throw InputError("bidirected self-edge on '" + labels_[a.value()] + "'");
    siblings_[a.value()].insert(b);
    siblings_[b.value()].insert(a);
    return *this;
  }
  GraphBuilder &remove_directed(NodeId tail, NodeId head) {
    check(tail);
    check(head);
    if (tail == head) throw std::logic_error("self-loops cannot be removed");
    children_[tail.value()].erase(head);
    return *this;
  }
  GraphBuilder &remove_bidirected(NodeId a, NodeId b) {
    check(a);
    check(b);
    siblings_[a.value()].erase(b);
    siblings_[b.value()].erase(a);
    return *this;
  }
  /// Drops every bidirected edge.
  GraphBuilder &clear_bidirected() {
    for (auto &row : siblings_) row = NodeSet(size());
    return *this;
  }

  bool has_directed(NodeId tail, NodeId head) const {
    return tail.value() < size() && children_[tail.value()].contains(head);
  }
  bool has_bidirected(NodeId a, NodeId b) const {
    return a.value() < size() && siblings_[a.value()].contains(b);
  }
  const NodeSet &children(NodeId v) const { return children_.at(v.value()); }

  /// Parent set of v (includes v through its loop). O(n).
  NodeSet parents(NodeId v) const {
    check(v);
    NodeSet out(size());
    for (std::size_t t = 0; t < size(); ++t)
      if (children_[t].contains(v)) out.insert(t);
    return out;
  }

  DirectedMixedGraph build() const {
    DirectedMixedGraph g;
    const std::size_t n = size();
    g.labels_ = labels_;
    g.by_label_ = by_label_;
    g.children_ = children_;
    g.siblings_ = siblings_;
    g.parents_.assign(n, NodeSet(n));
    g.child_list_.assign(n, {});
    g.parent_list_.assign(n, {});
    g.sibling_list_.assign(n, {});
    for (std::size_t t = 0; t < n; ++t) {
      children_[t].for_each([&](std::size_t h) {
        g.parents_[h].insert(t);
        g.child_list_[t].emplace_back(h);
        g.parent_list_[h].emplace_back(t);
        if (h != t) ++g.directed_count_;
      });
      siblings_[t].for_each([&](std::size_t b) {
        g.sibling_list_[t].emplace_back(b);
        if (b > t) ++g.bidirected_count_;
      });
    }
    return g;
  }

private:
  void check(NodeId v) const {
    if (v.value() >= size())
      throw InputError("node index " + std::to_string(v.value()) + " out of range");
  }

  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> by_label_;
  std::vector<NodeSet> children_, siblings_;
};

/// Subset O of a graph's nodes, kept sorted by index. Position within O is
/// the "local" index used by learned graphs on O.
class ObservedSet {
public:
  ObservedSet() = default;

  ObservedSet(const DirectedMixedGraph &g, std::vector<NodeId> nodes) : mask_(g.size()) {
    for (NodeId v : nodes) {
      if (!g.contains(v))
        throw InputError("observed node " + std::to_string(v.value()) + " not in graph");
      mask_.insert(v);
    }
    mask_.for_each([&](std::size_t i) { nodes_.emplace_back(i); });
  }

  static ObservedSet all(const DirectedMixedGraph &g) {
    std::vector<NodeId> v;
    for (std::size_t i = 0; i < g.size(); ++i) v.emplace_back(i);
    return ObservedSet(g, std::move(v));
  }

  static ObservedSet from_labels(const DirectedMixedGraph &g, std::span<const std::string> labels) {
    std::vector<NodeId> v;
    for (const auto &l : labels) v.push_back(g.node(l));
    return ObservedSet(g, std::move(v));
  }

  static ObservedSet from_mask(const DirectedMixedGraph &g, const NodeSet &mask) {
    std::vector<NodeId> v;
    mask.for_each([&](std::size_t i) { v.emplace_back(i); });
    return ObservedSet(g, std::move(v));
  }

  std::size_t size() const { return nodes_.size(); }
  /// Universe size of the graph this set belongs to.
  std::size_t universe() const { return mask_.universe(); }
  NodeId operator[](std::size_t local) const { return nodes_.at(local); }
  std::span<const NodeId> nodes() const { return nodes_; }
  const NodeSet &mask() const { return mask_; }
  bool contains(NodeId v) const { return mask_.contains(v); }

  std::optional<std::size_t> local_index(NodeId v) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), v);
    if (it == nodes_.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - nodes_.begin());
  }

  /// Maps a set over local indices [0, |O|) into the graph's index space.
  NodeSet lift(const NodeSet &local) const {
    NodeSet out(universe());
    local.for_each([&](std::size_t i) { out.insert(nodes_.at(i)); });
    return out;
  }

  friend bool operator==(const ObservedSet &, const ObservedSet &) = default;

private:
  NodeSet mask_;
  std::vector<NodeId> nodes_;
};

/// Renders a set as `{a,b,c}` using graph labels.
inline std::string format_set(const DirectedMixedGraph &g, const NodeSet &s,
                              std::string_view sep = ",") {
  std::string out = "{";
  bool first = true;
  s.for_each([&](std::size_t i) {
    if (!first) out += sep;
    out += g.label(NodeId(i));
    first = false;
  });
  out += "}";
  return out;
}

} // namespace cscreen

#endif
