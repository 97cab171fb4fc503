#ifndef CSCREEN_NODE_SET_HPP
#define CSCREEN_NODE_SET_HPP

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace cscreen {

/// Strongly typed node index. Labels live on the graph, not here.
struct NodeId {
  std::uint32_t index = 0;

  constexpr NodeId() = default;
  constexpr explicit NodeId(std::uint32_t i) : index(i) {}
  constexpr explicit NodeId(std::size_t i) : index(static_cast<std::uint32_t>(i)) {}
  constexpr explicit NodeId(int i) : index(static_cast<std::uint32_t>(i)) {}

  constexpr std::size_t value() const { return index; }
  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

/// Fixed-universe dynamic bitset over node indices [0, universe).
///
/// Small graphs (n <= 64) occupy a single word, which keeps the separation
/// search and the screening loops allocation-light.
class NodeSet {
public:
  NodeSet() = default;
  explicit NodeSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}
  NodeSet(std::size_t universe, std::initializer_list<std::size_t> members)
      : NodeSet(universe) {
    for (auto m : members) insert(m);
  }

  static NodeSet full(std::size_t universe) {
    NodeSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(i);
    return s;
  }

  std::size_t universe() const { return universe_; }

  /// Grows (or shrinks) the universe; members beyond the new bound are dropped.
  void resize(std::size_t universe) {
    universe_ = universe;
    words_.resize((universe + 63) / 64, 0);
    if (universe & 63) words_.back() &= (std::uint64_t{1} << (universe & 63)) - 1;
  }

  bool contains(std::size_t i) const {
    return i < universe_ && ((words_[i >> 6] >> (i & 63)) & 1u);
  }
  bool contains(NodeId v) const { return contains(v.value()); }

  void insert(std::size_t i) {
    if (i >= universe_) throw std::out_of_range("NodeSet::insert: index outside universe");
    words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  void insert(NodeId v) { insert(v.value()); }

  void erase(std::size_t i) {
    if (i < universe_) words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  void erase(NodeId v) { erase(v.value()); }

  std::size_t size() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  NodeSet &operator|=(const NodeSet &o) {
    check_same(o);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  NodeSet &operator&=(const NodeSet &o) {
    check_same(o);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  /// Set difference.
  NodeSet &operator-=(const NodeSet &o) {
    check_same(o);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }
  friend NodeSet operator|(NodeSet a, const NodeSet &b) { return a |= b; }
  friend NodeSet operator&(NodeSet a, const NodeSet &b) { return a &= b; }
  friend NodeSet operator-(NodeSet a, const NodeSet &b) { return a -= b; }

  bool is_subset_of(const NodeSet &o) const {
    check_same(o);
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }
  bool intersects(const NodeSet &o) const {
    check_same(o);
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & o.words_[k]) return true;
    return false;
  }

  /// Calls f(index) for each member in increasing order.
  template <class F> void for_each(F &&f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(w));
        f(k * 64 + bit);
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  friend bool operator==(const NodeSet &, const NodeSet &) = default;

private:
  void check_same(const NodeSet &o) const {
    if (o.universe_ != universe_)
      throw std::invalid_argument("NodeSet: mismatched universes");
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

} // namespace cscreen

#endif
