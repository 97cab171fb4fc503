#ifndef CSCREEN_ORACLE_HPP
#define CSCREEN_ORACLE_HPP

#include "cscreen/graph.hpp"
#include "cscreen/separation.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

namespace cscreen {

struct QueryRecord {
  SeparationQuery query; ///< over local indices of the observed set
  bool independent = false;
};

/// Answers local-independence queries <A, B | C> over an observed set O and
/// counts every call. Queries use local indices 0 .. |O|-1.
class IndependenceOracle {
public:
  IndependenceOracle() = default;
  IndependenceOracle(const IndependenceOracle &) = delete;
  IndependenceOracle &operator=(const IndependenceOracle &) = delete;
  virtual ~IndependenceOracle() = default;

  virtual std::size_t observed_size() const = 0;
  virtual const std::string &label(std::size_t local) const = 0;

  /// True when B's intensity is locally independent of A given C.
  bool independent(const SeparationQuery &q) {
    if (q.a.universe() != observed_size() || q.b.universe() != observed_size() ||
        q.c.universe() != observed_size())
      throw InputError("oracle query mentions nodes outside the observed set");
    if (q.a.empty() || q.b.empty()) throw InputError("oracle query: A and B must be nonempty");
    calls_.fetch_add(1, std::memory_order_relaxed);
    const bool answer = evaluate(q);
    if (logging_) {
      std::lock_guard lock(log_mutex_);
      log_.push_back({q, answer});
    }
    return answer;
  }

  bool independent(std::size_t from, std::size_t to, const NodeSet &given) {
    return independent(SeparationQuery::singleton(observed_size(), from, to, given));
  }

  std::size_t calls() const { return calls_.load(std::memory_order_relaxed); }

  void enable_log(bool on = true) { logging_ = on; }
  const std::vector<QueryRecord> &log() const { return log_; }

  /// CSV export: `A;B;C;answer`, labels joined by `|`.
  void write_log_csv(std::ostream &os) const {
    auto set = [&](const NodeSet &s) {
      std::string out;
      bool first = true;
      s.for_each([&](std::size_t i) {
        if (!first) out += '|';
        out += label(i);
        first = false;
      });
      return out;
    };
    os << "A;B;C;answer\n";
    for (const auto &r : log_)
      os << set(r.query.a) << ';' << set(r.query.b) << ';' << set(r.query.c) << ';'
         << (r.independent ? "independent" : "dependent") << '\n';
  }

protected:
  virtual bool evaluate(const SeparationQuery &local) = 0;

private:
  std::atomic<std::size_t> calls_{0};
  bool logging_ = false;
  std::mutex log_mutex_;
  std::vector<QueryRecord> log_;
};

/// Oracle backed by mu-separation in a hidden true graph, restricted to O.
class GraphicalOracle final : public IndependenceOracle {
public:
  GraphicalOracle(DirectedMixedGraph truth, ObservedSet observed, bool memoize = false)
      : truth_(std::move(truth)), observed_(std::move(observed)), memoize_(memoize) {
    if (observed_.universe() != truth_.size())
      throw InputError("GraphicalOracle: observed set does not belong to the truth graph");
  }

  std::size_t observed_size() const override { return observed_.size(); }
  const std::string &label(std::size_t local) const override {
    return truth_.label(observed_[local]);
  }

  const DirectedMixedGraph &truth() const { return truth_; }
  const ObservedSet &observed() const { return observed_; }

  /// Query phrased in the truth graph's index space; must stay inside O.
  bool independent_global(const SeparationQuery &q) {
    for (const NodeSet *s : {&q.a, &q.b, &q.c}) {
      if (s->universe() != truth_.size()) throw InputError("query does not match truth graph");
      if (!s->is_subset_of(observed_.mask()))
        throw InputError("oracle query mentions unobserved nodes");
    }
    auto down = [&](const NodeSet &s) {
      NodeSet out(observed_.size());
      s.for_each([&](std::size_t i) { out.insert(*observed_.local_index(NodeId(i))); });
      return out;
    };
    return independent(SeparationQuery{down(q.a), down(q.b), down(q.c)});
  }

protected:
  bool evaluate(const SeparationQuery &local) override {
    SeparationQuery lifted{observed_.lift(local.a), observed_.lift(local.b),
                           observed_.lift(local.c)};
    if (!memoize_) return mu_separated(truth_, lifted);
    auto key = std::make_tuple(local.a.members(), local.b.members(), local.c.members());
    std::lock_guard lock(memo_mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const bool answer = mu_separated(truth_, lifted);
    memo_.emplace(std::move(key), answer);
    return answer;
  }

private:
  using Key = std::tuple<std::vector<std::size_t>, std::vector<std::size_t>,
                         std::vector<std::size_t>>;
  DirectedMixedGraph truth_;
  ObservedSet observed_;
  bool memoize_;
  std::mutex memo_mutex_;
  std::map<Key, bool> memo_;
};

} // namespace cscreen

#endif
