#ifndef CSCREEN_EXPERIMENTS_METRICS_HPP
#define CSCREEN_EXPERIMENTS_METRICS_HPP

#include "cscreen/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cscreen::experiments {

/// An output graph lacks an edge of the true parent graph.
class SoundnessViolation : public std::runtime_error {
public:
  SoundnessViolation(const std::string &what, std::vector<Edge> missing)
      : std::runtime_error(what), missing_(std::move(missing)) {}
  const std::vector<Edge> &missing() const { return missing_; }

private:
  std::vector<Edge> missing_;
};

/// Directed non-loop edges of `output` absent from `truth_parent`. Throws
/// SoundnessViolation if `output` misses any edge of `truth_parent`.
inline std::size_t excess_edges(const DirectedMixedGraph &output, const DirectedMixedGraph &truth_parent) {
  if (output.labels() != truth_parent.labels())
    throw InputError("excess_edges: graphs are on different node sets");
  std::vector<Edge> missing;
  for (auto [t, h] : truth_parent.directed_edges())
    if (!output.has_directed(t, h)) missing.emplace_back(t, h);
  if (!missing.empty()) {
    std::string msg = "output misses " + std::to_string(missing.size()) + " true edge(s), first " +
                      output.label(missing[0].first) + "->" + output.label(missing[0].second);
    throw SoundnessViolation(msg, std::move(missing));
  }
  std::size_t excess = 0;
  for (auto [t, h] : output.directed_edges())
    if (!truth_parent.has_directed(t, h)) ++excess;
  return excess;
}

inline std::vector<std::size_t> indegrees(const DirectedMixedGraph &g) {
  std::vector<std::size_t> d(g.size(), 0);
  for (auto [t, h] : g.directed_edges()) ++d[h.value()];
  return d;
}

inline std::vector<std::size_t> outdegrees(const DirectedMixedGraph &g) {
  std::vector<std::size_t> d(g.size(), 0);
  for (auto [t, h] : g.directed_edges()) ++d[t.value()];
  return d;
}

/// 1-based ranks; tied values share the mean of their positions.
inline std::vector<double> average_ranks(const std::vector<double> &xs) {
  std::vector<std::size_t> idx(xs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && xs[idx[j + 1]] == xs[idx[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

/// Spearman's rho as the Pearson correlation of average ranks. Empty when
/// either input is constant.
inline std::optional<double> spearman(const std::vector<double> &xs, const std::vector<double> &ys) {
  if (xs.size() != ys.size()) throw InputError("spearman: inputs differ in length");
  if (xs.size() < 2) throw InputError("spearman: need at least two observations");
  const auto rx = average_ranks(xs), ry = average_ranks(ys);
  const double n = static_cast<double>(xs.size());
  const double mean = (n + 1) / 2;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

template <class T> std::vector<double> as_doubles(const std::vector<T> &v) {
  return {v.begin(), v.end()};
}

/// Indices of the k largest values; ties go to the smaller index.
template <class T> std::vector<std::size_t> top_k(const std::vector<T> &values, std::size_t k) {
  if (k > values.size()) throw InputError("top_k: k exceeds the number of nodes");
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return values[a] > values[b]; });
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

/// |top_k(truth) intersect top_k(output)|; both vectors indexed by node.
template <class T>
std::size_t topk_overlap(const std::vector<T> &truth, const std::vector<T> &output, std::size_t k) {
  if (truth.size() != output.size()) throw InputError("topk_overlap: degree vectors differ in length");
  const auto a = top_k(truth, k), b = top_k(output, k);
  std::vector<std::size_t> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  return both.size();
}

} // namespace cscreen::experiments

#endif
