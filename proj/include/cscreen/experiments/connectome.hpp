#ifndef CSCREEN_EXPERIMENTS_CONNECTOME_HPP
#define CSCREEN_EXPERIMENTS_CONNECTOME_HPP

#include "cscreen/graph.hpp"
#include "cscreen/random.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace cscreen::experiments {

enum class SynapseType { chemical, gap };

struct SynapseRecord {
  std::string pre;
  std::string post;
  std::uint32_t count = 1;
  SynapseType type = SynapseType::chemical;
};

struct ConnectomeSpec {
  /// Chemical connections need strictly more synapses than this.
  std::uint32_t threshold = 4;
  /// Same for gap junctions; by default every gap junction is kept.
  std::uint32_t gap_threshold = 0;
  /// Subsample size.
  std::size_t m = 75;
  /// Sampling weight is (1 + degree)^weight_exponent.
  double weight_exponent = 1.0;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string &line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    std::string field = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\r')) field.pop_back();
    while (!field.empty() && field.front() == ' ') field.erase(field.begin());
    out.push_back(std::move(field));
    if (comma == std::string::npos) return out;
    start = comma + 1;
  }
}

} // namespace detail

/// Reads CSV `pre,post,count,type` (header required), type chem or gap.
inline std::vector<SynapseRecord> read_connectome_csv(std::istream &in) {
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string &msg) -> InputError {
    return InputError("connectome line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line != "\r") break;
  }
  if (detail::split_csv_line(line) != std::vector<std::string>{"pre", "post", "count", "type"})
    throw InputError("connectome: expected header pre,post,count,type");

  std::vector<SynapseRecord> out;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = detail::split_csv_line(line);
    if (f.size() != 4) throw fail("expected 4 fields, found " + std::to_string(f.size()));
    if (f[0].empty() || f[1].empty()) throw fail("empty neuron name");
    SynapseRecord r{f[0], f[1], 0, SynapseType::chemical};
    const auto [ptr, ec] = std::from_chars(f[2].data(), f[2].data() + f[2].size(), r.count);
    if (ec != std::errc() || ptr != f[2].data() + f[2].size() || r.count < 1)
      throw fail("count must be a positive integer, got '" + f[2] + "'");
    if (f[3] == "chem") r.type = SynapseType::chemical;
    else if (f[3] == "gap") r.type = SynapseType::gap;
    else throw fail("type must be chem or gap, got '" + f[3] + "'");
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<SynapseRecord> load_connectome_csv(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open connectome file '" + path + "'");
  return read_connectome_csv(in);
}

/// Builds the DMG: every neuron named in a record becomes a node (first
/// appearance order); chemical connections above threshold become pre -> post,
/// gap junctions above gap_threshold become bidirected. Repeated records of
/// the same connection are merged by their maximum count. Self-connections
/// carry no information beyond the loop and are ignored.
inline DirectedMixedGraph ingest_connectome(const std::vector<SynapseRecord> &records,
                                            const ConnectomeSpec &spec = {}) {
  if (records.empty()) throw InputError("connectome: no records, so no nodes");
  GraphBuilder b;
  std::unordered_map<std::string, NodeId> ids;
  auto id = [&](const std::string &label) {
    auto it = ids.find(label);
    if (it != ids.end()) return it->second;
    const NodeId v = b.add_node(label);
    ids.emplace(label, v);
    return v;
  };
  std::map<std::pair<NodeId, NodeId>, std::uint32_t> chem, gap;
  for (const auto &r : records) {
    const NodeId pre = id(r.pre), post = id(r.post);
    if (pre == post) continue;
    if (r.type == SynapseType::chemical) {
      auto &c = chem[{pre, post}];
      c = std::max(c, r.count);
    } else {
      auto &c = gap[{std::min(pre, post), std::max(pre, post)}];
      c = std::max(c, r.count);
    }
  }
  for (auto [e, c] : chem)
    if (c > spec.threshold) b.add_directed(e.first, e.second);
  for (auto [e, c] : gap)
    if (c > spec.gap_threshold) b.add_bidirected(e.first, e.second);
  return b.build();
}

/// Directed in + out degree plus bidirected incidences, loops excluded.
inline std::size_t sampling_degree(const DirectedMixedGraph &g, NodeId v) {
  return (g.children(v).size() - 1) + (g.parents(v).size() - 1) + (g.siblings(v).size());
}

/// Weighted sampling of m nodes without replacement: each draw picks a
/// remaining node with probability proportional to (1 + degree)^w.
inline ObservedSet subsample(const DirectedMixedGraph &g, std::size_t m, std::uint64_t seed,
                             double w = 1.0) {
  if (m > g.size())
    throw InputError("subsample: m = " + std::to_string(m) + " exceeds " + std::to_string(g.size()) +
                     " nodes");
  std::vector<double> weight(g.size());
  for (std::size_t v = 0; v < g.size(); ++v)
    weight[v] = std::pow(1.0 + static_cast<double>(sampling_degree(g, NodeId(v))), w);
  Rng rng(seed);
  std::vector<NodeId> chosen;
  std::vector<bool> taken(g.size(), false);
  for (std::size_t k = 0; k < m; ++k) {
    double total = 0;
    for (std::size_t v = 0; v < g.size(); ++v)
      if (!taken[v]) total += weight[v];
    double u = rng.uniform() * total;
    std::size_t pick = g.size();
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (taken[v]) continue;
      pick = v;
      if (u < weight[v]) break;
      u -= weight[v];
    }
    taken[pick] = true;
    chosen.emplace_back(pick);
  }
  return ObservedSet(g, chosen);
}

} // namespace cscreen::experiments

#endif
