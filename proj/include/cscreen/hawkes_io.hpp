#ifndef CSCREEN_HAWKES_IO_HPP
#define CSCREEN_HAWKES_IO_HPP

#include "cscreen/hawkes.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace cscreen::hawkes {

/// {"mu": [...], "kernels": [[{"a":..,"b":..}, ...], ...], "T": ..., "nodes": [...]}
/// with kernels[beta][alpha]; "nodes" is optional.
inline HawkesModel model_from_json(const nlohmann::json &j) {
  try {
    if (!j.is_object()) throw InputError("Hawkes model JSON: expected an object");
    for (const char *key : {"mu", "kernels", "T"})
      if (!j.contains(key)) throw InputError(std::string("Hawkes model JSON: missing \"") + key + "\"");
    auto mu = j.at("mu").get<std::vector<double>>();
    std::vector<std::vector<ExponentialKernel>> kernels;
    for (const auto &row : j.at("kernels")) {
      auto &out = kernels.emplace_back();
      for (const auto &k : row) out.push_back({k.at("a").get<double>(), k.at("b").get<double>()});
    }
    std::vector<std::string> labels;
    if (j.contains("nodes")) labels = j.at("nodes").get<std::vector<std::string>>();
    return HawkesModel(std::move(mu), std::move(kernels), j.at("T").get<double>(), std::move(labels));
  } catch (const nlohmann::json::exception &e) {
    throw InputError(std::string("Hawkes model JSON: ") + e.what());
  }
}

inline nlohmann::json model_to_json(const HawkesModel &m) {
  nlohmann::json j;
  j["nodes"] = m.labels();
  j["mu"] = m.mu();
  j["T"] = m.horizon();
  j["kernels"] = nlohmann::json::array();
  for (std::size_t beta = 0; beta < m.size(); ++beta) {
    auto row = nlohmann::json::array();
    for (std::size_t alpha = 0; alpha < m.size(); ++alpha)
      row.push_back({{"a", m.kernel(beta, alpha).a}, {"b", m.kernel(beta, alpha).b}});
    j["kernels"].push_back(std::move(row));
  }
  return j;
}

inline HawkesModel load_model(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    throw InputError("Hawkes model JSON: " + std::string(e.what()));
  }
  return model_from_json(j);
}

namespace detail {
inline double parse_time(std::string_view s, std::string_view context) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw InputError(std::string(context) + ": bad time '" + std::string(s) + "'");
  return v;
}
} // namespace detail

/// Parses `node@t1,t2,...`; node is a label or index. `node@` forces no events.
inline Intervention parse_intervention(const HawkesModel &m, std::string_view spec) {
  const auto at = spec.find('@');
  if (at == std::string_view::npos) throw InputError("intervention must look like node@t1,t2,...");
  const std::string node(spec.substr(0, at));
  Intervention iv;
  bool found = false;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m.label(i) == node) iv.target = i, found = true;
  if (!found) {
    std::size_t idx = 0;
    const auto [ptr, ec] = std::from_chars(node.data(), node.data() + node.size(), idx);
    if (ec != std::errc() || ptr != node.data() + node.size() || node.empty() || idx >= m.size())
      throw InputError("intervention: unknown process '" + node + "'");
    iv.target = idx;
  }
  std::string_view rest = spec.substr(at + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    iv.times.push_back(detail::parse_time(rest.substr(0, comma), "intervention"));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  iv.validate(m);
  return iv;
}

inline std::string format_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", t);
  return buf;
}

/// CSV `node,time`, sorted by time (ties by process index).
inline void write_events_csv(std::ostream &os, const HawkesModel &m, const EventHistory &h) {
  os << "node,time\n";
  for (auto [t, i] : h.merged()) os << m.label(i) << ',' << format_time(t) << '\n';
}

inline EventHistory read_events_csv(std::istream &in, const HawkesModel &m) {
  std::string line;
  if (!std::getline(in, line) || line != "node,time") throw InputError("events CSV: missing header");
  std::vector<std::vector<double>> times(m.size());
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw InputError("events CSV line " + std::to_string(lineno) + ": expected node,time");
    const auto i = m.index_of(line.substr(0, comma));
    times[i].push_back(detail::parse_time(std::string_view(line).substr(comma + 1),
                                          "events CSV line " + std::to_string(lineno)));
  }
  return EventHistory(std::move(times), m.horizon());
}

} // namespace cscreen::hawkes

#endif
