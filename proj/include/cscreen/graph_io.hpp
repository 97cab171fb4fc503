#ifndef CSCREEN_GRAPH_IO_HPP
#define CSCREEN_GRAPH_IO_HPP

#include "cscreen/graph.hpp"

#include <json.hpp>

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

namespace cscreen {

namespace detail {

inline NodeId resolve_endpoint(const GraphBuilder &b, const nlohmann::json &j) {
  if (j.is_string()) {
    if (auto v = b.find(j.get<std::string>())) return *v;
    throw InputError("graph JSON: unknown node '" + j.get<std::string>() + "'");
  }
  if (j.is_number_unsigned() || j.is_number_integer()) {
    const auto i = j.get<long long>();
    if (i < 0 || static_cast<std::size_t>(i) >= b.size())
      throw InputError("graph JSON: node index " + std::to_string(i) + " out of range");
    return NodeId(static_cast<std::size_t>(i));
  }
  throw InputError("graph JSON: edge endpoints must be labels or indices");
}

} // namespace detail

/// Parses {"nodes":[...], "directed":[[t,h],...], "bidirected":[[a,b],...]}.
/// Endpoints may be labels or 0-based indices. Loops are implicit; listing
/// them is allowed.
inline DirectedMixedGraph graph_from_json(const nlohmann::json &j) {
  if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_array())
    throw InputError("graph JSON: missing \"nodes\" array");
  GraphBuilder b;
  for (const auto &n : j["nodes"]) {
    if (n.is_string()) b.add_node(n.get<std::string>());
    else if (n.is_number()) b.add_node(n.dump());
    else throw InputError("graph JSON: node labels must be strings");
  }
  auto edges = [&](const char *key, auto &&add) {
    if (!j.contains(key)) return;
    if (!j[key].is_array()) throw InputError(std::string("graph JSON: \"") + key + "\" must be an array");
    for (const auto &e : j[key]) {
      if (!e.is_array() || e.size() != 2)
        throw InputError(std::string("graph JSON: entries of \"") + key + "\" must be pairs");
      add(detail::resolve_endpoint(b, e[0]), detail::resolve_endpoint(b, e[1]));
    }
  };
  edges("directed", [&](NodeId t, NodeId h) { b.add_directed(t, h); });
  edges("bidirected", [&](NodeId x, NodeId y) { b.add_bidirected(x, y); });
  return b.build();
}

inline DirectedMixedGraph graph_from_json_text(const std::string &text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw InputError(std::string("graph JSON: ") + e.what());
  }
  return graph_from_json(j);
}

inline DirectedMixedGraph load_graph(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return graph_from_json_text(ss.str());
}

/// Loops are never emitted.
inline nlohmann::json graph_to_json(const DirectedMixedGraph &g) {
  nlohmann::json j;
  j["nodes"] = g.labels();
  j["directed"] = nlohmann::json::array();
  for (auto [t, h] : g.directed_edges()) j["directed"].push_back({g.label(t), g.label(h)});
  j["bidirected"] = nlohmann::json::array();
  for (auto [a, b] : g.bidirected_edges()) j["bidirected"].push_back({g.label(a), g.label(b)});
  return j;
}

namespace detail {
inline std::string dot_id(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}
} // namespace detail

inline void write_dot(std::ostream &os, const DirectedMixedGraph &g, std::string_view name = "G") {
  os << "digraph " << name << " {\n";
  for (const auto &l : g.labels()) os << "  " << detail::dot_id(l) << ";\n";
  for (auto [t, h] : g.directed_edges())
    os << "  " << detail::dot_id(g.label(t)) << " -> " << detail::dot_id(g.label(h)) << ";\n";
  for (auto [a, b] : g.bidirected_edges())
    os << "  " << detail::dot_id(g.label(a)) << " -> " << detail::dot_id(g.label(b))
       << " [dir=both];\n";
  os << "}\n";
}

inline std::string to_dot(const DirectedMixedGraph &g) {
  std::ostringstream os;
  write_dot(os, g);
  return os.str();
}

} // namespace cscreen

#endif
