#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "epd/digraph.hpp"

namespace epd {

using json = nlohmann::ordered_json;

inline json vertex_list_json(const std::set<Vertex>& s) {
  json a = json::array();
  for (Vertex v : s) a.push_back(v);
  return a;
}

inline std::set<Vertex> vertex_set_from_json(const json& j) {
  if (!j.is_array()) throw DomainError("expected an array of vertex ids");
  std::set<Vertex> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw DomainError("vertex id must be an integer");
    out.insert(x.get<Vertex>());
  }
  return out;
}

/// Canonical form: vertices ascending, edges lexicographic, labels keyed by id.
inline json to_json(const Digraph& g) {
  json j;
  j["vertices"] = json::array();
  for (Vertex v : g.vertices()) j["vertices"].push_back(v);
  j["edges"] = json::array();
  for (auto [u, v] : g.edges()) j["edges"].push_back({u, v});
  if (!g.labels().empty()) {
    json l = json::object();
    for (const auto& [v, s] : g.labels()) l[std::to_string(v)] = s;
    j["labels"] = l;
  }
  return j;
}

inline Digraph digraph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw DomainError("graph JSON needs \"vertices\" and \"edges\"");
  Digraph g;
  for (Vertex v : vertex_set_from_json(j.at("vertices"))) g.add_vertex(v);
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw DomainError("edge must be a pair of integer ids");
    Vertex u = e[0].get<Vertex>(), v = e[1].get<Vertex>();
    if (g.has_edge(u, v)) throw DomainError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    g.add_edge(u, v);
  }
  if (j.contains("labels")) {
    for (const auto& [k, s] : j.at("labels").items()) {
      Vertex v;
      try {
        v = std::stoi(k);
      } catch (const std::exception&) {
        throw DomainError("label key '" + k + "' is not a vertex id");
      }
      g.set_label(v, s.get<std::string>());
    }
  }
  return g;
}

inline std::string dump_canonical(const json& j) { return j.dump(); }

/// One line per vertex with a label, then one line per edge, in canonical order.
inline std::string to_dot(const Digraph& g, const std::string& name = "G") {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (Vertex v : g.vertices()) {
    os << "  " << v;
    if (g.has_label(v)) os << " [label=\"" << g.label(v) << "\"]";
    os << ";\n";
  }
  for (auto [u, v] : g.edges()) os << "  " << u << " -> " << v << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace epd
