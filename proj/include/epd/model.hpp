#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "epd/digraph.hpp"
#include "epd/json_io.hpp"

namespace epd {

enum class MinorKind { Butterfly, Topological };

inline std::string to_string(MinorKind k) { return k == MinorKind::Butterfly ? "butterfly" : "topological"; }

inline MinorKind minor_kind_from_string(const std::string& s) {
  if (s == "butterfly") return MinorKind::Butterfly;
  if (s == "topological") return MinorKind::Topological;
  throw DomainError("unknown minor kind '" + s + "' (expected butterfly or topological)");
}

using Path = std::vector<Vertex>;

struct TopologicalModel {
  std::map<Vertex, Vertex> vertex_map;
  std::map<Edge, Path> edge_map;

  std::set<Vertex> image() const {
    std::set<Vertex> out;
    for (const auto& [_, x] : vertex_map) out.insert(x);
    for (const auto& [_, p] : edge_map) out.insert(p.begin(), p.end());
    return out;
  }
};

/// Tree-like butterfly model: every branch set is an in-branching and an
/// out-branching glued at a common root.
struct ButterflyModel {
  std::map<Vertex, std::set<Vertex>> vertex_map;
  std::map<Edge, Edge> edge_map;
  std::map<Vertex, Vertex> roots;
  std::map<Vertex, std::vector<Edge>> in_branching;
  std::map<Vertex, std::vector<Edge>> out_branching;

  std::set<Vertex> image() const {
    std::set<Vertex> out;
    for (const auto& [_, s] : vertex_map) out.insert(s.begin(), s.end());
    return out;
  }
};

using Model = std::variant<TopologicalModel, ButterflyModel>;

inline std::set<Vertex> model_image(const Model& m) {
  return std::visit([](const auto& x) { return x.image(); }, m);
}

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  void add(std::string s) { violations.push_back(std::move(s)); }
};


inline ValidationReport validate_topological_model(const Digraph& h, const Digraph& g,
                                                   const TopologicalModel& m) {
  ValidationReport r;
  std::map<Vertex, Vertex> owner;  // G-vertex -> H-vertex
  for (Vertex v : h.vertices()) {
    auto it = m.vertex_map.find(v);
    if (it == m.vertex_map.end()) {
      r.add("vertex " + std::to_string(v) + " is unmapped");
      continue;
    }
    if (!g.has_vertex(it->second)) {
      r.add("vertex " + std::to_string(v) + " maps outside G");
      continue;
    }
    auto [pos, fresh] = owner.emplace(it->second, v);
    if (!fresh)
      r.add("vertex map not injective: " + std::to_string(pos->second) + " and " + std::to_string(v) +
            " both map to " + std::to_string(it->second));
  }
  for (const auto& [v, _] : m.vertex_map)
    if (!h.has_vertex(v)) r.add("vertex_map mentions unknown H-vertex " + std::to_string(v));

  std::map<Vertex, Edge> internal_owner;
  for (Edge e : h.edges()) {
    auto it = m.edge_map.find(e);
    if (it == m.edge_map.end()) {
      r.add("edge " + edge_str(e) + " is unmapped");
      continue;
    }
    const Path& p = it->second;
    auto a = m.vertex_map.find(e.first), b = m.vertex_map.find(e.second);
    if (p.size() < 2) {
      r.add("edge " + edge_str(e) + " maps to a path with fewer than two vertices");
      continue;
    }
    if (a == m.vertex_map.end() || p.front() != a->second)
      r.add("path of edge " + edge_str(e) + " does not start at the image of its tail");
    if (b == m.vertex_map.end() || p.back() != b->second)
      r.add("path of edge " + edge_str(e) + " does not end at the image of its head");
    std::set<Vertex> seen;
    for (size_t i = 0; i < p.size(); ++i) {
      if (!seen.insert(p[i]).second) r.add("path of edge " + edge_str(e) + " repeats vertex " + std::to_string(p[i]));
      if (i + 1 < p.size() && !g.has_edge(p[i], p[i + 1]))
        r.add("path of edge " + edge_str(e) + " uses non-edge " + edge_str({p[i], p[i + 1]}));
    }
    for (size_t i = 1; i + 1 < p.size(); ++i) {
      if (owner.count(p[i]))
        r.add("path of edge " + edge_str(e) + " passes through branch vertex " + std::to_string(p[i]));
      auto [pos, fresh] = internal_owner.emplace(p[i], e);
      if (!fresh) r.add("paths intersect internally at vertex " + std::to_string(p[i]));
    }
  }
  for (const auto& [e, _] : m.edge_map)
    if (!h.has_edge(e.first, e.second)) r.add("edge_map mentions non-edge " + edge_str(e) + " of H");
  return r;
}

namespace detail {

/// Checks that `arcs` form a branching over `nodes` rooted at `root`; arcs
/// point toward the root when `inward`.
inline void check_branching(const Digraph& g, Vertex hv, Vertex root, const std::vector<Edge>& arcs,
                            bool inward, std::set<Vertex>& nodes, ValidationReport& r) {
  const std::string what = inward ? "in-branching" : "out-branching";
  nodes = {root};
  std::map<Vertex, Vertex> next;  // child -> parent (toward root)
  for (Edge a : arcs) {
    if (!g.has_edge(a.first, a.second)) {
      r.add(what + " of " + std::to_string(hv) + " uses non-edge " + edge_str(a));
      continue;
    }
    Vertex child = inward ? a.first : a.second;
    Vertex parent = inward ? a.second : a.first;
    nodes.insert(child);
    nodes.insert(parent);
    if (!next.emplace(child, parent).second)
      r.add(what + " of " + std::to_string(hv) + ": vertex " + std::to_string(child) + " has two parents");
  }
  if (next.count(root)) r.add(what + " of " + std::to_string(hv) + ": root has a parent");
  for (Vertex x : nodes) {
    if (x == root) continue;
    if (!next.count(x)) {
      r.add(what + " of " + std::to_string(hv) + ": vertex " + std::to_string(x) + " has no parent");
      continue;
    }
    Vertex y = x;
    size_t steps = 0;
    while (y != root && next.count(y) && steps <= nodes.size()) {
      y = next[y];
      ++steps;
    }
    if (y != root) r.add(what + " of " + std::to_string(hv) + ": vertex " + std::to_string(x) + " does not reach the root");
  }
}

}  // namespace detail

inline ValidationReport validate_butterfly_model(const Digraph& h, const Digraph& g, const ButterflyModel& m) {
  ValidationReport r;
  std::map<Vertex, Vertex> owner;
  std::map<Vertex, std::set<Vertex>> tin, tout;
  for (Vertex v : h.vertices()) {
    auto it = m.vertex_map.find(v);
    if (it == m.vertex_map.end() || it->second.empty()) {
      r.add("vertex " + std::to_string(v) + " has an empty branch set");
      continue;
    }
    for (Vertex x : it->second) {
      if (!g.has_vertex(x)) r.add("branch set of " + std::to_string(v) + " leaves G at " + std::to_string(x));
      auto [pos, fresh] = owner.emplace(x, v);
      if (!fresh)
        r.add("branch sets of " + std::to_string(pos->second) + " and " + std::to_string(v) + " share vertex " +
              std::to_string(x));
    }
    auto rt = m.roots.find(v);
    if (rt == m.roots.end() || !it->second.count(rt->second)) {
      r.add("root of " + std::to_string(v) + " missing or outside its branch set");
      continue;
    }
    static const std::vector<Edge> none;
    auto bi = m.in_branching.find(v);
    auto bo = m.out_branching.find(v);
    detail::check_branching(g, v, rt->second, bi == m.in_branching.end() ? none : bi->second, true, tin[v], r);
    detail::check_branching(g, v, rt->second, bo == m.out_branching.end() ? none : bo->second, false, tout[v], r);
    std::set<Vertex> both;
    for (Vertex x : tin[v])
      if (tout[v].count(x) && x != rt->second) both.insert(x);
    if (!both.empty())
      r.add("in- and out-branching of " + std::to_string(v) + " share non-root vertex " + std::to_string(*both.begin()));
    std::set<Vertex> uni = tin[v];
    uni.insert(tout[v].begin(), tout[v].end());
    if (uni != it->second) r.add("branchings of " + std::to_string(v) + " do not cover exactly its branch set");
  }
  for (Edge e : h.edges()) {
    auto it = m.edge_map.find(e);
    if (it == m.edge_map.end()) {
      r.add("edge " + edge_str(e) + " is unmapped");
      continue;
    }
    Edge ge = it->second;
    if (!g.has_edge(ge.first, ge.second)) {
      r.add("edge " + edge_str(e) + " maps to non-edge " + edge_str(ge));
      continue;
    }
    if (!tout[e.first].count(ge.first)) {
      if (m.vertex_map.count(e.first) && m.vertex_map.at(e.first).count(ge.first))
        r.add("tail of edge " + edge_str(e) + " not in out-branching");
      else
        r.add("tail of edge " + edge_str(e) + " outside branch set of " + std::to_string(e.first));
    }
    if (!tin[e.second].count(ge.second)) {
      if (m.vertex_map.count(e.second) && m.vertex_map.at(e.second).count(ge.second))
        r.add("head not in in-branching for edge " + edge_str(e));
      else
        r.add("head of edge " + edge_str(e) + " outside branch set of " + std::to_string(e.second));
    }
  }
  return r;
}

inline ValidationReport validate_model(const Digraph& h, const Digraph& g, const Model& m) {
  if (auto* t = std::get_if<TopologicalModel>(&m)) return validate_topological_model(h, g, *t);
  return validate_butterfly_model(h, g, std::get<ButterflyModel>(m));
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline std::string edge_key(Edge e) { return std::to_string(e.first) + "," + std::to_string(e.second); }

inline Edge edge_from_key(const std::string& s) {
  auto c = s.find(',');
  if (c == std::string::npos) throw DomainError("edge key '" + s + "' is not of the form u,v");
  try {
    return {std::stoi(s.substr(0, c)), std::stoi(s.substr(c + 1))};
  } catch (const std::exception&) {
    throw DomainError("edge key '" + s + "' is not of the form u,v");
  }
}

inline json edges_json(const std::vector<Edge>& es) {
  json a = json::array();
  for (auto [u, v] : es) a.push_back({u, v});
  return a;
}

inline json to_json(const TopologicalModel& m) {
  json j;
  j["vertex_map"] = json::object();
  for (auto [v, x] : m.vertex_map) j["vertex_map"][std::to_string(v)] = x;
  j["edge_map"] = json::object();
  for (const auto& [e, p] : m.edge_map) j["edge_map"][edge_key(e)] = p;
  return j;
}

inline json to_json(const ButterflyModel& m) {
  json j;
  j["vertex_map"] = json::object();
  for (const auto& [v, s] : m.vertex_map) j["vertex_map"][std::to_string(v)] = vertex_list_json(s);
  j["edge_map"] = json::object();
  for (auto [e, ge] : m.edge_map) j["edge_map"][edge_key(e)] = {ge.first, ge.second};
  j["roots"] = json::object();
  for (auto [v, r] : m.roots) j["roots"][std::to_string(v)] = r;
  j["in_branching"] = json::object();
  for (const auto& [v, es] : m.in_branching) j["in_branching"][std::to_string(v)] = edges_json(es);
  j["out_branching"] = json::object();
  for (const auto& [v, es] : m.out_branching) j["out_branching"][std::to_string(v)] = edges_json(es);
  return j;
}

inline json to_json(const Model& m) {
  return std::visit([](const auto& x) { return to_json(x); }, m);
}

inline std::vector<Edge> edges_from_json(const json& j) {
  std::vector<Edge> out;
  for (const auto& e : j) out.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
  return out;
}

inline TopologicalModel topological_model_from_json(const json& j) {
  TopologicalModel m;
  try {
    for (const auto& [k, x] : j.at("vertex_map").items()) m.vertex_map[std::stoi(k)] = x.get<Vertex>();
    for (const auto& [k, p] : j.at("edge_map").items()) m.edge_map[edge_from_key(k)] = p.get<Path>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed topological model: ") + e.what());
  }
  return m;
}

inline ButterflyModel butterfly_model_from_json(const json& j) {
  ButterflyModel m;
  try {
    for (const auto& [k, s] : j.at("vertex_map").items()) m.vertex_map[std::stoi(k)] = vertex_set_from_json(s);
    for (const auto& [k, e] : j.at("edge_map").items())
      m.edge_map[edge_from_key(k)] = {e.at(0).get<Vertex>(), e.at(1).get<Vertex>()};
    for (const auto& [k, r] : j.at("roots").items()) m.roots[std::stoi(k)] = r.get<Vertex>();
    if (j.contains("in_branching"))
      for (const auto& [k, es] : j.at("in_branching").items()) m.in_branching[std::stoi(k)] = edges_from_json(es);
    if (j.contains("out_branching"))
      for (const auto& [k, es] : j.at("out_branching").items()) m.out_branching[std::stoi(k)] = edges_from_json(es);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed butterfly model: ") + e.what());
  }
  return m;
}

}  // namespace epd
