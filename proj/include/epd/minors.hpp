#pragma once

#include <optional>
#include <string>

#include "epd/digraph.hpp"
#include "epd/model.hpp"
#include "epd/model_search.hpp"

namespace epd {

struct MinorOptions {
  /// Largest |V(G)| accepted without a decomposition.
  size_t exhaustive_bound = 14;
  Budget* budget = nullptr;
};

/// True when every butterfly model of H can be turned into a topological
/// one: total degree ≤ 3 and in-/out-degree ≤ 2 everywhere.
inline bool degree_conversion_applies(const Digraph& h) {
  for (Vertex v : h.vertices()) {
    auto d = degrees(h, v);
    if (d.total > 3 || d.in > 2 || d.out > 2) return false;
  }
  return true;
}

/// Every topological model is a butterfly model: path interiors join the
/// out-branching of the tail.
inline ButterflyModel topological_to_butterfly(const Digraph& h, const TopologicalModel& m) {
  ButterflyModel b;
  for (Vertex v : h.vertices()) {
    Vertex r = m.vertex_map.at(v);
    b.roots[v] = r;
    b.vertex_map[v] = {r};
    b.in_branching[v];
    b.out_branching[v];
  }
  for (Edge e : h.edges()) {
    const Path& p = m.edge_map.at(e);
    for (size_t i = 1; i + 1 < p.size(); ++i) {
      b.vertex_map[e.first].insert(p[i]);
      b.out_branching[e.first].emplace_back(p[i - 1], p[i]);
    }
    b.edge_map[e] = {p[p.size() - 2], p.back()};
  }
  return b;
}

namespace detail {

inline void check_size(const Digraph& g, const MinorOptions& opt) {
  if (g.num_vertices() > opt.exhaustive_bound)
    throw DomainError("graph has " + std::to_string(g.num_vertices()) +
                      " vertices, above the exhaustive-search bound " + std::to_string(opt.exhaustive_bound) +
                      "; supply a directed tree decomposition and use find_model_bounded_dtw");
}

}  // namespace detail

inline std::optional<TopologicalModel> find_topological_model(const Digraph& h, const Digraph& g,
                                                              const MinorOptions& opt = {}) {
  detail::check_size(g, opt);
  SearchRequest req;
  req.kind = MinorKind::Topological;
  req.budget = opt.budget;
  auto m = search_model(h, g, req);
  if (!m) return std::nullopt;
  return std::get<TopologicalModel>(*m);
}

inline std::optional<ButterflyModel> find_butterfly_model(const Digraph& h, const Digraph& g,
                                                          const MinorOptions& opt = {}) {
  detail::check_size(g, opt);
  SearchRequest req;
  req.budget = opt.budget;
  if (degree_conversion_applies(h)) {
    req.kind = MinorKind::Topological;
    auto m = search_model(h, g, req);
    if (!m) return std::nullopt;
    return topological_to_butterfly(h, std::get<TopologicalModel>(*m));
  }
  req.kind = MinorKind::Butterfly;
  auto m = search_model(h, g, req);
  if (!m) return std::nullopt;
  return std::get<ButterflyModel>(*m);
}

/// Exact model search without the size cutoff; used by the engines on
/// generator-sized graphs.
inline std::optional<Model> find_model_unbounded(const Digraph& h, const Digraph& g, MinorKind kind,
                                                 Budget* budget = nullptr,
                                                 const std::optional<std::set<Vertex>>& allowed = std::nullopt) {
  SearchRequest req;
  req.budget = budget;
  req.allowed = allowed;
  if (kind == MinorKind::Butterfly && degree_conversion_applies(h)) {
    req.kind = MinorKind::Topological;
    auto m = search_model(h, g, req);
    if (!m) return std::nullopt;
    return Model{topological_to_butterfly(h, std::get<TopologicalModel>(*m))};
  }
  req.kind = kind;
  return search_model(h, g, req);
}

inline std::optional<std::vector<Model>> find_disjoint_models(const Digraph& h, const Digraph& g, int k,
                                                              MinorKind kind, Budget* budget = nullptr) {
  SearchRequest req;
  req.budget = budget;
  bool convert = kind == MinorKind::Butterfly && degree_conversion_applies(h);
  req.kind = convert ? MinorKind::Topological : kind;
  auto ms = search_disjoint_models(h, g, k, req);
  if (!ms || !convert) return ms;
  for (auto& m : *ms) m = topological_to_butterfly(h, std::get<TopologicalModel>(m));
  return ms;
}

inline std::optional<Model> find_model(const Digraph& h, const Digraph& g, MinorKind kind,
                                       const MinorOptions& opt = {}) {
  if (kind == MinorKind::Topological) {
    auto m = find_topological_model(h, g, opt);
    if (!m) return std::nullopt;
    return Model{*m};
  }
  auto m = find_butterfly_model(h, g, opt);
  if (!m) return std::nullopt;
  return Model{*m};
}

// ---------------------------------------------------------------------------
// Butterfly to topological
// ---------------------------------------------------------------------------

namespace detail {

/// Path from x to the root inside an in-branching (child -> parent arcs).
inline Path path_to_root(const std::map<Vertex, Vertex>& parent, Vertex x, Vertex root) {
  Path p{x};
  while (p.back() != root) p.push_back(parent.at(p.back()));
  return p;
}

}  // namespace detail

inline TopologicalModel butterfly_to_topological(const Digraph& h, const Digraph& g, const ButterflyModel& m) {
  for (Vertex v : h.vertices()) {
    auto d = degrees(h, v);
    if (d.total > 3) throw DomainError("vertex " + std::to_string(v) + " of H has total degree " + std::to_string(d.total) + " > 3");
    if (d.in > 2 || d.out > 2)
      throw DomainError("vertex " + std::to_string(v) + " of H has in-degree " + std::to_string(d.in) +
                        " and out-degree " + std::to_string(d.out) +
                        "; the conversion needs both at most 2");
  }
  auto rep = validate_butterfly_model(h, g, m);
  if (!rep.ok()) throw DomainError("invalid butterfly model: " + rep.violations.front());

  // Per H-vertex: parent maps of both branchings.
  std::map<Vertex, std::map<Vertex, Vertex>> in_parent, out_parent;
  for (const auto& [v, arcs] : m.in_branching)
    for (auto [x, y] : arcs) in_parent[v][x] = y;
  for (const auto& [v, arcs] : m.out_branching)
    for (auto [x, y] : arcs) out_parent[v][y] = x;

  auto in_path = [&](Vertex v, Vertex x) {  // x -> root in T_i
    return detail::path_to_root(in_parent[v], x, m.roots.at(v));
  };
  auto out_path = [&](Vertex v, Vertex x) {  // root -> x in T_o
    Path p = detail::path_to_root(out_parent[v], x, m.roots.at(v));
    std::reverse(p.begin(), p.end());
    return p;
  };

  std::map<Vertex, Vertex> center;
  for (Vertex v : h.vertices()) {
    std::vector<Vertex> ins, outs;
    for (Vertex a : h.in_neighbors(v)) ins.push_back(m.edge_map.at({a, v}).second);
    for (Vertex b : h.out_neighbors(v)) outs.push_back(m.edge_map.at({v, b}).first);
    Vertex c = m.roots.at(v);
    if (ins.size() == 2) {
      Path p1 = in_path(v, ins[0]), p2 = in_path(v, ins[1]);
      std::set<Vertex> on2(p2.begin(), p2.end());
      for (Vertex x : p1)
        if (on2.count(x)) {
          c = x;
          break;
        }
    } else if (outs.size() == 2) {
      Path q1 = out_path(v, outs[0]), q2 = out_path(v, outs[1]);
      for (size_t i = 0; i < q1.size() && i < q2.size() && q1[i] == q2[i]; ++i) c = q1[i];
    }
    center[v] = c;
  }

  // Segment inside branch set v from c_v to an out-terminal, or from an in-terminal to c_v.
  auto segment_out = [&](Vertex v, Vertex tail) {
    Path q = out_path(v, tail);
    Vertex c = center[v];
    auto it = std::find(q.begin(), q.end(), c);
    if (it != q.end()) return Path(it, q.end());
    Path p = in_path(v, c);  // c lies in T_i
    p.insert(p.end(), q.begin() + 1, q.end());
    return p;
  };
  auto segment_in = [&](Vertex v, Vertex head) {
    Path p = in_path(v, head);
    Vertex c = center[v];
    auto it = std::find(p.begin(), p.end(), c);
    if (it != p.end()) return Path(p.begin(), it + 1);
    Path q = out_path(v, c);  // c lies in T_o
    p.insert(p.end(), q.begin() + 1, q.end());
    return p;
  };

  TopologicalModel t;
  for (Vertex v : h.vertices()) t.vertex_map[v] = center[v];
  for (Edge e : h.edges()) {
    Edge ge = m.edge_map.at(e);
    Path p = segment_out(e.first, ge.first);
    Path s = segment_in(e.second, ge.second);
    p.insert(p.end(), s.begin(), s.end());
    t.edge_map[e] = p;
  }
  auto check = validate_topological_model(h, g, t);
  if (!check.ok()) throw std::logic_error("degree conversion produced an invalid model: " + check.violations.front());
  return t;
}

// ---------------------------------------------------------------------------
// s-embeddability and ultra-homogeneity
// ---------------------------------------------------------------------------

inline bool has_minor(const Digraph& h, const Digraph& g, MinorKind kind, Budget* budget = nullptr) {
  return find_model_unbounded(h, g, kind, budget).has_value();
}

/// True iff H ⪯ G^{|V(H)|}_e for some edge e of G.
inline bool is_s_embeddable(const Digraph& h, const Digraph& g, MinorKind kind, Budget* budget = nullptr) {
  int n = static_cast<int>(h.num_vertices());
  for (Edge e : g.edges())
    if (has_minor(h, subdivide_edge(g, e, n), kind, budget)) return true;
  return false;
}

struct UltraHomogeneity {
  bool ok = false;
  std::string reason;
};

inline UltraHomogeneity is_ultra_homogeneous(const Digraph& h, MinorKind kind, Budget* budget = nullptr) {
  auto bg = strong_components(h);
  const int m = static_cast<int>(bg.size());
  for (auto [ij, mult] : bg.arcs) {
    if (ij.second != ij.first + 1)
      return {false, "block graph is not a directed path: arc from component " + std::to_string(ij.first) +
                         " to component " + std::to_string(ij.second)};
    if (mult > 1)
      return {false, "parallel arcs: " + std::to_string(mult) + " edges from component " +
                         std::to_string(ij.first) + " to component " + std::to_string(ij.second)};
  }
  for (int i = 0; i + 1 < m; ++i)
    if (bg.multiplicity(i, i + 1) == 0)
      return {false, "block graph is not a directed path: components " + std::to_string(i) + " and " +
                         std::to_string(i + 1) + " are not linked"};
  std::vector<Digraph> comps;
  for (const auto& c : bg.components) comps.push_back(induced_subgraph(h, {c.begin(), c.end()}));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && !is_s_embeddable(comps[i], comps[j], kind, budget))
        return {false, "component " + std::to_string(i) + " is not s-embeddable into component " + std::to_string(j)};
  if (m >= 3) {
    size_t mid = bg.components[1].size();
    size_t ends = std::max(bg.components.front().size(), bg.components.back().size());
    for (int i = 1; i + 1 < m; ++i) {
      if (bg.components[i].size() != mid)
        return {false, "middle components differ in size"};
      if (bg.components[i].size() < ends)
        return {false, "middle component " + std::to_string(i) + " is smaller than an end component"};
    }
  }
  return {true, "ultra-homogeneous"};
}

}  // namespace epd
