#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>

#include "epd/ep_engine.hpp"
#include "epd/generators.hpp"
#include "epd/minors.hpp"

namespace epd {

/// Outcome of the necessary-condition scan for a vertex-cyclic pattern.
/// A failing pattern names the violated condition and a generator whose
/// instances admit no two disjoint models yet need large hitting sets.
struct Classification {
  bool candidate = false;
  std::string item;  // "degree", "block-path", "parallel-arcs", "s-embedding", "grid-embedding", "size-profile"
  std::string reason;
  std::string generator;
  std::function<Attachment(int)> family;
};

namespace detail {

inline Edge first_edge_between(const Digraph& h, const BlockGraph& bg, int a, int b) {
  for (auto [u, v] : h.edges())
    if (bg.component_of.at(u) == a && bg.component_of.at(v) == b) return {u, v};
  throw std::logic_error("no edge between components");
}

inline Edge component_edge_at(const Digraph& h, const BlockGraph& bg, int c, Vertex touch) {
  for (auto [u, v] : h.edges())
    if (bg.component_of.at(u) == c && bg.component_of.at(v) == c && (u == touch || v == touch)) return {u, v};
  throw std::logic_error("vertex has no edge inside its component");
}

inline Classification left_family(const Digraph& h, const BlockGraph& bg, int a, int b, std::string item,
                                  std::string reason) {
  Edge e = first_edge_between(h, bg, a, b);
  Edge e2 = component_edge_at(h, bg, b, e.second);
  return {false, std::move(item), std::move(reason), "left_acyclic_attachment",
          [h, a, b, e, e2](int n) { return left_acyclic_attachment(h, a, b, e, e2, n); }};
}

inline Classification right_family(const Digraph& h, const BlockGraph& bg, int a, int b, std::string item,
                                   std::string reason) {
  Edge e = first_edge_between(h, bg, a, b);
  Edge e1 = component_edge_at(h, bg, a, e.first);
  return {false, std::move(item), std::move(reason), "right_acyclic_attachment",
          [h, a, b, e, e1](int n) { return right_acyclic_attachment(h, a, b, e, e1, n); }};
}

inline bool reaches(const BlockGraph& bg, int a, int b) {
  std::vector<char> seen(bg.size(), 0);
  std::vector<int> todo{a};
  seen[a] = 1;
  while (!todo.empty()) {
    int x = todo.back();
    todo.pop_back();
    if (x == b) return true;
    for (auto [ij, _] : bg.arcs)
      if (ij.first == x && !seen[ij.second]) {
        seen[ij.second] = 1;
        todo.push_back(ij.second);
      }
  }
  return false;
}

}  // namespace detail

/// Scans, in order: a vertex of total degree above 3 (topological kind
/// only), a block graph that is not a directed path, parallel arcs between
/// consecutive components, a component pair that is not s-embeddable, a
/// component outside every configured grid (or wall), and three consecutive
/// components whose middle one is smaller than a neighbour.
inline Classification classify_vertex_cyclic(const Digraph& h, MinorKind kind, const EPConfig& cfg = {}) {
  if (h.empty() || !is_weakly_connected(h)) throw DomainError("pattern must be non-empty and weakly connected");
  if (!is_vertex_cyclic(h)) throw DomainError("pattern must be vertex cyclic");
  auto bg = strong_components(h);
  const int m = static_cast<int>(bg.size());
  auto name = [](int c) { return "component " + std::to_string(c); };
  auto comps_edges = [&](int c) {
    const auto& vs = bg.components[c];
    return induced_subgraph(h, {vs.begin(), vs.end()}).num_edges();
  };

  if (kind == MinorKind::Topological)
    for (Vertex v : h.vertices())
      if (degrees(h, v).total > 3) {
        Edge e = *h.edges().begin();
        return {false, "degree", "vertex " + std::to_string(v) + " has total degree " +
                                     std::to_string(degrees(h, v).total),
                "attach_to_wall", [h, e](int k) { return attach_to_wall(h, e, k); }};
      }

  // The block graph must be a directed path.
  std::vector<std::vector<int>> succ(m), pred(m);
  for (auto [ij, _] : bg.arcs) {
    succ[ij.first].push_back(ij.second);
    pred[ij.second].push_back(ij.first);
  }
  auto smallest = [&](const std::vector<int>& cands) {
    return *std::min_element(cands.begin(), cands.end(), [&](int a, int b) {
      auto ka = std::make_pair(comps_edges(a), bg.components[a].size());
      auto kb = std::make_pair(comps_edges(b), bg.components[b].size());
      return ka != kb ? ka < kb : a < b;
    });
  };
  for (int i = 0; i < m; ++i)
    if (succ[i].size() > 1) {
      // Smallest terminal component below i, entered along the last arc of a path.
      std::vector<int> below;
      for (int j = i + 1; j < m; ++j)
        if (succ[j].empty() && detail::reaches(bg, i, j)) below.push_back(j);
      int t = smallest(below);
      int sc = -1;
      for (int p : pred[t])
        if (p == i || detail::reaches(bg, i, p)) sc = p;
      return detail::left_family(h, bg, sc, t, "block-path",
                                 name(i) + " has " + std::to_string(succ[i].size()) + " successor components");
    }
  for (int i = 0; i < m; ++i)
    if (pred[i].size() > 1) {
      std::vector<int> above;
      for (int j = 0; j < i; ++j)
        if (pred[j].empty() && detail::reaches(bg, j, i)) above.push_back(j);
      int t = smallest(above);
      int sc = -1;
      for (int q : succ[t])
        if (q == i || detail::reaches(bg, q, i)) {
          sc = q;
          break;
        }
      return detail::right_family(h, bg, t, sc, "block-path",
                                  name(i) + " has " + std::to_string(pred[i].size()) + " predecessor components");
    }

  // Consecutive components are joined by a single edge.
  for (auto [ij, mult] : bg.arcs)
    if (mult > 1) {
      std::vector<Edge> es;
      for (auto [u, v] : h.edges())
        if (bg.component_of.at(u) == ij.first && bg.component_of.at(v) == ij.second) es.emplace_back(u, v);
      Edge e1 = es[0], e2 = es[1];
      return {false, "parallel-arcs",
              std::to_string(mult) + " edges from " + name(ij.first) + " to " + name(ij.second),
              "two_edge_attachment", [h, e1, e2](int k) { return two_edge_attachment(h, e1, e2, k); }};
    }

  std::vector<Digraph> comps;
  for (const auto& c : bg.components) comps.push_back(induced_subgraph(h, {c.begin(), c.end()}));

  // Every component s-embeds into every other. The witness uses
  // the latest component taking part in a failing pair.
  std::vector<std::pair<int, int>> bad;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && !is_s_embeddable(comps[i], comps[j], kind, cfg.budget)) bad.emplace_back(i, j);
  if (!bad.empty()) {
    int last = 0;
    for (auto [i, j] : bad) last = std::max({last, i, j});
    auto it = std::find_if(bad.begin(), bad.end(), [&](auto p) { return p.second == last; });
    if (it != bad.end() && last > 0) {
      std::string why = name(it->first) + " is not s-embeddable into " + name(last);
      return detail::left_family(h, bg, last - 1, last, "s-embedding", why);
    }
    int first = m;
    for (auto [i, j] : bad) first = std::min({first, i, j});
    auto jt = std::find_if(bad.begin(), bad.end(), [&](auto p) { return p.second == first; });
    if (jt == bad.end()) jt = bad.begin();
    std::string why = name(jt->first) + " is not s-embeddable into " + name(jt->second);
    return detail::right_family(h, bg, first, first + 1, "s-embedding", why);
  }

  // Every component embeds into a grid (wall for topological).
  for (int i = 0; i < m; ++i) {
    bool fits = false;
    for (int c = 1; c <= cfg.max_grid_order && !fits; ++c) {
      Grid g = kind == MinorKind::Topological ? cylindrical_wall(c) : cylindrical_grid(c);
      fits = has_minor(comps[i], g.graph, kind, cfg.budget);
    }
    if (!fits) {
      Edge e = *comps[i].edges().begin();
      return {false, "grid-embedding",
              name(i) + " embeds in no " + std::string(kind == MinorKind::Topological ? "wall" : "grid") +
                  " of order <= " + std::to_string(cfg.max_grid_order),
              kind == MinorKind::Topological ? "attach_to_wall" : "attach_to_grid",
              [h, e, kind](int k) {
                return kind == MinorKind::Topological ? attach_to_wall(h, e, k) : attach_to_grid(h, e, k);
              }};
    }
  }

  // Middle component at least as large as its neighbours.
  for (int i = 0; i + 2 < m; ++i) {
    size_t a = comps[i].num_vertices(), b = comps[i + 1].num_vertices(), c = comps[i + 2].num_vertices();
    if (b < a || b < c) {
      Edge e1 = detail::first_edge_between(h, bg, i, i + 1), e2 = detail::first_edge_between(h, bg, i + 1, i + 2);
      return {false, "size-profile",
              "component sizes " + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) +
                  " along the block path",
              "three_component_attachment", [h, e1, e2](int k) { return three_component_attachment(h, e1, e2, k); }};
    }
  }

  Classification out;
  out.candidate = true;
  out.reason = "all necessary conditions hold";
  return out;
}

}  // namespace epd
