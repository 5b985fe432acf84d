#pragma once

#include <map>
#include <string>
#include <vector>

#include "epd/digraph.hpp"

namespace epd {

/// Coordinates of a generated grid. For cylindrical grids and walls
/// `cycles[i-1]` is C_i and `paths[j-1]` is P_j; for acyclic grids `paths` are
/// the rows P_i and `columns` the columns Q_j.
struct GridLabeling {
  std::map<std::string, Vertex> coordinates;
  std::vector<std::vector<Vertex>> cycles;
  std::vector<std::vector<Vertex>> paths;
  std::vector<std::vector<Vertex>> columns;

  Vertex at(const std::string& label) const {
    auto it = coordinates.find(label);
    if (it == coordinates.end()) throw DomainError("no grid vertex labelled " + label);
    return it->second;
  }
};

struct Grid {
  Digraph graph;
  GridLabeling labeling;
};

inline std::string grid_label(char prefix, int i, int j) {
  return std::string(1, prefix) + "_" + std::to_string(i) + "_" + std::to_string(j);
}

namespace detail {

inline void check_order(int k) {
  if (k < 1) throw DomainError("order must be at least 1, got " + std::to_string(k));
}

}  // namespace detail

/// Cylindrical grid G_k: x_{i,j} has id (i-1)*2k + (j-1).
inline Grid cylindrical_grid(int k) {
  detail::check_order(k);
  const int w = 2 * k;
  auto id = [w](int i, int j) { return static_cast<Vertex>((i - 1) * w + (j - 1)); };
  Grid out;
  auto& g = out.graph;
  auto& lab = out.labeling;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= w; ++j) {
      g.add_vertex(id(i, j), grid_label('x', i, j));
      lab.coordinates[grid_label('x', i, j)] = id(i, j);
    }
  for (int i = 1; i <= k; ++i) {
    std::vector<Vertex> c;
    for (int j = 1; j <= w; ++j) {
      g.add_edge(id(i, j), id(i, j % w + 1));
      c.push_back(id(i, j));
    }
    lab.cycles.push_back(c);
  }
  for (int j = 1; j <= w; ++j) {
    std::vector<Vertex> p;
    for (int s = 1; s <= k; ++s) p.push_back(id(j % 2 == 1 ? s : k + 1 - s, j));
    for (size_t s = 0; s + 1 < p.size(); ++s) g.add_edge(p[s], p[s + 1]);
    lab.paths.push_back(p);
  }
  return out;
}

/// Cylindrical wall W_k: every total-degree-4 vertex x_{i,j} becomes
/// x_i_j_t (same id, all in-edges) -> x_i_j_h (fresh id, all out-edges).
inline Grid cylindrical_wall(int k) {
  Grid grid = cylindrical_grid(k);
  Grid out;
  auto& g = out.graph;
  auto& lab = out.labeling;
  const Digraph& gk = grid.graph;
  std::map<Vertex, Vertex> head;  // split vertex -> its head copy
  Vertex fresh = gk.next_free_id();
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= 2 * k; ++j) {
      std::string name = grid_label('x', i, j);
      Vertex v = grid.labeling.at(name);
      if (degrees(gk, v).total == 4) {
        g.add_vertex(v, name + "_t");
        g.add_vertex(fresh, name + "_h");
        lab.coordinates[name] = v;
        lab.coordinates[name + "_t"] = v;
        lab.coordinates[name + "_h"] = fresh;
        head[v] = fresh++;
      } else {
        g.add_vertex(v, name);
        lab.coordinates[name] = v;
      }
    }
  auto tail_of = [&](Vertex v) {
    auto it = head.find(v);
    return it == head.end() ? v : it->second;
  };
  for (auto [t, h] : head) g.add_edge(t, h);
  for (auto [u, v] : gk.edges()) g.add_edge(tail_of(u), v);
  auto expand = [&](const std::vector<Vertex>& seq) {
    std::vector<Vertex> r;
    for (Vertex v : seq) {
      r.push_back(v);
      if (head.count(v)) r.push_back(head[v]);
    }
    return r;
  };
  for (const auto& c : grid.labeling.cycles) lab.cycles.push_back(expand(c));
  for (const auto& p : grid.labeling.paths) lab.paths.push_back(expand(p));
  return out;
}

/// Acyclic grid A_k: v_{i,j} has id (i-1)*k + (j-1); rows run left to right,
/// columns top to bottom.
inline Grid acyclic_grid(int k) {
  detail::check_order(k);
  auto id = [k](int i, int j) { return static_cast<Vertex>((i - 1) * k + (j - 1)); };
  Grid out;
  auto& g = out.graph;
  auto& lab = out.labeling;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) {
      g.add_vertex(id(i, j), grid_label('v', i, j));
      lab.coordinates[grid_label('v', i, j)] = id(i, j);
    }
  for (int i = 1; i <= k; ++i) {
    std::vector<Vertex> row, col;
    for (int j = 1; j <= k; ++j) {
      row.push_back(id(i, j));
      col.push_back(id(j, i));
      if (j < k) {
        g.add_edge(id(i, j), id(i, j + 1));
        g.add_edge(id(j, i), id(j + 1, i));
      }
    }
    lab.paths.push_back(row);
    lab.columns.push_back(col);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Attachments
// ---------------------------------------------------------------------------

/// A substrate grid wired to disjoint modified copies of H. Copy i's vertices
/// are labelled "H{i}::<label in H>"; `copies[i-1]` maps H to copy i.
struct Attachment {
  Digraph graph;
  GridLabeling grid;
  std::vector<std::map<Vertex, Vertex>> copies;
  std::vector<Edge> deleted;
  std::vector<Edge> added;
};

namespace detail {

class AttachmentBuilder {
 public:
  explicit AttachmentBuilder(Grid grid) {
    a_.graph = std::move(grid.graph);
    a_.grid = std::move(grid.labeling);
  }

  const std::map<Vertex, Vertex>& add_copy(const Digraph& h) {
    int idx = static_cast<int>(a_.copies.size()) + 1;
    Vertex next = a_.graph.next_free_id();
    std::map<Vertex, Vertex> m;
    for (Vertex v : h.vertices()) {
      m[v] = next;
      a_.graph.add_vertex(next++, "H" + std::to_string(idx) + "::" + h.label(v));
    }
    for (auto [u, v] : h.edges()) a_.graph.add_edge(m[u], m[v]);
    a_.copies.push_back(std::move(m));
    return a_.copies.back();
  }

  Vertex grid(const std::string& label) const { return resolve(a_.grid.at(label)); }

  void remove(Edge e) {
    e = {resolve(e.first), resolve(e.second)};
    if (!a_.graph.has_edge(e.first, e.second)) throw std::logic_error("attachment deletes a missing edge " + edge_str(e));
    a_.graph.remove_edge(e.first, e.second);
    a_.deleted.push_back(e);
  }

  void add(Edge e) {
    e = {resolve(e.first), resolve(e.second)};
    if (e.first == e.second) return;
    a_.graph.add_edge(e.first, e.second);
    a_.added.push_back(e);
  }

  /// Merges `from` into `into`; edges that would become loops vanish.
  void identify(Vertex from, Vertex into) {
    from = resolve(from);
    into = resolve(into);
    if (from == into) return;
    auto outs = a_.graph.out_neighbors(from);
    auto ins = a_.graph.in_neighbors(from);
    a_.graph.remove_vertex(from);
    for (Vertex w : outs)
      if (w != into) a_.graph.add_edge(into, w);
    for (Vertex w : ins)
      if (w != into) a_.graph.add_edge(w, into);
    alias_[from] = into;
  }

  Attachment finish() && {
    auto fix = [&](std::vector<Vertex>& seq) {
      for (Vertex& v : seq) v = resolve(v);
    };
    for (auto& [_, v] : a_.grid.coordinates) v = resolve(v);
    for (auto* group : {&a_.grid.cycles, &a_.grid.paths, &a_.grid.columns})
      for (auto& seq : *group) fix(seq);
    for (auto& m : a_.copies)
      for (auto& [_, v] : m) v = resolve(v);
    for (auto& e : a_.deleted) e = {resolve(e.first), resolve(e.second)};
    for (auto& e : a_.added) e = {resolve(e.first), resolve(e.second)};
    return std::move(a_);
  }

 private:
  Vertex resolve(Vertex v) const {
    for (auto it = alias_.find(v); it != alias_.end(); it = alias_.find(v)) v = it->second;
    return v;
  }

  Attachment a_;
  std::map<Vertex, Vertex> alias_;
};

inline void require_edge(const Digraph& h, Edge e, const char* what) {
  if (!h.has_edge(e.first, e.second)) throw DomainError(std::string(what) + " " + edge_str(e) + " is not an edge of H");
}

inline Attachment attach_cylindrical(const Digraph& h, Edge e, int k, Grid substrate) {
  require_edge(h, e, "attachment edge");
  AttachmentBuilder b(std::move(substrate));
  for (int i = 1; i <= k; ++i) {
    const auto& c = b.add_copy(h);
    Vertex left = b.grid(grid_label('x', k, 2 * i - 1));
    Vertex right = b.grid(grid_label('x', k, 2 * i));
    b.remove({c.at(e.first), c.at(e.second)});
    b.remove({left, right});
    b.add({c.at(e.first), right});
    b.add({left, c.at(e.second)});
  }
  return std::move(b).finish();
}

}  // namespace detail

/// G_k^{H,e}.
inline Attachment attach_to_grid(const Digraph& h, Edge e, int k) {
  return detail::attach_cylindrical(h, e, k, cylindrical_grid(k));
}

/// W_k^{H,e}; the outer cycle of W_k is never split, so the wiring matches G_k^{H,e}.
inline Attachment attach_to_wall(const Digraph& h, Edge e, int k) {
  return detail::attach_cylindrical(h, e, k, cylindrical_wall(k));
}

namespace detail {

struct ComponentCheck {
  BlockGraph bg;
  explicit ComponentCheck(const Digraph& h) : bg(strong_components(h)) {}

  int of(Vertex v) const { return bg.component_of.at(v); }
  void require_index(int c, const char* what) const {
    if (c < 0 || c >= static_cast<int>(bg.size()))
      throw DomainError(std::string(what) + " index " + std::to_string(c) + " out of range");
  }
  void require_nontrivial(int c, const char* what) const {
    if (bg.components[c].size() < 2) throw DomainError(std::string(what) + " is a trivial strong component");
  }
};

/// Shared checks of both acyclic attachments; `inner` lies in component `side`
/// and must touch `touch`.
inline void check_acyclic_attachment(const Digraph& h, int c1, int c2, Edge e, Edge inner, int side, Vertex touch) {
  ComponentCheck cc(h);
  cc.require_index(c1, "C1");
  cc.require_index(c2, "C2");
  if (c1 == c2) throw DomainError("C1 and C2 must be distinct components");
  cc.require_nontrivial(c1, "C1");
  cc.require_nontrivial(c2, "C2");
  require_edge(h, e, "edge e");
  require_edge(h, inner, "component edge");
  if (cc.of(e.first) != c1 || cc.of(e.second) != c2)
    throw DomainError("edge e " + edge_str(e) + " does not link C1 to C2");
  if (cc.of(inner.first) != side || cc.of(inner.second) != side)
    throw DomainError("edge " + edge_str(inner) + " is not inside the required component");
  if (inner.first != touch && inner.second != touch)
    throw DomainError("edge " + edge_str(inner) + " is not incident to vertex " + std::to_string(touch));
}

}  // namespace detail

/// Left acyclic attachment of order n: per copy i, e^i is rerouted as
/// (u^i, v_{i,1}) and the column Q_i replaces e2^i = (x, y) with v_{1,i} = x,
/// v_{n,i} = y.
inline Attachment left_acyclic_attachment(const Digraph& h, int c1, int c2, Edge e, Edge e2, int n) {
  detail::check_order(n);
  detail::check_acyclic_attachment(h, c1, c2, e, e2, c2, e.second);
  detail::AttachmentBuilder b(acyclic_grid(n));
  for (int i = 1; i <= n; ++i) {
    const auto& c = b.add_copy(h);
    Vertex u = c.at(e.first), x = c.at(e2.first), y = c.at(e2.second);
    b.remove({u, c.at(e.second)});
    b.remove({x, y});
    b.add({u, b.grid(grid_label('v', i, 1))});
    b.identify(b.grid(grid_label('v', 1, i)), x);
    b.identify(b.grid(grid_label('v', n, i)), y);
  }
  return std::move(b).finish();
}

/// Right acyclic attachment of order n: per copy i, e^i is rerouted as
/// (v_{i,n}, v^i) and the column Q_i replaces e1^i = (x, y).
inline Attachment right_acyclic_attachment(const Digraph& h, int c1, int c2, Edge e, Edge e1, int n) {
  detail::check_order(n);
  detail::check_acyclic_attachment(h, c1, c2, e, e1, c1, e.first);
  detail::AttachmentBuilder b(acyclic_grid(n));
  for (int i = 1; i <= n; ++i) {
    const auto& c = b.add_copy(h);
    Vertex v = c.at(e.second), x = c.at(e1.first), y = c.at(e1.second);
    b.remove({c.at(e.first), v});
    b.remove({x, y});
    b.add({b.grid(grid_label('v', i, n)), v});
    b.identify(b.grid(grid_label('v', 1, i)), x);
    b.identify(b.grid(grid_label('v', n, i)), y);
  }
  return std::move(b).finish();
}

/// Two parallel component edges e1 = (s1, t1), e2 = (s2, t2) rerouted through
/// A_{2k}: s1 enters row 2i-1 and t1 is fed from v_{2i,2k}; s2 enters row 2i
/// and t2 is fed from the foot v_{2k,2i-1} of column 2i-1.
inline Attachment two_edge_attachment(const Digraph& h, Edge e1, Edge e2, int k) {
  detail::check_order(k);
  detail::require_edge(h, e1, "edge e1");
  detail::require_edge(h, e2, "edge e2");
  if (e1 == e2) throw DomainError("e1 and e2 must be distinct");
  detail::ComponentCheck cc(h);
  int c = cc.of(e1.first), c2 = cc.of(e1.second);
  if (c == c2) throw DomainError("edge e1 " + edge_str(e1) + " lies inside one component");
  if (cc.of(e2.first) != c || cc.of(e2.second) != c2)
    throw DomainError("edges " + edge_str(e1) + " and " + edge_str(e2) + " do not link the same pair of components");
  const int m = 2 * k;
  detail::AttachmentBuilder b(acyclic_grid(m));
  auto v = [&](int i, int j) { return b.grid(grid_label('v', i, j)); };
  for (int i = 1; i <= k; ++i) {
    const auto& cp = b.add_copy(h);
    Vertex s1 = cp.at(e1.first), t1 = cp.at(e1.second), s2 = cp.at(e2.first), t2 = cp.at(e2.second);
    b.remove({s1, t1});
    b.remove({s2, t2});
    b.add({s1, v(2 * i - 1, 1)});
    b.add({s2, v(2 * i, 1)});
    b.add({v(2 * i, m), t1});
    b.add({v(m, 2 * i - 1), t2});
  }
  return std::move(b).finish();
}

/// Chain C1 -e1-> C2 -e2-> C3 rerouted through A_{2k}: e1 = (u, v) via row
/// 2i-1, e2 = (x, y) via row 2i and column 2i-1.
inline Attachment three_component_attachment(const Digraph& h, Edge e1, Edge e2, int k) {
  detail::check_order(k);
  detail::require_edge(h, e1, "edge e1");
  detail::require_edge(h, e2, "edge e2");
  detail::ComponentCheck cc(h);
  int c1 = cc.of(e1.first), c2 = cc.of(e1.second), c3 = cc.of(e2.second);
  if (cc.of(e2.first) != c2) throw DomainError("e2 " + edge_str(e2) + " does not leave the head component of e1");
  if (c1 == c2 || c2 == c3 || c1 == c3) throw DomainError("e1 and e2 must join three distinct components");
  size_t n1 = cc.bg.components[c1].size(), n2 = cc.bg.components[c2].size(), n3 = cc.bg.components[c3].size();
  if (!(n2 < n3 || n2 < n1))
    throw DomainError("middle component has " + std::to_string(n2) + " vertices; it must be smaller than C1 (" +
                      std::to_string(n1) + ") or C3 (" + std::to_string(n3) + ")");
  const int m = 2 * k;
  detail::AttachmentBuilder b(acyclic_grid(m));
  auto v = [&](int i, int j) { return b.grid(grid_label('v', i, j)); };
  for (int i = 1; i <= k; ++i) {
    const auto& cp = b.add_copy(h);
    Vertex u = cp.at(e1.first), w = cp.at(e1.second), x = cp.at(e2.first), y = cp.at(e2.second);
    b.remove({u, w});
    b.remove({x, y});
    b.add({u, v(2 * i - 1, 1)});
    b.add({v(m, 2 * i - 1), y});
    b.add({v(2 * i - 1, m), w});
    b.add({x, v(2 * i, 1)});
  }
  return std::move(b).finish();
}

}  // namespace epd
