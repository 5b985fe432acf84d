#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "epd/core.hpp"

namespace epd {

/// Finite simple digraph over opaque integer vertex ids.
///
/// Loops are rejected and parallel edges collapse, so every value of this type
/// is a simple digraph. Optional string labels ride along as a side map and
/// never influence structure.
class Digraph {
 public:
  Digraph() = default;

  void add_vertex(Vertex v) { adj_.try_emplace(v); }
  void add_vertex(Vertex v, std::string label) {
    adj_.try_emplace(v);
    labels_[v] = std::move(label);
  }

  void add_edge(Vertex u, Vertex v) {
    if (u == v) throw DomainError("loop at vertex " + std::to_string(u));
    auto iu = adj_.find(u);
    auto iv = adj_.find(v);
    if (iu == adj_.end() || iv == adj_.end())
      throw DomainError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                        ") has an endpoint outside the vertex set");
    if (iu->second.out.insert(v).second) {
      iv->second.in.insert(u);
      ++num_edges_;
    }
  }

  void remove_edge(Vertex u, Vertex v) {
    auto iu = adj_.find(u);
    if (iu == adj_.end() || !iu->second.out.erase(v)) return;
    adj_[v].in.erase(u);
    --num_edges_;
  }

  void remove_vertex(Vertex v) {
    auto it = adj_.find(v);
    if (it == adj_.end()) return;
    for (Vertex w : it->second.out) adj_[w].in.erase(v);
    for (Vertex w : it->second.in) adj_[w].out.erase(v);
    num_edges_ -= it->second.out.size() + it->second.in.size();
    adj_.erase(it);
    labels_.erase(v);
  }

  void set_label(Vertex v, std::string label) {
    if (!has_vertex(v)) throw DomainError("unknown vertex " + std::to_string(v));
    labels_[v] = std::move(label);
  }

  bool has_vertex(Vertex v) const { return adj_.count(v) != 0; }
  bool has_edge(Vertex u, Vertex v) const {
    auto it = adj_.find(u);
    return it != adj_.end() && it->second.out.count(v) != 0;
  }

  size_t num_vertices() const { return adj_.size(); }
  size_t num_edges() const { return num_edges_; }
  bool empty() const { return adj_.empty(); }

  std::vector<Vertex> vertices() const {
    std::vector<Vertex> out;
    out.reserve(adj_.size());
    for (const auto& [v, _] : adj_) out.push_back(v);
    return out;
  }

  /// Edges in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges_);
    for (const auto& [u, a] : adj_)
      for (Vertex v : a.out) out.emplace_back(u, v);
    return out;
  }

  const std::set<Vertex>& out_neighbors(Vertex v) const { return at(v).out; }
  const std::set<Vertex>& in_neighbors(Vertex v) const { return at(v).in; }

  const std::map<Vertex, std::string>& labels() const { return labels_; }
  std::string label(Vertex v) const {
    auto it = labels_.find(v);
    return it == labels_.end() ? std::to_string(v) : it->second;
  }
  bool has_label(Vertex v) const { return labels_.count(v) != 0; }

  /// Smallest id strictly greater than every vertex id (0 for the empty graph).
  Vertex next_free_id() const { return adj_.empty() ? 0 : adj_.rbegin()->first + 1; }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.vertices() == b.vertices() && a.edges() == b.edges();
  }

 private:
  struct Adjacency {
    std::set<Vertex> out;
    std::set<Vertex> in;
  };

  const Adjacency& at(Vertex v) const {
    auto it = adj_.find(v);
    if (it == adj_.end()) throw DomainError("unknown vertex " + std::to_string(v));
    return it->second;
  }

  std::map<Vertex, Adjacency> adj_;
  std::map<Vertex, std::string> labels_;
  size_t num_edges_ = 0;
};

inline std::string edge_str(Edge e) {
  return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
}

/// Builds a digraph on vertices 0..n-1 from an edge list.
inline Digraph make_digraph(int n, const std::vector<Edge>& edges) {
  Digraph g;
  for (int i = 0; i < n; ++i) g.add_vertex(i);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

/// Directed cycle 0 -> 1 -> ... -> n-1 -> 0 (n >= 2).
inline Digraph directed_cycle(int n, Vertex first_id = 0) {
  if (n < 2) throw DomainError("a directed cycle needs at least two vertices");
  Digraph g;
  for (int i = 0; i < n; ++i) g.add_vertex(first_id + i);
  for (int i = 0; i < n; ++i) g.add_edge(first_id + i, first_id + (i + 1) % n);
  return g;
}

/// Directed path 0 -> 1 -> ... -> n-1.
inline Digraph directed_path(int n) {
  Digraph g;
  for (int i = 0; i < n; ++i) g.add_vertex(i);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

// ---------------------------------------------------------------------------
// Strong components and the block graph
// ---------------------------------------------------------------------------

/// Condensation of a digraph. Components are listed in a topological order of
/// the condensation; among available components the one holding the smallest
/// vertex id comes first. Arc multiplicities count the original edges.
struct BlockGraph {
  std::vector<std::vector<Vertex>> components;
  std::map<std::pair<int, int>, int> arcs;
  std::map<Vertex, int> component_of;

  size_t size() const { return components.size(); }
  int multiplicity(int i, int j) const {
    auto it = arcs.find({i, j});
    return it == arcs.end() ? 0 : it->second;
  }
};

inline BlockGraph strong_components(const Digraph& g) {
  // Iterative Tarjan.
  std::vector<Vertex> verts = g.vertices();
  std::unordered_map<Vertex, int> index, low;
  std::unordered_map<Vertex, bool> on_stack;
  std::vector<Vertex> stack;
  std::vector<std::vector<Vertex>> raw;
  int counter = 0;

  for (Vertex root : verts) {
    if (index.count(root)) continue;
    std::vector<std::pair<Vertex, std::set<Vertex>::const_iterator>> call;
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    call.emplace_back(root, g.out_neighbors(root).begin());
    while (!call.empty()) {
      auto& [v, it] = call.back();
      if (it != g.out_neighbors(v).end()) {
        Vertex w = *it++;
        if (!index.count(w)) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, g.out_neighbors(w).begin());
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      } else {
        Vertex done = v;
        call.pop_back();
        if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
        if (low[done] == index[done]) {
          std::vector<Vertex> comp;
          Vertex w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp.push_back(w);
          } while (w != done);
          std::sort(comp.begin(), comp.end());
          raw.push_back(std::move(comp));
        }
      }
    }
  }

  std::unordered_map<Vertex, int> raw_of;
  for (int i = 0; i < static_cast<int>(raw.size()); ++i)
    for (Vertex v : raw[i]) raw_of[v] = i;

  // Kahn over the condensation, smallest-vertex tie break.
  const int m = static_cast<int>(raw.size());
  std::vector<std::set<int>> succ(m);
  std::vector<int> indeg(m, 0);
  for (auto [u, v] : g.edges()) {
    int a = raw_of[u], b = raw_of[v];
    if (a != b && succ[a].insert(b).second) ++indeg[b];
  }
  using Item = std::pair<Vertex, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> ready;
  for (int i = 0; i < m; ++i)
    if (indeg[i] == 0) ready.emplace(raw[i].front(), i);
  std::vector<int> order;
  while (!ready.empty()) {
    int i = ready.top().second;
    ready.pop();
    order.push_back(i);
    for (int j : succ[i])
      if (--indeg[j] == 0) ready.emplace(raw[j].front(), j);
  }

  BlockGraph bg;
  std::vector<int> pos(m);
  for (int k = 0; k < m; ++k) {
    pos[order[k]] = k;
    bg.components.push_back(raw[order[k]]);
  }
  for (int k = 0; k < m; ++k)
    for (Vertex v : bg.components[k]) bg.component_of[v] = k;
  for (auto [u, v] : g.edges()) {
    int a = bg.component_of[u], b = bg.component_of[v];
    if (a != b) ++bg.arcs[{a, b}];
  }
  return bg;
}

/// True iff every vertex lies on a directed cycle (vacuously true when empty).
inline bool is_vertex_cyclic(const Digraph& g) {
  for (const auto& c : strong_components(g).components)
    if (c.size() == 1) return false;
  return true;
}

inline bool is_strongly_connected(const Digraph& g) {
  return g.num_vertices() <= 1 || strong_components(g).size() == 1;
}

/// Underlying undirected connectivity; the empty graph counts as connected.
inline bool is_weakly_connected(const Digraph& g) {
  if (g.empty()) return true;
  std::set<Vertex> seen;
  std::vector<Vertex> todo{g.vertices().front()};
  seen.insert(todo.front());
  while (!todo.empty()) {
    Vertex v = todo.back();
    todo.pop_back();
    for (const auto* nb : {&g.out_neighbors(v), &g.in_neighbors(v)})
      for (Vertex w : *nb)
        if (seen.insert(w).second) todo.push_back(w);
  }
  return seen.size() == g.num_vertices();
}

inline bool is_acyclic(const Digraph& g) {
  auto bg = strong_components(g);
  return bg.size() == g.num_vertices();
}

struct Degrees {
  size_t in = 0;
  size_t out = 0;
  size_t total = 0;
  friend bool operator==(const Degrees&, const Degrees&) = default;
};

inline Degrees degrees(const Digraph& g, Vertex v) {
  size_t in = g.in_neighbors(v).size(), out = g.out_neighbors(v).size();
  return {in, out, in + out};
}

inline size_t max_total_degree(const Digraph& g) {
  size_t best = 0;
  for (Vertex v : g.vertices()) best = std::max(best, degrees(g, v).total);
  return best;
}

/// Vertices reachable from `sources` (inclusive) along directed edges.
inline std::set<Vertex> reachable_from(const Digraph& g, const std::set<Vertex>& sources,
                                       bool backwards = false) {
  std::set<Vertex> seen(sources.begin(), sources.end());
  std::vector<Vertex> todo(sources.begin(), sources.end());
  while (!todo.empty()) {
    Vertex v = todo.back();
    todo.pop_back();
    for (Vertex w : backwards ? g.in_neighbors(v) : g.out_neighbors(v))
      if (seen.insert(w).second) todo.push_back(w);
  }
  return seen;
}

// ---------------------------------------------------------------------------
// Editing operations (all return new graphs)
// ---------------------------------------------------------------------------

/// Replaces e = (u,v) by the path u -> s_1 -> ... -> s_n -> v with n fresh
/// vertices. n = 0 returns g unchanged.
inline Digraph subdivide_edge(const Digraph& g, Edge e, int n) {
  if (n < 0) throw DomainError("subdivision count must be non-negative");
  if (!g.has_edge(e.first, e.second))
    throw DomainError("unknown edge (" + std::to_string(e.first) + "," +
                      std::to_string(e.second) + ")");
  Digraph out = g;
  if (n == 0) return out;
  out.remove_edge(e.first, e.second);
  Vertex prev = e.first;
  Vertex next = out.next_free_id();
  for (int i = 0; i < n; ++i) {
    out.add_vertex(next);
    out.add_edge(prev, next);
    prev = next++;
  }
  out.add_edge(prev, e.second);
  return out;
}

inline Digraph delete_vertices(const Digraph& g, const std::set<Vertex>& s) {
  for (Vertex v : s)
    if (!g.has_vertex(v)) throw DomainError("unknown vertex " + std::to_string(v));
  Digraph out = g;
  for (Vertex v : s) out.remove_vertex(v);
  return out;
}

inline Digraph induced_subgraph(const Digraph& g, const std::set<Vertex>& s) {
  Digraph out;
  for (Vertex v : s) {
    if (!g.has_vertex(v)) throw DomainError("unknown vertex " + std::to_string(v));
    if (g.has_label(v))
      out.add_vertex(v, g.label(v));
    else
      out.add_vertex(v);
  }
  for (Vertex v : s)
    for (Vertex w : g.out_neighbors(v))
      if (s.count(w)) out.add_edge(v, w);
  return out;
}

inline Digraph reversed(const Digraph& g) {
  Digraph out;
  for (Vertex v : g.vertices()) {
    if (g.has_label(v))
      out.add_vertex(v, g.label(v));
    else
      out.add_vertex(v);
  }
  for (auto [u, v] : g.edges()) out.add_edge(v, u);
  return out;
}

/// Disjoint union; vertices of `b` are shifted past every id of `a`.
/// Returns the shifted graph and the offset applied to `b`.
inline std::pair<Digraph, Vertex> disjoint_union(const Digraph& a, const Digraph& b) {
  Digraph out = a;
  Vertex offset = a.next_free_id();
  if (!b.empty()) offset -= std::min<Vertex>(0, b.vertices().front());
  for (Vertex v : b.vertices()) {
    if (b.has_label(v))
      out.add_vertex(v + offset, b.label(v));
    else
      out.add_vertex(v + offset);
  }
  for (auto [u, v] : b.edges()) out.add_edge(u + offset, v + offset);
  return {out, offset};
}

inline bool is_butterfly_contractible(const Digraph& g, Edge e) {
  return g.has_edge(e.first, e.second) &&
         (g.out_neighbors(e.first).size() == 1 || g.in_neighbors(e.second).size() == 1);
}

/// Butterfly-contracts e = (u,v) into a fresh vertex inheriting the
/// neighbours of u and v. Parallel edges merge; the loop a digon would
/// produce is dropped.
inline Digraph butterfly_contract(const Digraph& g, Edge e, Vertex* fresh_out = nullptr) {
  auto [u, v] = e;
  if (!g.has_edge(u, v))
    throw DomainError("unknown edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  if (!is_butterfly_contractible(g, e))
    throw DomainError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                      ") is not butterfly-contractible: tail has out-degree " +
                      std::to_string(g.out_neighbors(u).size()) + " and head has in-degree " +
                      std::to_string(g.in_neighbors(v).size()));
  Digraph out = g;
  Vertex x = out.next_free_id();
  out.add_vertex(x);
  for (Vertex w : {u, v}) {
    for (Vertex a : g.in_neighbors(w))
      if (a != u && a != v) out.add_edge(a, x);
    for (Vertex b : g.out_neighbors(w))
      if (b != u && b != v) out.add_edge(x, b);
  }
  out.remove_vertex(u);
  out.remove_vertex(v);
  if (fresh_out) *fresh_out = x;
  return out;
}

// ---------------------------------------------------------------------------
// Dense view used by the search kernels
// ---------------------------------------------------------------------------

/// Index-compressed copy of a digraph (indices follow ascending vertex id).
struct DenseGraph {
  int n = 0;
  std::vector<Vertex> ids;
  std::unordered_map<Vertex, int> index;
  std::vector<VertexSet> out, in;
  std::vector<std::vector<int>> out_list, in_list;

  DenseGraph() = default;
  explicit DenseGraph(const Digraph& g) {
    ids = g.vertices();
    n = static_cast<int>(ids.size());
    if (n > VertexSet::kCapacity)
      throw DomainError("graph has " + std::to_string(n) + " vertices; dense kernels support at most " +
                        std::to_string(VertexSet::kCapacity));
    for (int i = 0; i < n; ++i) index[ids[i]] = i;
    out.assign(n, {});
    in.assign(n, {});
    out_list.assign(n, {});
    in_list.assign(n, {});
    for (auto [u, v] : g.edges()) {
      int a = index.at(u), b = index.at(v);
      out[a].insert(b);
      in[b].insert(a);
      out_list[a].push_back(b);
      in_list[b].push_back(a);
    }
  }

  bool has_edge(int a, int b) const { return out[a].contains(b); }
  VertexSet all() const { return VertexSet::full(n); }

  /// Vertices reachable from `from` inside `within` (from itself included).
  VertexSet reach(const VertexSet& from, const VertexSet& within, bool backwards = false) const {
    VertexSet seen = from & within;
    VertexSet frontier = seen;
    while (!frontier.empty()) {
      VertexSet next;
      frontier.for_each([&](int v) { next |= (backwards ? in[v] : out[v]); });
      next &= within;
      next -= seen;
      seen |= next;
      frontier = next;
    }
    return seen;
  }

  /// Strong components of the subgraph induced by `within`.
  std::vector<VertexSet> sccs(const VertexSet& within) const {
    std::vector<VertexSet> comps;
    VertexSet left = within;
    while (!left.empty()) {
      int v = left.first();
      VertexSet single;
      single.insert(v);
      VertexSet c = reach(single, within) & reach(single, within, true);
      comps.push_back(c);
      left -= c;
    }
    return comps;
  }
};

// ---------------------------------------------------------------------------
// Isomorphism (label-blind)
// ---------------------------------------------------------------------------

inline bool are_isomorphic(const Digraph& a, const Digraph& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
  DenseGraph ga(a), gb(b);
  const int n = ga.n;
  auto sig = [](const DenseGraph& g, int v) {
    return std::pair<int, int>(g.in[v].size(), g.out[v].size());
  };
  {
    std::vector<std::pair<int, int>> sa, sb;
    for (int i = 0; i < n; ++i) {
      sa.push_back(sig(ga, i));
      sb.push_back(sig(gb, i));
    }
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  std::vector<int> map(n, -1);
  VertexSet used;
  std::function<bool(int)> go = [&](int i) -> bool {
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
      if (used.contains(j) || sig(ga, i) != sig(gb, j)) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k) {
        ok = ga.has_edge(i, k) == gb.has_edge(j, map[k]) && ga.has_edge(k, i) == gb.has_edge(map[k], j);
      }
      if (!ok) continue;
      map[i] = j;
      used.insert(j);
      if (go(i + 1)) return true;
      used.erase(j);
    }
    map[i] = -1;
    return false;
  };
  return go(0);
}

}  // namespace epd
