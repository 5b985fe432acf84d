#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "epd/digraph.hpp"
#include "epd/json_io.hpp"

namespace epd {

using VSet = std::set<Vertex>;

struct Arborescence {
  int root = 0;
  std::set<int> nodes;
  std::map<int, int> parent;  // absent for the root

  std::vector<int> children(int t) const {
    std::vector<int> out;
    for (auto [c, p] : parent)
      if (p == t) out.push_back(c);
    return out;
  }

  /// Nodes in preorder (children by ascending id).
  std::vector<int> preorder() const {
    std::map<int, std::vector<int>> kids;
    for (auto [c, p] : parent) kids[p].push_back(c);
    std::vector<int> out, stack{root};
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      out.push_back(t);
      auto& ks = kids[t];
      for (auto it = ks.rbegin(); it != ks.rend(); ++it) stack.push_back(*it);
    }
    return out;
  }

  std::vector<int> subtree(int t) const {
    std::map<int, std::vector<int>> kids;
    for (auto [c, p] : parent) kids[p].push_back(c);
    std::vector<int> out{t};
    for (size_t i = 0; i < out.size(); ++i)
      for (int c : kids[out[i]]) out.push_back(c);
    std::sort(out.begin(), out.end());
    return out;
  }

  int height(int t) const {
    int best = 0;
    for (int c : children(t)) best = std::max(best, 1 + height(c));
    return best;
  }

  std::vector<std::string> problems() const {
    std::vector<std::string> out;
    if (!nodes.count(root)) out.push_back("root " + std::to_string(root) + " is not a node");
    if (parent.count(root)) out.push_back("root has a parent");
    for (auto [c, p] : parent) {
      if (!nodes.count(c) || !nodes.count(p)) out.push_back("tree edge (" + std::to_string(p) + "," + std::to_string(c) + ") leaves the node set");
    }
    for (int t : nodes) {
      if (t == root) continue;
      if (!parent.count(t)) {
        out.push_back("node " + std::to_string(t) + " has no parent");
        continue;
      }
      int x = t;
      size_t steps = 0;
      while (x != root && parent.count(x) && steps <= nodes.size()) {
        x = parent.at(x);
        ++steps;
      }
      if (x != root) out.push_back("node " + std::to_string(t) + " is not reachable from the root");
    }
    return out;
  }
};

struct DirectedTreeDecomposition {
  Arborescence tree;
  std::map<int, VSet> beta;
  /// Guard of the tree edge entering each non-root node, keyed by that node.
  std::map<int, VSet> gamma;

  const VSet& bag(int t) const {
    static const VSet none;
    auto it = beta.find(t);
    return it == beta.end() ? none : it->second;
  }
  const VSet& guard(int t) const {
    static const VSet none;
    auto it = gamma.find(t);
    return it == gamma.end() ? none : it->second;
  }

  VSet subtree_union(int t) const {
    VSet out;
    for (int s : tree.subtree(t)) out.insert(bag(s).begin(), bag(s).end());
    return out;
  }

  /// Γ(t): the bag plus every guard on an incident tree edge.
  VSet big_gamma(int t) const {
    VSet out = bag(t);
    if (t != tree.root) out.insert(guard(t).begin(), guard(t).end());
    for (int c : tree.children(t)) out.insert(guard(c).begin(), guard(c).end());
    return out;
  }

  int width() const {
    int w = -1;
    for (int t : tree.nodes) w = std::max(w, static_cast<int>(big_gamma(t).size()) - 1);
    return w;
  }
};

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline json to_json(const DirectedTreeDecomposition& d) {
  json j;
  j["tree"]["root"] = d.tree.root;
  j["tree"]["parent"] = json::object();
  for (auto [c, p] : d.tree.parent) j["tree"]["parent"][std::to_string(c)] = p;
  j["beta"] = json::object();
  for (int t : d.tree.nodes) j["beta"][std::to_string(t)] = vertex_list_json(d.bag(t));
  j["gamma"] = json::object();
  for (auto [c, p] : d.tree.parent) j["gamma"][std::to_string(c)] = vertex_list_json(d.guard(c));
  return j;
}

inline DirectedTreeDecomposition dtd_from_json(const json& j) {
  DirectedTreeDecomposition d;
  try {
    d.tree.root = j.at("tree").at("root").get<int>();
    d.tree.nodes.insert(d.tree.root);
    if (j.at("tree").contains("parent"))
      for (const auto& [k, p] : j.at("tree").at("parent").items()) {
        int c = std::stoi(k);
        d.tree.parent[c] = p.get<int>();
        d.tree.nodes.insert(c);
        d.tree.nodes.insert(p.get<int>());
      }
    for (const auto& [k, s] : j.at("beta").items()) {
      int t = std::stoi(k);
      d.beta[t] = vertex_set_from_json(s);
      d.tree.nodes.insert(t);
    }
    if (j.contains("gamma"))
      for (const auto& [k, s] : j.at("gamma").items()) d.gamma[std::stoi(k)] = vertex_set_from_json(s);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed decomposition: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw DomainError("malformed decomposition: node keys must be integers");
  }
  return d;
}

// ---------------------------------------------------------------------------
// Z-normality
// ---------------------------------------------------------------------------

struct NormalityResult {
  bool normal = true;
  /// Offending walk s ... x ... s' with s, s' in S and x outside Z ∪ S.
  std::vector<Vertex> witness;
};

namespace detail {

/// BFS in g - blocked from `from`; returns parent pointers of reached vertices.
inline std::map<Vertex, Vertex> bfs_tree(const Digraph& g, const VSet& from, const VSet& blocked, bool backwards) {
  std::map<Vertex, Vertex> par;
  std::vector<Vertex> q;
  for (Vertex s : from) {
    par[s] = s;
    q.push_back(s);
  }
  for (size_t i = 0; i < q.size(); ++i) {
    Vertex v = q[i];
    for (Vertex w : backwards ? g.in_neighbors(v) : g.out_neighbors(v))
      if (!blocked.count(w) && !par.count(w)) {
        par[w] = v;
        q.push_back(w);
      }
  }
  return par;
}

}  // namespace detail

/// Walk route: S is Z-normal iff no vertex outside Z ∪ S is both reachable
/// from S and able to reach S in G - Z.
inline NormalityResult z_normal_by_walks(const Digraph& g, const VSet& z, const VSet& s) {
  for (Vertex v : s)
    if (z.count(v)) return {false, {v}};
  if (s.empty()) return {};
  auto fwd = detail::bfs_tree(g, s, z, false);
  auto bwd = detail::bfs_tree(g, s, z, true);
  for (auto [x, _] : fwd) {
    if (s.count(x) || !bwd.count(x)) continue;
    std::vector<Vertex> head{x};
    while (!s.count(head.back())) head.push_back(fwd.at(head.back()));
    std::reverse(head.begin(), head.end());
    Vertex y = x;
    while (!s.count(y)) {
      y = bwd.at(y);
      head.push_back(y);
    }
    return {false, head};
  }
  return {};
}

/// Interval route: number the strong components of G - Z (ancestors of S,
/// then S, then the rest) and check that no edge runs backwards and that S
/// is a contiguous union of components.
inline bool z_normal_by_intervals(const Digraph& g, const VSet& z, const VSet& s) {
  for (Vertex v : s)
    if (z.count(v)) return false;
  if (s.empty()) return true;
  Digraph h = delete_vertices(g, z);
  auto bg = strong_components(h);
  const int m = static_cast<int>(bg.size());
  std::vector<int> kind(m, 2);  // 0 = ancestor of S, 1 = in S, 2 = other
  for (int c = 0; c < m; ++c) {
    int inside = 0;
    for (Vertex v : bg.components[c]) inside += s.count(v) ? 1 : 0;
    if (inside != 0 && inside != static_cast<int>(bg.components[c].size())) return false;
    if (inside) kind[c] = 1;
  }
  // Ancestors: components outside S with a path into S (reverse reachability on the DAG).
  std::vector<std::vector<int>> pred(m);
  for (auto [ij, _] : bg.arcs) pred[ij.second].push_back(ij.first);
  std::vector<int> todo;
  for (int c = 0; c < m; ++c)
    if (kind[c] == 1) todo.push_back(c);
  std::vector<bool> anc(m, false);
  while (!todo.empty()) {
    int c = todo.back();
    todo.pop_back();
    for (int p : pred[c])
      if (!anc[p]) {
        anc[p] = true;
        todo.push_back(p);
      }
  }
  for (int c = 0; c < m; ++c)
    if (kind[c] != 1 && anc[c]) kind[c] = 0;
  std::vector<int> order;  // stable within each group: components already topologically sorted
  for (int group = 0; group < 3; ++group)
    for (int c = 0; c < m; ++c)
      if (kind[c] == group) order.push_back(c);
  std::vector<int> pos(m);
  for (int i = 0; i < m; ++i) pos[order[i]] = i;
  for (auto [ij, _] : bg.arcs)
    if (pos[ij.first] > pos[ij.second]) return false;
  int first = m, last = -1, count = 0;
  for (int c = 0; c < m; ++c)
    if (kind[c] == 1) {
      first = std::min(first, pos[c]);
      last = std::max(last, pos[c]);
      ++count;
    }
  return last - first + 1 == count;
}

/// Exact decision; both characterizations are evaluated and must agree.
inline NormalityResult is_z_normal(const Digraph& g, const VSet& z, const VSet& s) {
  auto walk = z_normal_by_walks(g, z, s);
  bool interval = z_normal_by_intervals(g, z, s);
  if (walk.normal != interval) throw std::logic_error("Z-normality characterizations disagree");
  return walk;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct DtdReport {
  std::vector<std::string> violations;
  int width = -1;
  bool ok() const { return violations.empty(); }
};

inline std::string set_str(const VSet& s) {
  std::string out = "{";
  bool first = true;
  for (Vertex v : s) {
    if (!first) out += ",";
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

inline DtdReport validate_dtd(const Digraph& g, const DirectedTreeDecomposition& d) {
  DtdReport r;
  for (auto& p : d.tree.problems()) r.violations.push_back(p);
  if (!r.ok()) return r;
  for (const auto& [t, _] : d.beta)
    if (!d.tree.nodes.count(t)) r.violations.push_back("bag for unknown node " + std::to_string(t));
  for (const auto& [t, _] : d.gamma)
    if (!d.tree.parent.count(t)) r.violations.push_back("guard for node " + std::to_string(t) + " which has no incoming tree edge");
  std::map<Vertex, int> where;
  for (int t : d.tree.nodes)
    for (Vertex v : d.bag(t)) {
      if (!g.has_vertex(v)) r.violations.push_back("bag of node " + std::to_string(t) + " holds unknown vertex " + std::to_string(v));
      auto [it, fresh] = where.emplace(v, t);
      if (!fresh)
        r.violations.push_back("not a partition: vertex " + std::to_string(v) + " lies in bags " + std::to_string(it->second) +
                               " and " + std::to_string(t));
    }
  for (Vertex v : g.vertices())
    if (!where.count(v)) r.violations.push_back("not a partition: vertex " + std::to_string(v) + " lies in no bag");
  for (const auto& [t, z] : d.gamma)
    for (Vertex v : z)
      if (!g.has_vertex(v)) r.violations.push_back("guard of edge into " + std::to_string(t) + " holds unknown vertex " + std::to_string(v));
  if (!r.ok()) return r;
  for (auto [c, p] : d.tree.parent) {
    VSet s = d.subtree_union(c);
    const VSet& z = d.guard(c);
    auto res = is_z_normal(g, z, s);
    if (!res.normal) {
      std::string edge = "(" + std::to_string(p) + "," + std::to_string(c) + ")";
      if (res.witness.size() == 1)
        r.violations.push_back("tree edge " + edge + ": guard " + set_str(z) + " meets the subtree bags at vertex " +
                               std::to_string(res.witness.front()));
      else {
        std::string w;
        for (Vertex v : res.witness) w += (w.empty() ? "" : "->") + std::to_string(v);
        r.violations.push_back("tree edge " + edge + ": subtree bags " + set_str(s) + " not " + set_str(z) +
                               "-normal, offending walk " + w);
      }
    }
  }
  if (r.ok()) r.width = d.width();
  return r;
}

/// Restricts a decomposition to a vertex subset (bags and guards intersected).
inline DirectedTreeDecomposition restrict_dtd(const DirectedTreeDecomposition& d, const VSet& keep) {
  DirectedTreeDecomposition out = d;
  for (auto& [_, b] : out.beta) {
    VSet x;
    for (Vertex v : b)
      if (keep.count(v)) x.insert(v);
    b = x;
  }
  for (auto& [_, z] : out.gamma) {
    VSet x;
    for (Vertex v : z)
      if (keep.count(v)) x.insert(v);
    z = x;
  }
  return out;
}

inline DirectedTreeDecomposition trivial_dtd(const Digraph& g) {
  DirectedTreeDecomposition d;
  d.tree.root = 0;
  d.tree.nodes = {0};
  auto vs = g.vertices();
  d.beta[0] = VSet(vs.begin(), vs.end());
  return d;
}

// ---------------------------------------------------------------------------
// Exact construction
// ---------------------------------------------------------------------------

namespace detail {

class ExactDtd {
 public:
  ExactDtd(const Digraph& g, int w, Budget* budget) : d_(g), w_(w), budget_(budget) {}

  std::optional<DirectedTreeDecomposition> run() {
    DirectedTreeDecomposition out;
    out.tree.root = 0;
    out.tree.nodes = {0};
    if (d_.n == 0) {
      out.beta[0] = {};
      return w_ >= -1 ? std::optional(out) : std::nullopt;
    }
    if (w_ < 0) return std::nullopt;
    VertexSet all = d_.all();
    if (!node(all, {})) return std::nullopt;
    int next = 1;
    build(out, 0, all, {}, next);
    return out;
  }

 private:
  struct NodeChoice {
    VertexSet bag;
    VertexSet u;  // Γ before children's guards
  };
  struct ChildChoice {
    VertexSet c, z;
  };

  static int size(const VertexSet& s) { return s.size(); }

  std::vector<uint64_t> key(const VertexSet& a, const VertexSet& b, int extra) const {
    std::vector<uint64_t> k;
    for (auto x : a.words()) k.push_back(x);
    for (auto x : b.words()) k.push_back(x);
    k.push_back(static_cast<uint64_t>(extra));
    return k;
  }

  /// Can X (Z-normal, disjoint from Z) be the vertex set of a subtree under guard Z?
  bool node(const VertexSet& x, const VertexSet& z) {
    auto k = key(x, z, 0);
    if (auto it = node_memo_.find(k); it != node_memo_.end()) return it->second.has_value();
    if (budget_) budget_->tick("exact decomposition");
    std::optional<NodeChoice> found;
    int room = w_ + 1 - size(z);
    if (size(x) <= room) {
      found = NodeChoice{x, z};
    } else if (room >= 0) {
      // Bags by increasing size; the empty bag needs at least two children.
      std::vector<int> xs = x.to_vector();
      std::vector<VertexSet> bags;
      for (int sz = 0; sz <= std::min<int>(room, xs.size() - 1) && !found; ++sz) {
        enumerate_subsets(xs, sz, [&](const VertexSet& b) {
          if (found) return;
          int need = b.empty() ? 2 : 0;
          if (part(x - b, b | z, need)) found = NodeChoice{b, b | z};
        });
      }
    }
    node_memo_[k] = found;
    return found.has_value();
  }

  /// Can R be split into children under a node whose Γ so far is U?
  bool part(const VertexSet& r, const VertexSet& u, int need) {
    if (r.empty()) return need <= 0;
    auto k = key(r, u, need);
    if (auto it = part_memo_.find(k); it != part_memo_.end()) return it->second.has_value();
    if (budget_) budget_->tick("exact decomposition");
    std::optional<ChildChoice> found;
    int v = r.first();
    int room = w_ + 1 - size(u);
    std::vector<int> uv = u.to_vector();
    std::vector<int> outside = (d_.all() - u).to_vector();
    outside.erase(std::remove(outside.begin(), outside.end(), v), outside.end());
    for (int extra = 0; extra <= room && !found; ++extra) {
      enumerate_subsets(outside, extra, [&](const VertexSet& n) {
        if (found) return;
        for_each_subset(uv, [&](const VertexSet& a) {
          if (found) return;
          VertexSet z = a | n;
          if (z.contains(v)) return;
          try_children(r, u, need, z, v, found);
        });
      });
    }
    part_memo_[k] = found;
    return found.has_value();
  }

  void try_children(const VertexSet& r, const VertexSet& u, int need, const VertexSet& z, int v,
                    std::optional<ChildChoice>& found) {
    VertexSet within = d_.all() - z;
    auto comps = d_.sccs(within);
    int home = -1;
    for (int i = 0; i < static_cast<int>(comps.size()); ++i)
      if (comps[i].contains(v)) home = i;
    if (!comps[home].subset_of(r)) return;
    std::vector<int> others;
    for (int i = 0; i < static_cast<int>(comps.size()); ++i)
      if (i != home && comps[i].subset_of(r)) others.push_back(i);
    const size_t lim = size_t{1} << others.size();
    for (size_t mask = 0; mask < lim && !found; ++mask) {
      VertexSet c = comps[home];
      for (size_t i = 0; i < others.size(); ++i)
        if (mask >> i & 1) c |= comps[others[i]];
      if (need == 2 && c == r) continue;
      if (!normal(c, z)) continue;
      if (node(c, z) && part(r - c, u | z, std::max(need - 1, 0))) found = ChildChoice{c, z};
    }
  }

  bool normal(const VertexSet& s, const VertexSet& z) const {
    VertexSet within = d_.all() - z;
    VertexSet fwd = d_.reach(s, within), bwd = d_.reach(s, within, true);
    return ((fwd & bwd) - s).empty();
  }

  template <typename F>
  static void enumerate_subsets(const std::vector<int>& items, int k, F&& f) {
    std::vector<int> idx;
    std::function<void(int)> rec = [&](int start) {
      if (static_cast<int>(idx.size()) == k) {
        VertexSet s;
        for (int i : idx) s.insert(items[i]);
        f(s);
        return;
      }
      for (int i = start; i < static_cast<int>(items.size()); ++i) {
        idx.push_back(i);
        rec(i + 1);
        idx.pop_back();
      }
    };
    rec(0);
  }

  template <typename F>
  static void for_each_subset(const std::vector<int>& items, F&& f) {
    const size_t lim = size_t{1} << items.size();
    for (size_t mask = 0; mask < lim; ++mask) {
      VertexSet s;
      for (size_t i = 0; i < items.size(); ++i)
        if (mask >> i & 1) s.insert(items[i]);
      f(s);
    }
  }

  VSet ids(const VertexSet& s) const {
    VSet out;
    s.for_each([&](int i) { out.insert(d_.ids[i]); });
    return out;
  }

  void build(DirectedTreeDecomposition& out, int t, const VertexSet& x, const VertexSet& z, int& next) {
    const NodeChoice& nc = *node_memo_.at(key(x, z, 0));
    out.beta[t] = ids(nc.bag);
    VertexSet r = x - nc.bag;
    VertexSet u = nc.u;
    int need = nc.bag.empty() && !(r.empty()) ? 2 : 0;
    while (!r.empty()) {
      const ChildChoice& cc = *part_memo_.at(key(r, u, need));
      int c = next++;
      out.tree.nodes.insert(c);
      out.tree.parent[c] = t;
      out.gamma[c] = ids(cc.z);
      build(out, c, cc.c, cc.z, next);
      r -= cc.c;
      u |= cc.z;
      --need;
      if (need < 0) need = 0;
    }
  }

  DenseGraph d_;
  int w_;
  Budget* budget_;
  std::unordered_map<std::vector<uint64_t>, std::optional<NodeChoice>, detail::KeyHash> node_memo_;
  std::unordered_map<std::vector<uint64_t>, std::optional<ChildChoice>, detail::KeyHash> part_memo_;
};

}  // namespace detail

/// Exact search for a decomposition of width at most w.
inline std::optional<DirectedTreeDecomposition> compute_dtd_exact(const Digraph& g, int w, size_t bound = 12,
                                                                  Budget* budget = nullptr) {
  if (g.num_vertices() > bound)
    throw DomainError("graph has " + std::to_string(g.num_vertices()) + " vertices, above the exact-decomposition bound " +
                      std::to_string(bound));
  detail::ExactDtd s(g, w, budget);
  return s.run();
}

/// Directed tree-width and an optimal decomposition (iterative deepening).
inline std::pair<int, DirectedTreeDecomposition> directed_tree_width(const Digraph& g, size_t bound = 12,
                                                                     Budget* budget = nullptr) {
  for (int w = g.empty() ? -1 : 0;; ++w) {
    auto d = compute_dtd_exact(g, w, bound, budget);
    if (d) return {w, *d};
  }
}

// ---------------------------------------------------------------------------
// Special decompositions
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_component_of(const Digraph& g, const VSet& s, const VSet& z) {
  if (s.empty()) return false;
  for (Vertex v : s)
    if (z.count(v)) return false;
  Digraph h = delete_vertices(g, z);
  VSet from{*s.begin()};
  auto f = reachable_from(h, from), b = reachable_from(h, from, true);
  VSet comp;
  for (Vertex v : f)
    if (b.count(v)) comp.insert(v);
  return comp == s;
}

inline std::vector<VSet> sccs_of(const Digraph& g, const VSet& within) {
  auto bg = strong_components(induced_subgraph(g, within));
  std::vector<VSet> out;
  for (auto& c : bg.components) out.emplace_back(c.begin(), c.end());
  return out;
}

/// Splits the strongly connected set X (a strong component of G - zin).
inline void special_split(const Digraph& g, DirectedTreeDecomposition& d, int t, const VSet& x, const VSet& zin,
                          int& next) {
  VSet bag = x;
  if (x.size() > 1) {
    // Separator of size 1 or 2 minimizing the largest remaining strong component.
    std::vector<Vertex> xs(x.begin(), x.end());
    std::pair<size_t, size_t> best{x.size() + 1, 0};
    VSet best_bag;
    auto consider = [&](const VSet& b) {
      VSet rest;
      for (Vertex v : x)
        if (!b.count(v)) rest.insert(v);
      size_t worst = 0;
      for (auto& c : sccs_of(g, rest)) worst = std::max(worst, c.size());
      std::pair<size_t, size_t> score{worst, b.size()};
      if (score < best) {
        best = score;
        best_bag = b;
      }
    };
    for (Vertex a : xs) consider({a});
    if (best.first > 1)
      for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = i + 1; j < xs.size(); ++j) consider({xs[i], xs[j]});
    if (!best_bag.empty()) bag = best_bag;
  }
  d.beta[t] = bag;
  VSet rest;
  for (Vertex v : x)
    if (!bag.count(v)) rest.insert(v);
  if (rest.empty()) return;
  VSet pool = bag;
  pool.insert(zin.begin(), zin.end());
  for (const VSet& c : sccs_of(g, rest)) {
    VSet z = pool;
    for (Vertex v : pool) {
      VSet smaller = z;
      smaller.erase(v);
      if (is_component_of(g, c, smaller)) z = smaller;
    }
    int child = next++;
    d.tree.nodes.insert(child);
    d.tree.parent[child] = t;
    d.gamma[child] = z;
    special_split(g, d, child, c, z, next);
  }
}

}  // namespace detail

/// Recursive strong-component splitting: the root separates the strong
/// components of G; a strongly connected set keeps a small separator as its
/// bag and hangs the remaining strong components below it.
inline DirectedTreeDecomposition compute_special_dtd(const Digraph& g, size_t bound = 64) {
  if (g.num_vertices() > bound)
    throw DomainError("graph has " + std::to_string(g.num_vertices()) + " vertices, above the special-decomposition bound " +
                      std::to_string(bound));
  DirectedTreeDecomposition d;
  d.tree.root = 0;
  d.tree.nodes = {0};
  int next = 1;
  auto vs = g.vertices();
  VSet all(vs.begin(), vs.end());
  if (all.empty()) {
    d.beta[0] = {};
    return d;
  }
  auto comps = detail::sccs_of(g, all);
  if (comps.size() == 1) {
    detail::special_split(g, d, 0, all, {}, next);
    return d;
  }
  d.beta[0] = {};
  for (const VSet& c : comps) {
    int child = next++;
    d.tree.nodes.insert(child);
    d.tree.parent[child] = 0;
    d.gamma[child] = {};
    detail::special_split(g, d, child, c, {}, next);
  }
  return d;
}

inline DtdReport validate_special_dtd(const Digraph& g, const DirectedTreeDecomposition& d) {
  DtdReport r = validate_dtd(g, d);
  if (!d.tree.problems().empty()) return r;
  for (auto [c, p] : d.tree.parent) {
    VSet s = d.subtree_union(c);
    if (!detail::is_component_of(g, s, d.guard(c)))
      r.violations.push_back("β(T_" + std::to_string(c) + ") = " + set_str(s) + " not a strong component of G - " +
                             set_str(d.guard(c)));
  }
  for (int t : d.tree.nodes) {
    VSet below;
    for (int s : d.tree.subtree(t))
      if (s != t) below.insert(d.bag(s).begin(), d.bag(s).end());
    VSet guards;
    if (t != d.tree.root) guards = d.guard(t);
    for (int c : d.tree.children(t)) guards.insert(d.guard(c).begin(), d.guard(c).end());
    for (Vertex v : below)
      if (guards.count(v)) {
        r.violations.push_back("node " + std::to_string(t) + ": incident guard vertex " + std::to_string(v) +
                               " lies in a bag below it");
        break;
      }
  }
  if (!r.ok()) r.width = -1;
  return r;
}

}  // namespace epd
