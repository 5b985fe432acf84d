#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <unordered_set>
#include <vector>

#include "epd/linkage.hpp"
#include "epd/minors.hpp"

namespace epd {

/// Limits for the ground-truth procedures. Graphs up to
/// `brute_force_vertices` go through plain enumeration; larger ones up to
/// `max_vertices` through the exact memoized model search.
struct OracleBudget {
  size_t max_vertices = 12;
  size_t brute_force_vertices = 12;
  std::optional<size_t> max_subset_size;
  std::optional<double> timeout_seconds;
  uint64_t max_steps = 4'000'000'000ULL;

  Budget make() const { return Budget(max_steps, timeout_seconds); }
};

namespace detail {

inline void oracle_size_check(const Digraph& g, const OracleBudget& b) {
  if (g.num_vertices() > b.max_vertices)
    throw BudgetExceeded("oracle: graph has " + std::to_string(g.num_vertices()) + " vertices, budget allows " +
                         std::to_string(b.max_vertices));
}

/// Every simple path from s to t avoiding `avoid` internally, in lexicographic order.
inline void all_paths(const Digraph& g, Vertex s, Vertex t, const std::set<Vertex>& avoid, Budget& budget,
                      const std::function<bool(const Path&)>& visit) {
  Path p{s};
  std::set<Vertex> on{s};
  std::function<bool()> go = [&]() -> bool {
    budget.tick("oracle path enumeration");
    for (Vertex y : g.out_neighbors(p.back())) {
      if (y == t) {
        p.push_back(t);
        bool stop = visit(p);
        p.pop_back();
        if (stop) return true;
        continue;
      }
      if (on.count(y) || avoid.count(y)) continue;
      p.push_back(y);
      on.insert(y);
      if (go()) return true;
      on.erase(y);
      p.pop_back();
    }
    return false;
  };
  if (s == t) {
    visit(p);
    return;
  }
  go();
}

// ---------------------------------------------------------------------------
// Topological: injective map plus internally disjoint paths
// ---------------------------------------------------------------------------

inline std::optional<TopologicalModel> brute_topological(const Digraph& h, const Digraph& g, Budget& budget) {
  auto hv = h.vertices();
  auto gv = g.vertices();
  auto he = h.edges();
  if (hv.size() > gv.size()) return std::nullopt;
  std::map<Vertex, Vertex> phi;
  std::set<Vertex> taken;
  std::optional<TopologicalModel> found;
  std::set<Vertex> inner;
  std::vector<Path> chosen;

  std::function<bool(size_t)> route = [&](size_t i) -> bool {
    if (i == he.size()) {
      TopologicalModel m;
      m.vertex_map = phi;
      for (size_t j = 0; j < he.size(); ++j) m.edge_map[he[j]] = chosen[j];
      found = m;
      return true;
    }
    std::set<Vertex> avoid = taken;
    avoid.insert(inner.begin(), inner.end());
    bool ok = false;
    all_paths(g, phi[he[i].first], phi[he[i].second], avoid, budget, [&](const Path& p) {
      for (size_t a = 1; a + 1 < p.size(); ++a) inner.insert(p[a]);
      chosen.push_back(p);
      ok = route(i + 1);
      chosen.pop_back();
      for (size_t a = 1; a + 1 < p.size(); ++a) inner.erase(p[a]);
      return ok;
    });
    return ok;
  };

  // Every edge path avoids the other branch vertices, so each mapped edge
  // needs a route in G minus those vertices.
  auto routable = [&](Vertex a, Vertex b) {
    std::set<Vertex> seen{phi[a]};
    std::vector<Vertex> stack{phi[a]};
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : g.out_neighbors(x)) {
        if (y == phi[b]) return true;
        if (taken.count(y) || !seen.insert(y).second) continue;
        stack.push_back(y);
      }
    }
    return false;
  };
  auto consistent = [&](Vertex v) {
    for (auto [a, b] : he)
      if ((a == v || b == v) && phi.count(a) && phi.count(b) && !routable(a, b)) return false;
    return true;
  };

  std::function<bool(size_t)> assign = [&](size_t i) -> bool {
    budget.tick("oracle topological map");
    if (i == hv.size()) return route(0);
    for (Vertex x : gv) {
      if (taken.count(x)) continue;
      phi[hv[i]] = x;
      taken.insert(x);
      if (consistent(hv[i]) && assign(i + 1)) return true;
      taken.erase(x);
    }
    phi.erase(hv[i]);
    return false;
  };
  assign(0);
  return found;
}

// ---------------------------------------------------------------------------
// Butterfly: replay of deletion and contraction sequences
// ---------------------------------------------------------------------------

/// True iff G has a spanning subgraph isomorphic to H (same vertex count).
inline bool spanning_subgraph_match(const Digraph& h, const Digraph& g) {
  if (h.num_vertices() != g.num_vertices() || h.num_edges() > g.num_edges()) return false;
  auto hv = h.vertices();
  auto gv = g.vertices();
  std::map<Vertex, Vertex> phi;
  std::set<Vertex> taken;
  std::function<bool(size_t)> go = [&](size_t i) -> bool {
    if (i == hv.size()) return true;
    Vertex x = hv[i];
    for (Vertex y : gv) {
      if (taken.count(y)) continue;
      bool ok = true;
      for (Vertex a : h.out_neighbors(x))
        if (phi.count(a) && !g.has_edge(y, phi[a])) ok = false;
      for (Vertex a : h.in_neighbors(x))
        if (phi.count(a) && !g.has_edge(phi[a], y)) ok = false;
      if (!ok) continue;
      phi[x] = y;
      taken.insert(y);
      if (go(i + 1)) return true;
      taken.erase(y);
      phi.erase(x);
    }
    return false;
  };
  return go(0);
}

/// Order-preserving relabelling to 0..n-1, used as a memo key.
inline std::vector<uint64_t> compact_key(const Digraph& g) {
  std::map<Vertex, uint64_t> rank;
  for (Vertex v : g.vertices()) rank.emplace(v, rank.size());
  std::vector<uint64_t> key{rank.size()};
  for (auto [u, v] : g.edges()) key.push_back(rank[u] << 32 | rank[v]);
  return key;
}

/// Every butterfly minor arises from a subgraph by contractions; edge
/// deletions are postponed to a final spanning-subgraph test except those
/// that make a chosen edge contractible.
class ContractionReplay {
 public:
  ContractionReplay(const Digraph& h, Budget& budget) : h_(h), budget_(budget) {}

  bool run(const Digraph& g) { return go(g); }

 private:
  bool go(const Digraph& g) {
    budget_.tick("oracle contraction replay");
    if (g.num_vertices() < h_.num_vertices() || g.num_edges() < h_.num_edges()) return false;
    auto key = compact_key(g);
    if (seen_.count(key)) return false;
    seen_.insert(key);
    if (g.num_vertices() == h_.num_vertices()) return spanning_subgraph_match(h_, g);
    for (Vertex v : g.vertices()) {
      Digraph d = g;
      d.remove_vertex(v);
      if (go(d)) return true;
    }
    for (auto [u, v] : g.edges()) {
      Digraph a = g;  // u keeps only (u,v) as out-edge
      for (Vertex w : g.out_neighbors(u))
        if (w != v) a.remove_edge(u, w);
      if (go(butterfly_contract(a, {u, v}))) return true;
      if (g.in_neighbors(v).size() > 1) {
        Digraph b = g;  // v keeps only (u,v) as in-edge
        for (Vertex w : g.in_neighbors(v))
          if (w != u) b.remove_edge(w, v);
        if (go(butterfly_contract(b, {u, v}))) return true;
      }
    }
    return false;
  }

  const Digraph& h_;
  Budget& budget_;
  std::unordered_set<std::vector<uint64_t>, KeyHash> seen_;
};

}  // namespace detail

namespace detail {

// ---------------------------------------------------------------------------
// Butterfly: tree-like models over weakly connected branch sets
// ---------------------------------------------------------------------------

class TreeLikeEnumeration {
 public:
  TreeLikeEnumeration(const Digraph& h, const Digraph& g, Budget& budget) : h_(h), budget_(budget) {
    gv_ = g.vertices();
    n_ = static_cast<int>(gv_.size());
    if (n_ > 20) throw BudgetExceeded("oracle: tree-like enumeration is limited to 20 vertices");
    std::map<Vertex, int> idx;
    for (int i = 0; i < n_; ++i) idx[gv_[i]] = i;
    out_.assign(n_, 0);
    in_.assign(n_, 0);
    for (auto [u, v] : g.edges()) {
      out_[idx[u]] |= 1u << idx[v];
      in_[idx[v]] |= 1u << idx[u];
    }
    // H vertices in an order where each one touches an earlier one when possible.
    auto hv = h.vertices();
    std::set<Vertex> placed;
    while (order_.size() < hv.size()) {
      Vertex best = -1;
      int best_score = -1;
      for (Vertex v : hv) {
        if (placed.count(v)) continue;
        int touch = 0;
        for (Vertex w : h.out_neighbors(v)) touch += placed.count(w);
        for (Vertex w : h.in_neighbors(v)) touch += placed.count(w);
        int score = touch * 100 + static_cast<int>(degrees(h, v).total);
        if (score > best_score) best = v, best_score = score;
      }
      placed.insert(best);
      order_.push_back(best);
    }
  }

  std::optional<ButterflyModel> run() {
    if (h_.num_vertices() > static_cast<size_t>(n_)) return std::nullopt;
    sets_.assign(order_.size(), 0);
    if (!place(0, 0)) return std::nullopt;
    return witness_;
  }

 private:
  struct Option {
    int root;
    uint32_t in, out;
  };

  uint32_t reach(uint32_t from, uint32_t within, bool backwards) const {
    uint32_t seen = from & within, frontier = seen;
    while (frontier) {
      uint32_t next = 0;
      for (uint32_t f = frontier; f; f &= f - 1) next |= (backwards ? in_ : out_)[__builtin_ctz(f)];
      next &= within & ~seen;
      seen |= next;
      frontier = next;
    }
    return seen;
  }

  bool weakly_connected(uint32_t x) const {
    uint32_t seen = x & (~x + 1), frontier = seen;
    while (frontier) {
      uint32_t next = 0;
      for (uint32_t f = frontier; f; f &= f - 1) next |= out_[__builtin_ctz(f)] | in_[__builtin_ctz(f)];
      next &= x & ~seen;
      seen |= next;
      frontier = next;
    }
    return seen == x;
  }

  bool has_edge_between(uint32_t a, uint32_t b) const {
    for (uint32_t f = a; f; f &= f - 1)
      if (out_[__builtin_ctz(f)] & b) return true;
    return false;
  }

  /// Root r with I ∪ O = X, I ∩ O = {r}, I reaching r inside I and O reached from r inside O.
  const std::vector<Option>& options(uint32_t x) {
    auto it = options_.find(x);
    if (it != options_.end()) return it->second;
    std::vector<Option> opts;
    for (uint32_t rs = x; rs; rs &= rs - 1) {
      int r = __builtin_ctz(rs);
      uint32_t rb = 1u << r, rest = x & ~rb;
      for (uint32_t sub = rest;; sub = (sub - 1) & rest) {
        uint32_t in = sub | rb, out = (rest & ~sub) | rb;
        if (reach(rb, in, true) == in && reach(rb, out, false) == out) opts.push_back({r, in, out});
        if (sub == 0) break;
      }
    }
    return options_.emplace(x, std::move(opts)).first->second;
  }

  bool place(size_t i, uint32_t used) {
    budget_.tick("oracle tree-like enumeration");
    if (i == order_.size()) return choose(0);
    Vertex v = order_[i];
    uint32_t free = ((n_ == 32) ? ~0u : ((1u << n_) - 1)) & ~used;
    for (uint32_t x = free; x; x = (x - 1) & free) {
      if (!weakly_connected(x)) continue;
      bool ok = true;
      for (size_t j = 0; j < i && ok; ++j) {
        if (h_.has_edge(v, order_[j]) && !has_edge_between(x, sets_[j])) ok = false;
        if (h_.has_edge(order_[j], v) && !has_edge_between(sets_[j], x)) ok = false;
      }
      if (!ok || options(x).empty()) continue;
      sets_[i] = x;
      if (place(i + 1, used | x)) return true;
    }
    return false;
  }

  bool choose(size_t i) {
    if (i == order_.size()) {
      build_witness();
      return true;
    }
    budget_.tick("oracle tree-like enumeration");
    Vertex v = order_[i];
    for (const Option& o : options(sets_[i])) {
      bool ok = true;
      for (size_t j = 0; j < i && ok; ++j) {
        if (h_.has_edge(v, order_[j]) && !has_edge_between(o.out, chosen_[j].in)) ok = false;
        if (h_.has_edge(order_[j], v) && !has_edge_between(chosen_[j].out, o.in)) ok = false;
      }
      if (!ok) continue;
      chosen_.push_back(o);
      if (choose(i + 1)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  /// BFS tree inside `within` from r, following in- or out-edges.
  std::vector<Edge> branching(int r, uint32_t within, bool toward_root) const {
    std::vector<Edge> arcs;
    uint32_t seen = 1u << r;
    std::vector<int> q{r};
    for (size_t h = 0; h < q.size(); ++h) {
      int x = q[h];
      uint32_t nb = (toward_root ? in_[x] : out_[x]) & within & ~seen;
      for (; nb; nb &= nb - 1) {
        int y = __builtin_ctz(nb);
        seen |= 1u << y;
        q.push_back(y);
        arcs.push_back(toward_root ? Edge{gv_[y], gv_[x]} : Edge{gv_[x], gv_[y]});
      }
    }
    return arcs;
  }

  void build_witness() {
    ButterflyModel m;
    std::map<Vertex, size_t> pos;
    for (size_t i = 0; i < order_.size(); ++i) pos[order_[i]] = i;
    for (size_t i = 0; i < order_.size(); ++i) {
      Vertex v = order_[i];
      const Option& o = chosen_[i];
      for (uint32_t f = sets_[i]; f; f &= f - 1) m.vertex_map[v].insert(gv_[__builtin_ctz(f)]);
      m.roots[v] = gv_[o.root];
      m.in_branching[v] = branching(o.root, o.in, true);
      m.out_branching[v] = branching(o.root, o.out, false);
    }
    for (auto [a, b] : h_.edges()) {
      const Option &oa = chosen_[pos[a]], &ob = chosen_[pos[b]];
      for (uint32_t f = oa.out; f; f &= f - 1) {
        int x = __builtin_ctz(f);
        if (out_[x] & ob.in) {
          m.edge_map[{a, b}] = {gv_[x], gv_[__builtin_ctz(out_[x] & ob.in)]};
          break;
        }
      }
    }
    witness_ = m;
  }

  const Digraph& h_;
  Budget& budget_;
  std::vector<Vertex> gv_;
  int n_ = 0;
  std::vector<uint32_t> out_, in_;
  std::vector<Vertex> order_;
  std::vector<uint32_t> sets_;
  std::vector<Option> chosen_;
  std::map<uint32_t, std::vector<Option>> options_;
  ButterflyModel witness_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Public oracles
// ---------------------------------------------------------------------------

inline bool oracle_butterfly_by_contraction(const Digraph& h, const Digraph& g, const OracleBudget& ob = {}) {
  detail::oracle_size_check(g, ob);
  Budget b = ob.make();
  return detail::ContractionReplay(h, b).run(g);
}

inline std::optional<ButterflyModel> oracle_butterfly_tree_like(const Digraph& h, const Digraph& g,
                                                                const OracleBudget& ob = {}) {
  detail::oracle_size_check(g, ob);
  Budget b = ob.make();
  return detail::TreeLikeEnumeration(h, g, b).run();
}

inline std::optional<TopologicalModel> oracle_topological(const Digraph& h, const Digraph& g,
                                                          const OracleBudget& ob = {}) {
  detail::oracle_size_check(g, ob);
  Budget b = ob.make();
  return detail::brute_topological(h, g, b);
}

/// A witness model: enumeration below the brute-force size, the exact search above.
inline std::optional<Model> oracle_find_model(const Digraph& h, const Digraph& g, MinorKind kind,
                                              const OracleBudget& ob = {}) {
  detail::oracle_size_check(g, ob);
  if (g.num_vertices() > ob.brute_force_vertices) {
    Budget b = ob.make();
    return find_model_unbounded(h, g, kind, &b);
  }
  if (kind == MinorKind::Topological) {
    auto m = oracle_topological(h, g, ob);
    if (!m) return std::nullopt;
    return Model{*m};
  }
  auto m = oracle_butterfly_tree_like(h, g, ob);
  if (!m) return std::nullopt;
  return Model{*m};
}

inline bool oracle_has_minor(const Digraph& h, const Digraph& g, MinorKind kind, const OracleBudget& ob = {}) {
  detail::oracle_size_check(g, ob);
  if (g.num_vertices() > ob.brute_force_vertices) {
    Budget b = ob.make();
    return find_model_unbounded(h, g, kind, &b).has_value();
  }
  if (kind == MinorKind::Butterfly) return oracle_butterfly_by_contraction(h, g, ob);
  return oracle_topological(h, g, ob).has_value();
}

struct Packing {
  int count = 0;
  std::vector<Model> models;
};

/// Maximum number of pairwise vertex-disjoint models, by testing j·H for j = 1, 2, ...
inline Packing oracle_max_packing(const Digraph& h, const Digraph& g, MinorKind kind, const OracleBudget& ob = {}) {
  if (h.empty()) throw DomainError("pattern has no vertices; packings are unbounded");
  detail::oracle_size_check(g, ob);
  Packing best;
  Digraph jh;
  std::vector<Vertex> offsets;
  for (int j = 1; static_cast<size_t>(j) * h.num_vertices() <= g.num_vertices(); ++j) {
    auto [u, off] = disjoint_union(jh, h);
    jh = u;
    offsets.push_back(off);
    std::optional<std::vector<Model>> ms;
    if (g.num_vertices() > ob.brute_force_vertices) {
      Budget b = ob.make();
      ms = find_disjoint_models(h, g, j, kind, &b);
    } else if (auto m = oracle_find_model(jh, g, kind, ob)) {
      ms = detail::split_copies(h, offsets, *m);
    }
    if (!ms) break;
    best.count = j;
    best.models = *ms;
  }
  return best;
}

namespace detail {

/// Calls visit on every k-subset of items in lexicographic order until it returns true.
inline bool for_each_subset(const std::vector<Vertex>& items, size_t k, Budget& budget,
                            const std::function<bool(const VSet&)>& visit) {
  std::vector<size_t> idx(k);
  for (size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > items.size()) return false;
  while (true) {
    budget.tick("oracle subset enumeration");
    VSet s;
    for (size_t i : idx) s.insert(items[i]);
    if (visit(s)) return true;
    size_t i = k;
    while (i > 0 && idx[i - 1] == items.size() - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline std::optional<VSet> min_hitting(const Digraph& g, const OracleBudget& ob,
                                       const std::function<bool(const Digraph&)>& still_contains) {
  Budget b = ob.make();
  auto verts = g.vertices();
  size_t limit = std::min(verts.size(), ob.max_subset_size.value_or(verts.size()));
  for (size_t k = 0; k <= limit; ++k) {
    std::optional<VSet> found;
    for_each_subset(verts, k, b, [&](const VSet& s) {
      if (still_contains(delete_vertices(g, s))) return false;
      found = s;
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

/// True iff g has a directed cycle with at least l vertices.
inline bool has_long_cycle(const Digraph& g, int l, Budget& budget) {
  auto verts = g.vertices();
  for (Vertex s : verts) {
    // Cycles whose smallest vertex is s.
    std::set<Vertex> on{s};
    std::function<bool(Vertex, int)> go = [&](Vertex x, int len) -> bool {
      budget.tick("oracle cycle enumeration");
      for (Vertex y : g.out_neighbors(x)) {
        if (y == s && len >= std::max(l, 2)) return true;
        if (y <= s || on.count(y)) continue;
        on.insert(y);
        if (go(y, len + 1)) return true;
        on.erase(y);
      }
      return false;
    };
    if (go(s, 1)) return true;
  }
  return false;
}

}  // namespace detail

/// Minimum S with H not a minor of G − S.
inline VSet oracle_min_hitting_set(const Digraph& h, const Digraph& g, MinorKind kind, const OracleBudget& ob = {}) {
  detail::oracle_size_check(g, ob);
  auto s = detail::min_hitting(g, ob, [&](const Digraph& rest) { return oracle_has_minor(h, rest, kind, ob); });
  if (!s) throw BudgetExceeded("oracle: no hitting set within max_subset_size");
  return *s;
}

/// Minimum S meeting every directed cycle with at least l vertices.
inline VSet oracle_min_l_cycle_hitting(const Digraph& g, int l, const OracleBudget& ob = {}) {
  detail::oracle_size_check(g, ob);
  Budget b = ob.make();
  auto s = detail::min_hitting(g, ob, [&](const Digraph& rest) { return detail::has_long_cycle(rest, l, b); });
  if (!s) throw BudgetExceeded("oracle: no cycle hitting set within max_subset_size");
  return *s;
}

inline bool oracle_has_long_cycle(const Digraph& g, int l, const OracleBudget& ob = {}) {
  Budget b = ob.make();
  return detail::has_long_cycle(g, l, b);
}

/// Exhaustive path-tuple enumeration.
inline std::optional<Linkage> oracle_sigma_linkage(const Digraph& g, const std::vector<Edge>& sigma,
                                                   const OracleBudget& ob = {}) {
  detail::oracle_size_check(g, ob);
  detail::check_sigma(g, sigma);
  Budget b = ob.make();
  Linkage l{sigma, {}};
  std::function<bool(size_t)> go = [&](size_t i) -> bool {
    if (i == sigma.size()) return true;
    bool ok = false;
    detail::all_paths(g, sigma[i].first, sigma[i].second, {}, b, [&](const Path& p) {
      l.paths.push_back(p);
      Linkage part{std::vector<Edge>(sigma.begin(), sigma.begin() + i + 1), l.paths};
      if (validate_linkage(g, part).empty() && go(i + 1)) return ok = true;
      l.paths.pop_back();
      return false;
    });
    return ok;
  };
  if (!go(0)) return std::nullopt;
  return l;
}

}  // namespace epd
