#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "epd/bounded_dtw.hpp"
#include "epd/clusters.hpp"
#include "epd/dtd.hpp"
#include "epd/flow.hpp"
#include "epd/generators.hpp"
#include "epd/minors.hpp"
#include "epd/oracle.hpp"

namespace epd {

struct BoundAccount {
  std::string formula;
  std::map<std::string, long long> parameters;
  long long value = -1;
};

/// Either k disjoint models or a hitting set. `verified` is set only after
/// an exact no-model check of G − S.
struct PackOrHit {
  enum class Arm { Packing, Hitting };
  Arm arm = Arm::Hitting;
  std::vector<Model> models;
  VSet hitting_set;
  bool verified = false;
  std::string certificate;
  BoundAccount bound;
  std::vector<std::string> notes;

  bool packing() const { return arm == Arm::Packing; }
};

enum class F1Strategy { ExactMinHitting, FixedBound };

struct EPConfig {
  /// (|V(H)|, k) -> width threshold; missing entries use k·(c+1).
  std::map<std::pair<size_t, int>, int> grid_threshold;
  size_t exhaustive_bound = 12;
  F1Strategy f1_strategy = F1Strategy::ExactMinHitting;
  int f1_fixed = 0;
  int max_grid_order = 4;
  bool verify = true;
  Budget* budget = nullptr;

  int threshold(size_t h, int k, int c) const {
    auto it = grid_threshold.find({h, k});
    return it == grid_threshold.end() ? k * (c + 1) : it->second;
  }
};

namespace detail {

inline VSet model_vertices(const Model& m) {
  auto img = model_image(m);
  return VSet(img.begin(), img.end());
}

inline std::vector<std::string> packing_problems(const Digraph& h, const Digraph& g, const std::vector<Model>& ms) {
  std::vector<std::string> out;
  std::map<Vertex, size_t> owner;
  for (size_t i = 0; i < ms.size(); ++i) {
    auto rep = validate_model(h, g, ms[i]);
    for (const auto& v : rep.violations) out.push_back("model " + std::to_string(i) + ": " + v);
    for (Vertex v : model_vertices(ms[i])) {
      auto [it, fresh] = owner.emplace(v, i);
      if (!fresh)
        out.push_back("models " + std::to_string(it->second) + " and " + std::to_string(i) + " share vertex " +
                      std::to_string(v));
    }
  }
  return out;
}

inline PackOrHit make_packing(const Digraph& h, const Digraph& g, std::vector<Model> ms) {
  auto problems = packing_problems(h, g, ms);
  if (!problems.empty()) throw std::logic_error("engine produced an invalid packing: " + problems.front());
  PackOrHit r;
  r.arm = PackOrHit::Arm::Packing;
  r.models = std::move(ms);
  r.verified = true;
  return r;
}

/// Turns a constructed set into the final answer. With verification on, an
/// exact k-packing wins when one exists; otherwise a model surviving in G − S
/// is noted and S grows by one model vertex at a time.
inline PackOrHit conclude_hitting(const Digraph& h, const Digraph& g, int k, MinorKind kind, VSet s,
                                  BoundAccount bound, const EPConfig& cfg, std::vector<std::string> notes = {}) {
  PackOrHit r;
  r.bound = std::move(bound);
  r.notes = std::move(notes);
  if (!cfg.verify) {
    r.hitting_set = std::move(s);
    r.certificate = "unverified";
    return r;
  }
  auto rest = find_model_unbounded(h, delete_vertices(g, s), kind, cfg.budget);
  if (k > 0) {
    if (auto ms = find_disjoint_models(h, g, k, kind, cfg.budget)) {
      PackOrHit p = make_packing(h, g, *ms);
      p.notes = r.notes;
      p.notes.push_back(rest ? "constructed set missed a model; exact search found k disjoint models"
                             : "exact search found k disjoint models beside the constructed set");
      return p;
    }
  }
  if (rest) r.notes.push_back("constructed set missed a model; grown until no model remains");
  while (rest) {
    s.insert(*model_vertices(*rest).begin());
    rest = find_model_unbounded(h, delete_vertices(g, s), kind, cfg.budget);
  }
  r.hitting_set = std::move(s);
  r.verified = true;
  r.certificate = "no " + to_string(kind) + " model of H in G - S (exact search)";
  return r;
}

inline void require_strongly_connected(const Digraph& h) {
  if (h.empty() || !is_strongly_connected(h)) throw DomainError("pattern must be a non-empty strongly connected digraph");
}

struct PeelStep {
  std::optional<std::vector<Model>> packing;
  VSet hitting;
};

/// Recursion on the lowest node whose subtree holds a model.
inline PeelStep peel_lowest(const Digraph& h, const Digraph& g, const DirectedTreeDecomposition& d, int k,
                         MinorKind kind, Budget* budget) {
  if (k <= 0) return {std::vector<Model>{}, {}};
  auto m = find_model_bounded_dtw(h, g, d, kind, budget);
  if (!m) return {std::nullopt, {}};
  if (k == 1) return {std::vector<Model>{*m}, {}};

  auto pre = d.tree.preorder();
  std::vector<std::pair<int, size_t>> order;
  for (size_t i = 0; i < pre.size(); ++i) order.emplace_back(d.tree.height(pre[i]), i);
  std::sort(order.begin(), order.end());
  for (auto [ht, i] : order) {
    int t = pre[i];
    VSet sub = d.subtree_union(t);
    Digraph gt = induced_subgraph(g, sub);
    auto mt = find_model_bounded_dtw(h, gt, restrict_dtd(d, sub), kind, budget);
    if (!mt) continue;
    VSet gamma = d.big_gamma(t);
    VSet drop = sub;
    drop.insert(gamma.begin(), gamma.end());
    Digraph rest = delete_vertices(g, drop);
    VSet keep;
    for (Vertex v : rest.vertices()) keep.insert(v);
    auto sub_step = peel_lowest(h, rest, restrict_dtd(d, keep), k - 1, kind, budget);
    if (sub_step.packing) {
      sub_step.packing->push_back(*mt);
      return sub_step;
    }
    sub_step.hitting.insert(gamma.begin(), gamma.end());
    return sub_step;
  }
  throw std::logic_error("model of H in G but in no subtree of the decomposition");
}

}  // namespace detail

/// Pack-or-hit for a strongly connected pattern along a directed tree
/// decomposition of width w; hitting sets obey |S| ≤ k·(w+1).
inline PackOrHit pack_or_hit_bounded_dtw(const Digraph& h, const Digraph& g, const DirectedTreeDecomposition& d, int k,
                                         MinorKind kind, const EPConfig& cfg = {}) {
  detail::require_strongly_connected(h);
  if (k < 0) throw DomainError("k must be non-negative");
  auto rep = validate_dtd(g, d);
  if (!rep.ok()) throw DomainError("invalid decomposition: " + rep.violations.front());
  const int w = d.width();
  auto step = detail::peel_lowest(h, g, d, k, kind, cfg.budget);
  if (step.packing) return detail::make_packing(h, g, *step.packing);
  BoundAccount b{"k*(w+1)", {{"k", k}, {"w", w}}, static_cast<long long>(k) * (w + 1)};
  return detail::conclude_hitting(h, g, k, kind, step.hitting, b, cfg);
}

/// Smallest c ≤ cfg.max_grid_order with H a minor of the cylindrical grid G_c.
inline std::optional<int> grid_order_of(const Digraph& h, MinorKind kind, const EPConfig& cfg = {}) {
  // Both kinds coincide when the degree conversion applies; the topological search is far cheaper.
  if (kind == MinorKind::Butterfly && degree_conversion_applies(h)) kind = MinorKind::Topological;
  for (int c = 1; c <= cfg.max_grid_order; ++c)
    if (has_minor(h, cylindrical_grid(c).graph, kind, cfg.budget)) return c;
  return std::nullopt;
}

inline PackOrHit pack_or_hit_strongly_connected(const Digraph& h, const Digraph& g, int k, const EPConfig& cfg,
                                                MinorKind kind) {
  detail::require_strongly_connected(h);
  if (k < 0) throw DomainError("k must be non-negative");
  auto c = grid_order_of(h, kind, cfg);
  if (!c)
    throw DomainError("outside positive characterization: H is not a minor of any cylindrical grid of order <= " +
                      std::to_string(cfg.max_grid_order));
  DirectedTreeDecomposition d = g.num_vertices() <= cfg.exhaustive_bound
                                    ? directed_tree_width(g, cfg.exhaustive_bound, cfg.budget).second
                                    : compute_special_dtd(g);
  const int w = d.width();
  const int threshold = cfg.threshold(h.num_vertices(), k, *c);
  std::vector<std::string> notes{"grid order c = " + std::to_string(*c), "decomposition width " + std::to_string(w)};
  if (w >= threshold) {
    if (auto ms = find_disjoint_models(h, g, k, kind, cfg.budget)) {
      PackOrHit r = detail::make_packing(h, g, *ms);
      r.notes = notes;
      r.notes.push_back("width at or above threshold " + std::to_string(threshold) + ": direct packing search");
      return r;
    }
    notes.push_back("width at or above threshold but no k disjoint models; using the decomposition");
  }
  PackOrHit r = pack_or_hit_bounded_dtw(h, g, d, k, kind, cfg);
  r.notes.insert(r.notes.begin(), notes.begin(), notes.end());
  return r;
}


/// Two disjoint directed cycles of lengths a and b joined by the edge
/// (first vertex of the a-cycle, first vertex of the b-cycle).
inline Digraph two_cycles_pattern(int a, int b) {
  if (a < 2 || b < 2) throw DomainError("cycle lengths must be at least 2");
  Digraph h = directed_cycle(a, 0);
  auto [u, off] = disjoint_union(h, directed_cycle(b, 0));
  u.add_edge(0, off);
  return u;
}

namespace detail {

inline TopologicalModel reverse_model(const TopologicalModel& m) {
  TopologicalModel r;
  r.vertex_map = m.vertex_map;
  for (const auto& [e, p] : m.edge_map) r.edge_map[{e.second, e.first}] = Path(p.rbegin(), p.rend());
  return r;
}

inline PackOrHit reverse_result(PackOrHit r) {
  for (auto& m : r.models) m = reverse_model(std::get<TopologicalModel>(m));
  r.notes.push_back("computed on the reversed graph");
  return r;
}

/// Exact minimum set meeting every cycle with at least l vertices.
inline VSet exact_l_cycle_hitting(const Digraph& g, int l, Budget* budget) {
  OracleBudget ob;
  ob.max_vertices = g.num_vertices();
  Budget local = ob.make();
  Budget& b = budget ? *budget : local;
  auto s = min_hitting(g, ob, [&](const Digraph& rest) { return has_long_cycle(rest, l, b); });
  return s ? *s : VSet{};
}

inline bool long_cycle_in(const Digraph& g, int l, Budget* budget) {
  Budget local = OracleBudget{}.make();
  return has_long_cycle(g, l, budget ? *budget : local);
}

inline int f1_value(const Digraph& g, const std::vector<VSet>& clusters, int l, const EPConfig& cfg,
                    std::map<size_t, VSet>& hit) {
  int f1 = 0;
  for (size_t i = 0; i < clusters.size(); ++i) {
    hit[i] = exact_l_cycle_hitting(induced_subgraph(g, clusters[i]), l, cfg.budget);
    f1 = std::max(f1, static_cast<int>(hit[i].size()));
  }
  return cfg.f1_strategy == F1Strategy::FixedBound ? cfg.f1_fixed : f1;
}

/// G with each group contracted onto its smallest vertex.
inline Digraph contract_groups(const Digraph& g, const std::vector<VSet>& groups) {
  std::map<Vertex, Vertex> rep;
  for (const VSet& c : groups)
    for (Vertex v : c) rep[v] = *c.begin();
  auto r = [&](Vertex v) {
    auto it = rep.find(v);
    return it == rep.end() ? v : it->second;
  };
  Digraph out;
  for (Vertex v : g.vertices()) out.add_vertex(r(v));
  for (auto [u, v] : g.edges())
    if (r(u) != r(v)) out.add_edge(r(u), r(v));
  return out;
}

/// Disjoint cycles with at least s vertices, picked greedily by smallest vertex.
inline std::vector<VSet> greedy_disjoint_cycles(Digraph g, int s) {
  std::vector<VSet> out;
  for (bool found = true; found;) {
    found = false;
    for (Vertex v : g.vertices())
      if (auto c = cycle_through(g, v, s)) {
        VSet vs(c->begin(), c->end());
        out.push_back(vs);
        g = delete_vertices(g, vs);
        found = true;
        break;
      }
  }
  return out;
}

inline PackOrHit bipartite_clusters(const Digraph& h, const Digraph& g, int l, int s, int k, const EPConfig& cfg) {
  if (k == 0) return make_packing(h, g, {});
  if (auto w = find_l_transit(g, l, cfg.budget)) {
    std::string msg = "graph is not l-cluster bipartite: transit cycle";
    for (Vertex v : w->c1) msg += " " + std::to_string(v);
    throw DomainError(msg);
  }
  auto cs = find_l_clusters(g, l, nullptr, cfg.budget);
  const auto& clusters = cs.clusters;
  std::map<size_t, VSet> hit;
  const int f1 = f1_value(g, clusters, l, cfg, hit);
  std::vector<std::string> notes{std::to_string(clusters.size()) + " l-clusters", "f1 = " + std::to_string(f1)};
  VSet sset;

  // Step 1: disjoint routes between distinct clusters.
  std::vector<VSet> sources, sinks;
  for (size_t i = 0; i < clusters.size(); ++i) {
    VSet others;
    for (size_t j = 0; j < clusters.size(); ++j)
      if (j != i) others.insert(clusters[j].begin(), clusters[j].end());
    auto fwd = reachable_from(g, clusters[i]);
    auto bwd = reachable_from(g, clusters[i], true);
    if (std::any_of(others.begin(), others.end(), [&](Vertex v) { return fwd.count(v) != 0; }))
      sources.push_back(clusters[i]);
    if (std::any_of(others.begin(), others.end(), [&](Vertex v) { return bwd.count(v) != 0; }))
      sinks.push_back(clusters[i]);
  }
  auto expand = [&](Vertex v, const std::vector<VSet>& small) {
    for (size_t i = 0; i < clusters.size(); ++i)
      if (*clusters[i].begin() == v) return hit[i];
    for (const VSet& c : small)
      if (*c.begin() == v) return c;
    return VSet{v};
  };
  if (!sources.empty() && !sinks.empty()) {
    Digraph gc = contract_groups(g, clusters);
    VSet src, snk;
    for (const VSet& c : sources) src.insert(*c.begin());
    for (const VSet& c : sinks) snk.insert(*c.begin());
    auto mr = menger_paths(gc, src, snk, k);
    if (mr.linked()) {
      notes.push_back("step 1: k cluster-to-cluster routes");
    } else {
      for (Vertex v : *mr.separator)
        for (Vertex x : expand(v, {})) sset.insert(x);
      notes.push_back("step 1: separator of size " + std::to_string(mr.separator->size()));
    }
  }

  // Step 2: clusters holding a whole model.
  std::vector<size_t> full;
  for (size_t i = 0; i < clusters.size(); ++i)
    if (find_model_unbounded(h, induced_subgraph(g, clusters[i]), MinorKind::Topological, cfg.budget)) full.push_back(i);
  if (static_cast<int>(full.size()) >= k) {
    std::vector<Model> ms;
    for (size_t j = 0; j < static_cast<size_t>(k); ++j)
      ms.push_back(*find_model_unbounded(h, induced_subgraph(g, clusters[full[j]]), MinorKind::Topological, cfg.budget));
    PackOrHit r = make_packing(h, g, ms);
    r.notes = notes;
    r.notes.push_back("step 2: k clusters each hold a model");
    return r;
  }
  for (size_t i : full) sset.insert(hit[i].begin(), hit[i].end());

  // Step 3: routes from clusters to short cycles outside them.
  VSet in_clusters;
  for (const VSet& c : clusters) in_clusters.insert(c.begin(), c.end());
  auto small = greedy_disjoint_cycles(delete_vertices(g, in_clusters), s);
  if (!clusters.empty() && !small.empty()) {
    std::vector<VSet> groups = clusters;
    groups.insert(groups.end(), small.begin(), small.end());
    Digraph gc = contract_groups(g, groups);
    VSet src, snk;
    for (const VSet& c : clusters) src.insert(*c.begin());
    for (const VSet& c : small) snk.insert(*c.begin());
    auto mr = menger_paths(gc, src, snk, (l - 1) * k);
    if (mr.linked()) {
      notes.push_back("step 3: (l-1)k routes to short cycles");
    } else {
      for (Vertex v : *mr.separator)
        for (Vertex x : expand(v, small)) sset.insert(x);
      notes.push_back("step 3: separator of size " + std::to_string(mr.separator->size()));
    }
  }

  const long long lk = static_cast<long long>(l - 1) * k;
  BoundAccount b{"2(k-1)*f1 + (l-1)k*max(f1,l) + k-1",
                 {{"k", k}, {"l", l}, {"s", s}, {"f1", f1}},
                 2LL * (k - 1) * f1 + lk * std::max(f1, l) + k - 1};
  return conclude_hitting(h, g, k, MinorKind::Topological, sset, b, cfg, notes);
}

}  // namespace detail

/// Pack-or-hit for an l-cycle joined by one edge to an s-cycle, on an
/// l-cluster bipartite graph. With `long_first` false the edge runs from the
/// s-cycle to the l-cycle and models are of the reversed pattern.
inline PackOrHit pack_or_hit_bipartite_clusters(const Digraph& g, int l, int s, int k, const EPConfig& cfg = {},
                                                bool long_first = true) {
  if (k < 0) throw DomainError("k must be non-negative");
  if (s > l) throw DomainError("expected s <= l");
  const Digraph h = two_cycles_pattern(l, s);
  if (long_first) return detail::bipartite_clusters(h, g, l, s, k, cfg);
  return detail::reverse_result(detail::bipartite_clusters(h, reversed(g), l, s, k, cfg));
}

namespace detail {

struct TwoCycleShape {
  int tail_len = 0;  // cycle the joining edge leaves
  int head_len = 0;
};

inline TwoCycleShape two_cycle_shape(const Digraph& h) {
  auto bg = strong_components(h);
  if (bg.size() != 2 || !is_weakly_connected(h)) throw DomainError("pattern must consist of exactly two strong components");
  TwoCycleShape out;
  for (int i = 0; i < 2; ++i) {
    Digraph c = induced_subgraph(h, VSet(bg.components[i].begin(), bg.components[i].end()));
    if (c.num_vertices() < 2 || c.num_edges() != c.num_vertices())
      throw DomainError("strong component " + std::to_string(i) + " is not a cycle");
    (i == 0 ? out.tail_len : out.head_len) = static_cast<int>(c.num_vertices());
  }
  if (bg.multiplicity(0, 1) != 1) throw DomainError("the two cycles must be joined by exactly one edge");
  return out;
}

struct TwoCycleRun {
  const Digraph& h;
  int l, s;
  const EPConfig& cfg;
  int width = 0;
  int f1 = 0;
  std::vector<std::string> notes;

  bool has(const Digraph& g) { return find_model_unbounded(h, g, MinorKind::Topological, cfg.budget).has_value(); }

  /// Smallest child tuple in (size, lexicographic) order whose union with Γ(t) holds a model.
  std::vector<int> pick_children(const Digraph& g, const DirectedTreeDecomposition& d, int t,
                                 const std::vector<int>& kids) {
    VSet base = d.big_gamma(t);
    auto holds = [&](const std::vector<int>& tuple) {
      VSet u = base;
      for (int c : tuple) {
        VSet b = d.subtree_union(c);
        u.insert(b.begin(), b.end());
      }
      return has(induced_subgraph(g, u));
    };
    if (holds({})) return {};
    for (int a : kids)
      if (holds({a})) return {a};
    for (size_t i = 0; i < kids.size(); ++i)
      for (size_t j = i + 1; j < kids.size(); ++j)
        if (holds({kids[i], kids[j]})) return {kids[i], kids[j]};
    return kids;
  }

  /// Returns k models, or a set with the recursion bound accumulated in `bound`.
  std::variant<std::vector<Model>, VSet> run(const Digraph& g, int k, long long& bound) {
    bound = 0;
    if (k == 0) return std::vector<Model>{};
    auto m = find_model_unbounded(h, g, MinorKind::Topological, cfg.budget);
    if (!m) return VSet{};
    if (k == 1) return std::vector<Model>{*m};

    DirectedTreeDecomposition d = compute_special_dtd(g);
    width = std::max(width, d.width());
    auto pre = d.tree.preorder();
    std::vector<std::pair<int, size_t>> order;
    for (size_t i = 0; i < pre.size(); ++i) order.emplace_back(d.tree.height(pre[i]), i);
    std::sort(order.begin(), order.end());
    int t = -1;
    for (auto [ht, i] : order)
      if (has(induced_subgraph(g, d.subtree_union(pre[i])))) {
        t = pre[i];
        break;
      }
    if (t < 0) throw std::logic_error("model of H in G but in no subtree of the decomposition");

    auto kids = d.tree.children(t);
    std::sort(kids.begin(), kids.end(), [&](int a, int b) {
      VSet x = d.subtree_union(a), y = d.subtree_union(b);
      Vertex mx = x.empty() ? INT32_MAX : *x.begin(), my = y.empty() ? INT32_MAX : *y.begin();
      return mx != my ? mx < my : a < b;
    });
    auto chosen = pick_children(g, d, t, kids);
    VSet gamma = d.big_gamma(t);
    VSet ft = gamma, st = gamma;
    for (int c : chosen) {
      VSet bc = d.subtree_union(c);
      ft.insert(bc.begin(), bc.end());
      Digraph gc = induced_subgraph(g, bc);
      VSet sc = exact_l_cycle_hitting(gc, l, cfg.budget);
      f1 = std::max(f1, static_cast<int>(sc.size()));
      VSet outside;
      for (Vertex v : bc)
        if (!gamma.count(v)) outside.insert(v);
      if (long_cycle_in(induced_subgraph(g, outside), l, cfg.budget)) st.insert(sc.begin(), sc.end());
    }
    auto mt = find_model_unbounded(h, induced_subgraph(g, ft), MinorKind::Topological, cfg.budget);
    if (!mt) throw std::logic_error("chosen children hold no model");

    long long sub_bound = 0;
    auto sub = run(delete_vertices(g, ft), k - 1, sub_bound);
    if (auto* ms = std::get_if<std::vector<Model>>(&sub)) {
      ms->push_back(*mt);
      return sub;
    }
    VSet out = std::get<VSet>(sub);
    out.insert(st.begin(), st.end());

    // Remaining models meet F(t) − S(t). Phase one: l-cluster part.
    Digraph rest = delete_vertices(g, out);
    if (has(rest)) {
      if (!find_l_transit(rest, l, cfg.budget)) {
        EPConfig inner = cfg;
        inner.verify = false;
        auto r = bipartite_clusters(h, rest, l, s, k, inner);
        if (r.packing()) return r.models;
        out.insert(r.hitting_set.begin(), r.hitting_set.end());
        notes.push_back("cluster phase added " + std::to_string(r.hitting_set.size()) + " vertices");
      } else {
        notes.push_back("cluster phase skipped: remainder has a transit cycle");
      }
    }
    // Phase two: l-cycles left inside F(t).
    rest = delete_vertices(g, out);
    if (has(rest)) {
      VSet inside;
      for (Vertex v : ft)
        if (!out.count(v)) inside.insert(v);
      VSet extra = exact_l_cycle_hitting(induced_subgraph(rest, inside), l, cfg.budget);
      out.insert(extra.begin(), extra.end());
      if (!extra.empty()) notes.push_back("F(t) phase added " + std::to_string(extra.size()) + " vertices");
    }
    bound = 5LL * width + 10 + 2LL * f1 + sub_bound + 3LL * static_cast<long long>(st.size());
    return out;
  }
};

inline PackOrHit two_cycles(const Digraph& h, const Digraph& g, int k, const EPConfig& cfg, int l, int s) {
  TwoCycleRun run{h, l, s, cfg, 0, 0, {}};
  long long bound = 0;
  auto res = run.run(g, k, bound);
  if (auto* ms = std::get_if<std::vector<Model>>(&res)) {
    PackOrHit r = make_packing(h, g, *ms);
    r.notes = run.notes;
    return r;
  }
  BoundAccount b{"f(k,w) = 5w+10+2*f1+f(k-1,w)+3|S_k|", {{"k", k}, {"w", run.width}, {"f1", run.f1}}, bound};
  return conclude_hitting(h, g, k, MinorKind::Topological, std::get<VSet>(res), b, cfg, run.notes);
}

}  // namespace detail

/// Pack-or-hit for two directed cycles joined by one edge, topological kind.
inline PackOrHit pack_or_hit_two_cycles(const Digraph& h2, const Digraph& g, int k, const EPConfig& cfg = {}) {
  auto shape = detail::two_cycle_shape(h2);
  if (k < 0) throw DomainError("k must be non-negative");
  const int l = std::max(shape.tail_len, shape.head_len), s = std::min(shape.tail_len, shape.head_len);
  if (shape.tail_len >= shape.head_len) return detail::two_cycles(h2, g, k, cfg, l, s);
  auto r = detail::two_cycles(reversed(h2), reversed(g), k, cfg, l, s);
  return detail::reverse_result(std::move(r));
}

}  // namespace epd
