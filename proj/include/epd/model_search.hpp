#pragma once

#include <algorithm>
#include <optional>
#include <unordered_set>
#include <vector>

#include "epd/digraph.hpp"
#include "epd/model.hpp"

namespace epd {

struct SearchRequest {
  MinorKind kind = MinorKind::Topological;
  /// G-vertices the model may use; all of V(G) when absent.
  std::optional<std::set<Vertex>> allowed;
  /// Pairs (a, b) of H-vertices whose roots must satisfy root(a) < root(b).
  std::vector<std::pair<Vertex, Vertex>> root_order;
  Budget* budget = nullptr;
  size_t memo_limit = 4'000'000;
};

namespace detail {

/// Backtracking search for a tree-like butterfly model or a topological
/// model. Each step either places the root of a component's first vertex or
/// routes one H-edge, possibly placing a new endpoint at the end of the path.
class ModelSearch {
 public:
  ModelSearch(const Digraph& h, const Digraph& g, const SearchRequest& req)
      : h_(h), hd_(h), gd_(g), req_(req), butterfly_(req.kind == MinorKind::Butterfly) {
    allowed_ = gd_.all();
    if (req.allowed) {
      allowed_ = {};
      for (Vertex v : *req.allowed)
        if (gd_.index.count(v)) allowed_.insert(gd_.index.at(v));
    }
    nh_ = hd_.n;
    for (int a = 0; a < nh_; ++a)
      for (int b : hd_.out_list[a]) hedges_.emplace_back(a, b);
    auto bg = strong_components(h);
    hscc_.assign(nh_, -1);
    for (int c = 0; c < static_cast<int>(bg.size()); ++c)
      for (Vertex v : bg.components[c]) hscc_[hd_.index.at(v)] = c;
    scc_nontrivial_.assign(bg.size(), false);
    for (int c = 0; c < static_cast<int>(bg.size()); ++c) scc_nontrivial_[c] = bg.components[c].size() > 1;
    for (auto [a, b] : req.root_order) order_.emplace_back(hd_.index.at(a), hd_.index.at(b));
    build_plan();
  }

  std::optional<Model> run() {
    if (nh_ == 0) return empty_model();
    if (nh_ > allowed_.size()) return std::nullopt;
    root_.assign(nh_, -1);
    tin_.assign(nh_, {});
    tout_.assign(nh_, {});
    in_arcs_.assign(nh_, {});
    out_arcs_.assign(nh_, {});
    paths_.assign(hedges_.size(), {});
    gedge_.assign(hedges_.size(), {-1, -1});
    routed_.assign(hedges_.size(), false);
    scc_image_.assign(scc_nontrivial_.size(), {});
    used_ = {};
    if (!go(0)) return std::nullopt;
    return extract();
  }

 private:
  struct Step {
    bool place = false;
    int hv = -1;       // Place: vertex to root
    int edge = -1;     // Route: edge index
    int fresh = -1;    // Route: endpoint placed by this step, or -1
  };

  // ---- plan ---------------------------------------------------------------

  void build_plan() {
    std::vector<bool> placed(nh_, false), routed(hedges_.size(), false);
    std::vector<std::vector<int>> comps;
    {
      std::vector<bool> seen(nh_, false);
      for (int s = 0; s < nh_; ++s) {
        if (seen[s]) continue;
        std::vector<int> comp{s};
        seen[s] = true;
        for (size_t i = 0; i < comp.size(); ++i) {
          int v = comp[i];
          for (const auto* nb : {&hd_.out_list[v], &hd_.in_list[v]})
            for (int w : *nb)
              if (!seen[w]) {
                seen[w] = true;
                comp.push_back(w);
              }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(comp);
      }
      std::stable_sort(comps.begin(), comps.end(),
                       [](const auto& x, const auto& y) { return x.size() > y.size(); });
    }
    auto deg = [&](int v) { return hd_.out[v].size() + hd_.in[v].size(); };
    for (const auto& comp : comps) {
      int start = comp.front();
      for (int v : comp)
        if (deg(v) > deg(start)) start = v;
      steps_.push_back({true, start, -1, -1});
      placed[start] = true;
      while (true) {
        int pick = -1;
        for (size_t e = 0; e < hedges_.size() && pick < 0; ++e)
          if (!routed[e] && placed[hedges_[e].first] && placed[hedges_[e].second]) pick = static_cast<int>(e);
        if (pick >= 0) {
          routed[pick] = true;
          steps_.push_back({false, -1, pick, -1});
          continue;
        }
        int best_v = -1, best_links = -1, best_deg = -1;
        for (int v : comp) {
          if (placed[v]) continue;
          int links = 0;
          for (auto [a, b] : hedges_)
            if ((a == v && placed[b]) || (b == v && placed[a])) ++links;
          if (links == 0) continue;
          int d = static_cast<int>(deg(v));
          if (links > best_links || (links == best_links && d > best_deg)) {
            best_v = v;
            best_links = links;
            best_deg = d;
          }
        }
        if (best_v < 0) break;
        for (size_t e = 0; e < hedges_.size(); ++e) {
          auto [a, b] = hedges_[e];
          if (!routed[e] && ((a == best_v && placed[b]) || (b == best_v && placed[a]))) {
            routed[e] = true;
            placed[best_v] = true;
            steps_.push_back({false, -1, static_cast<int>(e), best_v});
            break;
          }
        }
      }
    }
    // Pending bookkeeping: for each step index, which H-vertices still have work.
    last_touch_.assign(nh_, -1);
    for (int s = 0; s < static_cast<int>(steps_.size()); ++s) {
      const Step& st = steps_[s];
      if (st.place) {
        last_touch_[st.hv] = std::max(last_touch_[st.hv], s);
      } else {
        auto [a, b] = hedges_[st.edge];
        last_touch_[a] = std::max(last_touch_[a], s);
        last_touch_[b] = std::max(last_touch_[b], s);
      }
    }
    for (auto [a, b] : order_) {
      int s = std::max(last_touch_[a], last_touch_[b]);
      last_touch_[a] = std::max(last_touch_[a], s);
      last_touch_[b] = std::max(last_touch_[b], s);
    }
    scc_last_.assign(scc_nontrivial_.size(), -1);
    for (int s = 0; s < static_cast<int>(steps_.size()); ++s) {
      if (steps_[s].place) continue;
      auto [a, b] = hedges_[steps_[s].edge];
      if (hscc_[a] == hscc_[b]) scc_last_[hscc_[a]] = s;
    }
  }

  // ---- state helpers -------------------------------------------------------

  VertexSet free_set() const { return allowed_ - used_; }

  VertexSet sources(int a) const {
    if (butterfly_) return tout_[a];
    VertexSet s;
    s.insert(root_[a]);
    return s;
  }
  VertexSet targets(int b) const {
    if (butterfly_) return tin_[b];
    VertexSet s;
    s.insert(root_[b]);
    return s;
  }

  bool intra(int e) const {
    auto [a, b] = hedges_[e];
    return hscc_[a] == hscc_[b] && scc_nontrivial_[hscc_[a]];
  }

  /// Strong component of G[free ∪ image(C)] holding `anchor`.
  VertexSet region(int c, int anchor) const {
    VertexSet within = free_set() | scc_image_[c];
    within.insert(anchor);
    VertexSet single;
    single.insert(anchor);
    return gd_.reach(single, within) & gd_.reach(single, within, true);
  }

  bool root_order_ok(int v, int x) const {
    for (auto [a, b] : order_) {
      if (a == v && root_[b] >= 0 && !(x < root_[b])) return false;
      if (b == v && root_[a] >= 0 && !(root_[a] < x)) return false;
    }
    return true;
  }

  bool root_candidate_ok(int v, int x) const {
    if (!butterfly_) {
      if (gd_.out[x].size() < hd_.out[v].size() || gd_.in[x].size() < hd_.in[v].size()) return false;
    } else {
      if ((hd_.out[v].size() > 0 && gd_.out[x].empty()) || (hd_.in[v].size() > 0 && gd_.in[x].empty())) return false;
    }
    return root_order_ok(v, x);
  }

  bool feasible(int si) const {
    VertexSet fr = free_set();
    for (int s = si; s < static_cast<int>(steps_.size()); ++s) {
      const Step& st = steps_[s];
      if (st.place) continue;
      auto [a, b] = hedges_[st.edge];
      if (root_[a] < 0 || root_[b] < 0) continue;
      VertexSet src = sources(a), tgt = targets(b);
      VertexSet within = fr;
      if (intra(st.edge)) {
        VertexSet reg = region(hscc_[a], root_[a]);
        within &= reg;
        src &= reg;
        tgt &= reg;
      }
      VertexSet r = gd_.reach(src, src | within);
      bool ok = false;
      r.for_each([&](int x) { ok = ok || gd_.out[x].intersects(tgt); });
      if (!ok) return false;
    }
    if (!butterfly_) {
      for (int v = 0; v < nh_; ++v) {
        if (root_[v] < 0) continue;
        int need_out = 0, need_in = 0;
        VertexSet okout = fr & gd_.out[root_[v]], okin = fr & gd_.in[root_[v]];
        int extra_out = 0, extra_in = 0;
        for (int s = si; s < static_cast<int>(steps_.size()); ++s) {
          if (steps_[s].place) continue;
          auto [a, b] = hedges_[steps_[s].edge];
          if (a == v) {
            ++need_out;
            if (root_[b] >= 0 && gd_.has_edge(root_[v], root_[b])) ++extra_out;
          }
          if (b == v) {
            ++need_in;
            if (root_[a] >= 0 && gd_.has_edge(root_[a], root_[v])) ++extra_in;
          }
        }
        if (need_out > okout.size() + extra_out || need_in > okin.size() + extra_in) return false;
      }
    }
    return true;
  }

  std::vector<uint64_t> memo_key(int si) const {
    std::vector<uint64_t> key;
    key.push_back(static_cast<uint64_t>(si));
    for (auto w : used_.words()) key.push_back(w);
    for (int v = 0; v < nh_; ++v) {
      if (root_[v] < 0 || last_touch_[v] < si) continue;
      key.push_back(static_cast<uint64_t>(v) << 32 | static_cast<uint32_t>(root_[v]));
      if (butterfly_) {
        for (auto w : tout_[v].words()) key.push_back(w);
        for (auto w : tin_[v].words()) key.push_back(w);
      }
    }
    for (size_t c = 0; c < scc_last_.size(); ++c)
      if (scc_last_[c] >= si)
        for (auto w : scc_image_[c].words()) key.push_back(w);
    return key;
  }

  // ---- search ----------------------------------------------------------------

  bool go(int si) {
    if (si == static_cast<int>(steps_.size())) return true;
    if (req_.budget) req_.budget->tick("model search");
    std::vector<uint64_t> key = memo_key(si);
    if (failed_.count(key)) return false;
    bool ok = steps_[si].place ? do_place(si) : do_route(si);
    if (!ok && failed_.size() < req_.memo_limit) failed_.insert(std::move(key));
    return ok;
  }

  bool do_place(int si) {
    int v = steps_[si].hv;
    VertexSet fr = free_set();
    bool need_cycle = scc_nontrivial_[hscc_[v]];
    bool found = false;
    fr.for_each([&](int x) {
      if (found || !root_candidate_ok(v, x)) return;
      if (need_cycle) {
        VertexSet single;
        single.insert(x);
        if ((gd_.reach(single, fr) & gd_.reach(single, fr, true)).size() < 2) return;
      }
      set_root(v, x);
      if (feasible(si + 1) && go(si + 1)) {
        found = true;
        return;
      }
      unset_root(v, x);
    });
    return found;
  }

  void set_root(int v, int x) {
    root_[v] = x;
    tin_[v].insert(x);
    tout_[v].insert(x);
    used_.insert(x);
    if (scc_nontrivial_[hscc_[v]]) scc_image_[hscc_[v]].insert(x);
  }
  void unset_root(int v, int x) {
    root_[v] = -1;
    tin_[v].erase(x);
    tout_[v].erase(x);
    used_.erase(x);
    if (scc_nontrivial_[hscc_[v]]) scc_image_[hscc_[v]].erase(x);
  }

  bool do_route(int si) {
    const Step& st = steps_[si];
    int e = st.edge;
    auto [a, b] = hedges_[e];
    bool backwards = st.fresh >= 0 && st.fresh == a;
    int anchor_v = backwards ? b : a;
    VertexSet within = free_set();
    VertexSet reg;
    bool restricted = intra(e);
    if (restricted) {
      reg = region(hscc_[anchor_v], root_[anchor_v]);
      within &= reg;
    }
    VertexSet starts = backwards ? targets(b) : sources(a);
    if (restricted) starts &= reg;
    VertexSet goals;
    if (st.fresh < 0) {
      goals = targets(b);
      if (restricted) goals &= reg;
    }
    std::vector<int> path;
    bool found = false;
    starts.for_each([&](int s) {
      if (found) return;
      path.assign(1, s);
      found = extend(si, path, within, goals, backwards);
    });
    return found;
  }

  /// Depth-first extension of `path` (stored in walking order).
  bool extend(int si, std::vector<int>& path, const VertexSet& within, const VertexSet& goals, bool backwards) {
    if (req_.budget) req_.budget->tick("model search");
    const Step& st = steps_[si];
    int cur = path.back();
    const VertexSet& nbrs = backwards ? gd_.in[cur] : gd_.out[cur];
    if (st.fresh < 0) {
      bool found = false;
      (nbrs & goals).for_each([&](int t) {
        if (!found) found = finish(si, path, t, backwards);
      });
      if (found) return true;
    }
    VertexSet onpath;
    for (int x : path) onpath.insert(x);
    VertexSet avail = within - onpath;
    VertexSet useful = avail;
    if (st.fresh < 0) {
      // Keep only vertices that can still reach a goal.
      VertexSet back = gd_.reach(goals, avail | goals, !backwards);
      useful &= back;
    }
    bool found = false;
    (nbrs & useful).for_each([&](int y) {
      if (found) return;
      path.push_back(y);
      if (st.fresh >= 0 && root_candidate_ok(st.fresh, y)) found = finish(si, path, -1, backwards);
      if (!found) found = extend(si, path, within, goals, backwards);
      path.pop_back();
    });
    return found;
  }

  /// Commits a walked path. `t` is the goal reached, or -1 when the last path
  /// vertex becomes the root of the step's fresh endpoint.
  bool finish(int si, const std::vector<int>& walked, int t, bool backwards) {
    const Step& st = steps_[si];
    int e = st.edge;
    auto [a, b] = hedges_[e];
    // Forward order p[0] .. p[last].
    std::vector<int> p = walked;
    if (t >= 0) p.push_back(t);
    if (backwards) std::reverse(p.begin(), p.end());
    int m = static_cast<int>(p.size()) - 2;  // interior count
    bool fresh_head = st.fresh == b, fresh_tail = st.fresh == a;
    int c = intra(e) ? hscc_[a] : -1;

    if (!butterfly_) {
      VertexSet added;
      for (int i = 1; i <= m; ++i) added.insert(p[i]);
      if (fresh_head) set_root(b, p.back());
      if (fresh_tail) set_root(a, p.front());
      used_ |= added;
      if (c >= 0) scc_image_[c] |= added;
      paths_[e] = p;
      bool ok = feasible(si + 1) && go(si + 1);
      if (ok) return true;
      paths_[e].clear();
      used_ -= added;
      if (c >= 0) scc_image_[c] -= added;
      if (fresh_head) unset_root(b, p.back());
      if (fresh_tail) unset_root(a, p.front());
      return false;
    }

    if (fresh_head) set_root(b, p.back());
    if (fresh_tail) set_root(a, p.front());
    int ca = scc_nontrivial_[hscc_[a]] ? hscc_[a] : -1;
    int cb = scc_nontrivial_[hscc_[b]] ? hscc_[b] : -1;
    for (int j = 0; j <= m; ++j) {
      VertexSet to_a, to_b;
      for (int i = 1; i <= j; ++i) to_a.insert(p[i]);
      for (int i = j + 1; i <= m; ++i) to_b.insert(p[i]);
      tout_[a] |= to_a;
      tin_[b] |= to_b;
      used_ |= to_a | to_b;
      if (ca >= 0) scc_image_[ca] |= to_a;
      if (cb >= 0) scc_image_[cb] |= to_b;
      size_t oa = out_arcs_[a].size(), ib = in_arcs_[b].size();
      for (int i = 0; i < j; ++i) out_arcs_[a].emplace_back(p[i], p[i + 1]);
      for (int i = j + 1; i <= m; ++i) in_arcs_[b].emplace_back(p[i], p[i + 1]);
      gedge_[e] = {p[j], p[j + 1]};
      bool ok = feasible(si + 1) && go(si + 1);
      if (ok) return true;
      out_arcs_[a].resize(oa);
      in_arcs_[b].resize(ib);
      tout_[a] -= to_a;
      tin_[b] -= to_b;
      used_ -= to_a | to_b;
      if (ca >= 0) scc_image_[ca] -= to_a;
      if (cb >= 0) scc_image_[cb] -= to_b;
    }
    if (fresh_head) unset_root(b, p.back());
    if (fresh_tail) unset_root(a, p.front());
    return false;
  }

  // ---- output ------------------------------------------------------------------

  Model empty_model() const {
    if (butterfly_) return ButterflyModel{};
    return TopologicalModel{};
  }

  Model extract() const {
    auto gid = [&](int x) { return gd_.ids[x]; };
    if (!butterfly_) {
      TopologicalModel m;
      for (int v = 0; v < nh_; ++v) m.vertex_map[hd_.ids[v]] = gid(root_[v]);
      for (size_t e = 0; e < hedges_.size(); ++e) {
        Path p;
        for (int x : paths_[e]) p.push_back(gid(x));
        m.edge_map[{hd_.ids[hedges_[e].first], hd_.ids[hedges_[e].second]}] = p;
      }
      return m;
    }
    ButterflyModel m;
    for (int v = 0; v < nh_; ++v) {
      Vertex hv = hd_.ids[v];
      std::set<Vertex> s;
      (tin_[v] | tout_[v]).for_each([&](int x) { s.insert(gid(x)); });
      m.vertex_map[hv] = s;
      m.roots[hv] = gid(root_[v]);
      auto& ia = m.in_branching[hv];
      for (auto [x, y] : in_arcs_[v]) ia.emplace_back(gid(x), gid(y));
      auto& oa = m.out_branching[hv];
      for (auto [x, y] : out_arcs_[v]) oa.emplace_back(gid(x), gid(y));
    }
    for (size_t e = 0; e < hedges_.size(); ++e)
      m.edge_map[{hd_.ids[hedges_[e].first], hd_.ids[hedges_[e].second]}] = {gid(gedge_[e].first),
                                                                            gid(gedge_[e].second)};
    return m;
  }

  const Digraph& h_;
  DenseGraph hd_, gd_;
  const SearchRequest& req_;
  bool butterfly_;
  VertexSet allowed_;
  int nh_ = 0;
  std::vector<std::pair<int, int>> hedges_;
  std::vector<int> hscc_;
  std::vector<bool> scc_nontrivial_;
  std::vector<std::pair<int, int>> order_;
  std::vector<Step> steps_;
  std::vector<int> last_touch_, scc_last_;

  std::vector<int> root_;
  std::vector<VertexSet> tin_, tout_, scc_image_;
  std::vector<std::vector<std::pair<int, int>>> in_arcs_, out_arcs_;
  std::vector<std::vector<int>> paths_;
  std::vector<std::pair<int, int>> gedge_;
  std::vector<bool> routed_;
  VertexSet used_;
  std::unordered_set<std::vector<uint64_t>, KeyHash> failed_;
};

}  // namespace detail

/// Exact search for a model of H in G (no size cutoff; bounded only by the
/// optional budget).
inline std::optional<Model> search_model(const Digraph& h, const Digraph& g, const SearchRequest& req = {}) {
  detail::ModelSearch s(h, g, req);
  return s.run();
}

namespace detail {

/// Splits a model of the disjoint union of copies of H (copy i shifted by
/// offsets[i]) into one model per copy.
inline std::vector<Model> split_copies(const Digraph& h, const std::vector<Vertex>& offsets, const Model& m) {
  std::vector<Model> out;
  for (size_t i = 0; i < offsets.size(); ++i) {
    Vertex off = offsets[i];
    auto back = [&](Vertex v) { return v - off; };
    auto mine = [&](Vertex v) { return v >= off && h.has_vertex(v - off); };
    if (auto* t = std::get_if<TopologicalModel>(&m)) {
      TopologicalModel c;
      for (auto [v, x] : t->vertex_map)
        if (mine(v)) c.vertex_map[back(v)] = x;
      for (const auto& [e, p] : t->edge_map)
        if (mine(e.first) && mine(e.second)) c.edge_map[{back(e.first), back(e.second)}] = p;
      out.emplace_back(c);
    } else {
      const auto& b = std::get<ButterflyModel>(m);
      ButterflyModel c;
      for (const auto& [v, s] : b.vertex_map)
        if (mine(v)) c.vertex_map[back(v)] = s;
      for (auto [v, r] : b.roots)
        if (mine(v)) c.roots[back(v)] = r;
      for (const auto& [v, a] : b.in_branching)
        if (mine(v)) c.in_branching[back(v)] = a;
      for (const auto& [v, a] : b.out_branching)
        if (mine(v)) c.out_branching[back(v)] = a;
      for (auto [e, ge] : b.edge_map)
        if (mine(e.first) && mine(e.second)) c.edge_map[{back(e.first), back(e.second)}] = ge;
      out.emplace_back(c);
    }
  }
  return out;
}

}  // namespace detail

/// Exact search for k pairwise vertex-disjoint models of H in G.
inline std::optional<std::vector<Model>> search_disjoint_models(const Digraph& h, const Digraph& g, int k,
                                                                SearchRequest req = {}) {
  if (k < 0) throw DomainError("k must be non-negative");
  if (k == 0) return std::vector<Model>{};
  if (h.empty()) return std::vector<Model>(k, req.kind == MinorKind::Butterfly ? Model{ButterflyModel{}}
                                                                                : Model{TopologicalModel{}});
  Digraph kh;
  std::vector<Vertex> offsets;
  for (int i = 0; i < k; ++i) {
    auto [u, off] = disjoint_union(kh, h);
    kh = u;
    offsets.push_back(off);
  }
  // Copies are interchangeable: order them by the root of their first plan vertex.
  if (is_weakly_connected(h)) {
    DenseGraph hd(h);
    int start = 0;
    for (int v = 0; v < hd.n; ++v)
      if (hd.out[v].size() + hd.in[v].size() > hd.out[start].size() + hd.in[start].size()) start = v;
    Vertex s = hd.ids[start];
    for (int i = 0; i + 1 < k; ++i) req.root_order.emplace_back(s + offsets[i], s + offsets[i + 1]);
  }
  auto m = search_model(kh, g, req);
  if (!m) return std::nullopt;
  return detail::split_copies(h, offsets, *m);
}

}  // namespace epd
