#pragma once

#include <optional>

#include "epd/dtd.hpp"
#include "epd/linkage.hpp"
#include "epd/minors.hpp"

namespace epd {

namespace detail {

class BranchEnumeration {
 public:
  BranchEnumeration(const Digraph& h, const Digraph& g, const DirectedTreeDecomposition& d, Budget* budget)
      : h_(h), g_(g), d_(d), budget_(budget), hv_(h.vertices()), gv_(g.vertices()) {
    std::stable_sort(hv_.begin(), hv_.end(), [&](Vertex a, Vertex b) {
      return degrees(h, a).total > degrees(h, b).total;
    });
  }

  std::optional<TopologicalModel> run() {
    if (hv_.size() > gv_.size()) return std::nullopt;
    if (assign(0)) return found_;
    return std::nullopt;
  }

 private:
  bool fits(Vertex x, Vertex gx) const {
    auto dh = degrees(h_, x);
    auto dg = degrees(g_, gx);
    return dg.in >= dh.in && dg.out >= dh.out;
  }

  /// Cheap necessary condition: every mapped edge still has a path avoiding other branch vertices.
  bool routable() const {
    std::set<Vertex> branch;
    for (auto [_, gx] : phi_) branch.insert(gx);
    for (auto [a, b] : h_.edges()) {
      auto ia = phi_.find(a), ib = phi_.find(b);
      if (ia == phi_.end() || ib == phi_.end()) continue;
      std::set<Vertex> block = branch;
      block.erase(ia->second);
      block.erase(ib->second);
      auto r = reachable_from(delete_vertices(g_, block), {ia->second});
      if (!r.count(ib->second)) return false;
    }
    return true;
  }

  bool assign(size_t i) {
    if (budget_) budget_->tick("bounded-width model search");
    if (i == hv_.size()) return link();
    Vertex x = hv_[i];
    for (Vertex gx : gv_) {
      if (taken_.count(gx) || !fits(x, gx)) continue;
      phi_[x] = gx;
      taken_.insert(gx);
      if (routable() && assign(i + 1)) return true;
      taken_.erase(gx);
      phi_.erase(x);
    }
    return false;
  }

  bool link() {
    std::vector<Edge> sigma;
    auto edges = h_.edges();
    for (auto [a, b] : edges) sigma.emplace_back(phi_[a], phi_[b]);
    for (Vertex x : h_.vertices())
      if (h_.in_neighbors(x).empty() && h_.out_neighbors(x).empty()) sigma.emplace_back(phi_[x], phi_[x]);
    LinkageSearch search(g_, sigma, &d_, budget_);
    auto l = search.run();
    if (!l) return false;
    found_ = TopologicalModel{};
    found_.vertex_map = phi_;
    for (size_t j = 0; j < edges.size(); ++j) found_.edge_map[edges[j]] = l->paths[j];
    return true;
  }

  const Digraph& h_;
  const Digraph& g_;
  const DirectedTreeDecomposition& d_;
  Budget* budget_;
  std::vector<Vertex> hv_, gv_;
  std::map<Vertex, Vertex> phi_;
  std::set<Vertex> taken_;
  TopologicalModel found_;
};

}  // namespace detail

/// Model search guided by a directed tree decomposition of G: branch vertices
/// are enumerated and the edges of H are completed by a decomposition-backed
/// σ-linkage. Butterfly models come from the topological ones when every
/// vertex of H allows the degree conversion, otherwise from the exact engine.
inline std::optional<Model> find_model_bounded_dtw(const Digraph& h, const Digraph& g,
                                                   const DirectedTreeDecomposition& d, MinorKind kind,
                                                   Budget* budget = nullptr) {
  auto rep = validate_dtd(g, d);
  if (!rep.ok()) throw DomainError("invalid decomposition: " + rep.violations.front());
  if (kind == MinorKind::Butterfly && !degree_conversion_applies(h)) return find_model_unbounded(h, g, kind, budget);
  auto m = detail::BranchEnumeration(h, g, d, budget).run();
  if (!m) return std::nullopt;
  if (kind == MinorKind::Topological) return Model{*m};
  return Model{topological_to_butterfly(h, *m)};
}

}  // namespace epd
