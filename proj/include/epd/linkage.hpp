#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "epd/dtd.hpp"
#include "epd/model.hpp"

namespace epd {

/// paths[i] links pairs[i]; paths are pairwise internally disjoint.
struct Linkage {
  std::vector<Edge> pairs;
  std::vector<Path> paths;
};

/// Internal vertices of one path may not lie anywhere on another path;
/// endpoints may be shared. A pair (u,u) is linked by [u].
inline std::vector<std::string> validate_linkage(const Digraph& g, const Linkage& l) {
  std::vector<std::string> out;
  if (l.pairs.size() != l.paths.size()) {
    out.push_back("linkage has " + std::to_string(l.paths.size()) + " paths for " + std::to_string(l.pairs.size()) + " pairs");
    return out;
  }
  for (size_t i = 0; i < l.paths.size(); ++i) {
    const Path& p = l.paths[i];
    if (p.empty() || p.front() != l.pairs[i].first || p.back() != l.pairs[i].second) {
      out.push_back("path " + std::to_string(i) + " does not link " + edge_str(l.pairs[i]));
      continue;
    }
    std::set<Vertex> seen;
    for (size_t j = 0; j < p.size(); ++j) {
      if (!g.has_vertex(p[j])) out.push_back("path " + std::to_string(i) + " uses unknown vertex " + std::to_string(p[j]));
      if (!seen.insert(p[j]).second) out.push_back("path " + std::to_string(i) + " repeats vertex " + std::to_string(p[j]));
      if (j + 1 < p.size() && !g.has_edge(p[j], p[j + 1]))
        out.push_back("path " + std::to_string(i) + " uses missing edge " + edge_str({p[j], p[j + 1]}));
    }
  }
  for (size_t i = 0; i < l.paths.size(); ++i)
    for (size_t j = 0; j < l.paths.size(); ++j) {
      if (i == j || l.paths[i].size() < 3) continue;
      std::set<Vertex> other(l.paths[j].begin(), l.paths[j].end());
      for (size_t a = 1; a + 1 < l.paths[i].size(); ++a)
        if (other.count(l.paths[i][a]))
          out.push_back("internal vertex " + std::to_string(l.paths[i][a]) + " of path " + std::to_string(i) +
                        " lies on path " + std::to_string(j));
    }
  return out;
}

namespace detail {

class LinkageSearch {
 public:
  LinkageSearch(const Digraph& g, const std::vector<Edge>& sigma, const DirectedTreeDecomposition* d, Budget* budget)
      : g_(g), sigma_(sigma), budget_(budget) {
    for (auto [s, t] : sigma) {
      endpoints_.insert(s);
      endpoints_.insert(t);
    }
    if (d)
      for (int t : d->tree.nodes)
        if (t != d->tree.root) regions_.push_back({d->subtree_union(t), d->guard(t)});
  }

  std::optional<Linkage> run() {
    paths_.clear();
    if (!route(0)) return std::nullopt;
    return Linkage{sigma_, paths_};
  }

 private:
  enum class Side { None, Inside, Left };
  struct Region {
    VSet subtree;
    VSet guard;
  };

  bool blocked(Vertex v) const { return used_.count(v) || endpoints_.count(v); }

  bool reachable(Vertex from, Vertex to, const std::set<Vertex>& extra) const {
    std::vector<Vertex> todo{from};
    std::set<Vertex> seen{from};
    while (!todo.empty()) {
      Vertex x = todo.back();
      todo.pop_back();
      for (Vertex y : g_.out_neighbors(x)) {
        if (y == to) return true;
        if (seen.count(y) || blocked(y) || extra.count(y)) continue;
        seen.insert(y);
        todo.push_back(y);
      }
    }
    return false;
  }

  bool remaining_feasible(size_t from) const {
    for (size_t j = from; j < sigma_.size(); ++j) {
      auto [s, t] = sigma_[j];
      if (s != t && !reachable(s, t, {})) return false;
    }
    return true;
  }

  bool route(size_t i) {
    if (i == sigma_.size()) return true;
    auto [s, t] = sigma_[i];
    if (s == t) {
      paths_.push_back({s});
      if (route(i + 1)) return true;
      paths_.pop_back();
      return false;
    }
    Path p{s};
    std::set<Vertex> on{s};
    std::vector<Side> sides(regions_.size(), Side::None);
    step(sides, s);
    return extend(i, p, on, sides);
  }

  /// Advances the per-region state; false when a Z-free walk re-enters a subtree it left.
  bool step(std::vector<Side>& sides, Vertex y) const {
    for (size_t r = 0; r < regions_.size(); ++r) {
      if (regions_[r].guard.count(y)) {
        sides[r] = Side::None;
      } else if (regions_[r].subtree.count(y)) {
        if (sides[r] == Side::Left) return false;
        sides[r] = Side::Inside;
      } else if (sides[r] == Side::Inside) {
        sides[r] = Side::Left;
      }
    }
    return true;
  }

  bool extend(size_t i, Path& p, std::set<Vertex>& on, const std::vector<Side>& sides) {
    if (budget_) budget_->tick("linkage search");
    Vertex t = sigma_[i].second;
    Vertex x = p.back();
    for (Vertex y : g_.out_neighbors(x)) {
      if (on.count(y)) continue;
      auto next = sides;
      if (!step(next, y)) continue;
      if (y == t) {
        p.push_back(t);
        paths_.push_back(p);
        std::vector<Vertex> inner(p.begin() + 1, p.end() - 1);
        used_.insert(inner.begin(), inner.end());
        if (remaining_feasible(i + 1) && route(i + 1)) return true;
        paths_.pop_back();
        p.pop_back();
        for (Vertex v : inner) used_.erase(v);
        continue;
      }
      if (blocked(y)) continue;
      if (!reachable(y, t, on)) continue;
      p.push_back(y);
      on.insert(y);
      if (extend(i, p, on, next)) return true;
      on.erase(y);
      p.pop_back();
    }
    return false;
  }

  const Digraph& g_;
  std::vector<Edge> sigma_;
  Budget* budget_;
  std::set<Vertex> endpoints_;
  std::set<Vertex> used_;
  std::vector<Path> paths_;
  std::vector<Region> regions_;
};

inline void check_sigma(const Digraph& g, const std::vector<Edge>& sigma) {
  for (auto [s, t] : sigma)
    if (!g.has_vertex(s) || !g.has_vertex(t))
      throw DomainError("linkage pair " + edge_str({s, t}) + " has an endpoint outside the graph");
}

}  // namespace detail

/// Exact σ-linkage. With a decomposition the search discards every partial
/// path that re-enters a subtree union after leaving it without meeting the
/// subtree's guard, which no path of G can do.
inline std::optional<Linkage> sigma_linkage(const Digraph& g, const std::vector<Edge>& sigma,
                                            const DirectedTreeDecomposition* d = nullptr, Budget* budget = nullptr,
                                            size_t bound = 16) {
  detail::check_sigma(g, sigma);
  if (d) {
    auto rep = validate_dtd(g, *d);
    if (!rep.ok()) throw DomainError("invalid decomposition: " + rep.violations.front());
  } else if (g.num_vertices() > bound) {
    throw DomainError("graph has " + std::to_string(g.num_vertices()) + " vertices, above the linkage bound " +
                      std::to_string(bound) + " without a decomposition");
  }
  detail::LinkageSearch search(g, sigma, d, budget);
  return search.run();
}

}  // namespace epd
