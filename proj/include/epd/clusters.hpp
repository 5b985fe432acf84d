#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "epd/dtd.hpp"
#include "epd/linkage.hpp"

namespace epd {

/// A cycle with at least l vertices is an l-cycle.
struct LClusterSet {
  int l = 0;
  std::vector<VSet> clusters;
  bool transit_free = true;
};

struct TransitWitness {
  Path c1, c2, c3;  // c1 is the transit cycle of c2, c3
  Path path;        // from c2 to c3 through c1
};

namespace detail {

/// Every directed cycle with at least l vertices, once per vertex set, as a
/// vertex sequence starting at its smallest vertex.
inline std::vector<Path> l_cycles(const Digraph& g, int l, Budget* budget = nullptr) {
  std::vector<Path> out;
  std::set<VSet> seen;
  for (Vertex s : g.vertices()) {
    Path p{s};
    std::set<Vertex> on{s};
    std::function<void()> go = [&]() {
      if (budget) budget->tick("cycle enumeration");
      for (Vertex y : g.out_neighbors(p.back())) {
        if (y == s && static_cast<int>(p.size()) >= std::max(l, 2)) {
          VSet vs(p.begin(), p.end());
          if (seen.insert(vs).second) out.push_back(p);
          continue;
        }
        if (y <= s || on.count(y)) continue;
        p.push_back(y);
        on.insert(y);
        go();
        on.erase(y);
        p.pop_back();
      }
    };
    go();
  }
  return out;
}

/// Lexicographically first l-cycle through v, by depth-first search.
inline std::optional<Path> cycle_through(const Digraph& g, Vertex v, int l) {
  Path p{v};
  std::set<Vertex> on{v};
  std::function<bool()> go = [&]() -> bool {
    for (Vertex y : g.out_neighbors(p.back())) {
      if (y == v && static_cast<int>(p.size()) >= std::max(l, 2)) return true;
      if (on.count(y)) continue;
      p.push_back(y);
      on.insert(y);
      if (go()) return true;
      on.erase(y);
      p.pop_back();
    }
    return false;
  };
  if (go()) return p;
  return std::nullopt;
}

/// l-cycle through v found by guessing l-1 further vertices and linking them
/// cyclically with a decomposition-backed σ-linkage.
inline std::optional<Path> cycle_through_linkage(const Digraph& g, Vertex v, int l, const DirectedTreeDecomposition& d,
                                                 Budget* budget) {
  int need = std::max(l, 2) - 1;
  auto verts = g.vertices();
  std::vector<Vertex> pick;
  std::set<Vertex> taken{v};
  std::optional<Path> found;
  std::function<bool()> go = [&]() -> bool {
    if (static_cast<int>(pick.size()) == need) {
      std::vector<Edge> sigma;
      Vertex prev = v;
      for (Vertex x : pick) sigma.emplace_back(prev, x), prev = x;
      sigma.emplace_back(prev, v);
      LinkageSearch search(g, sigma, &d, budget);
      auto link = search.run();
      if (!link) return false;
      Path c;
      for (const Path& q : link->paths) c.insert(c.end(), q.begin(), q.end() - 1);
      found = c;
      return true;
    }
    for (Vertex x : verts) {
      if (taken.count(x)) continue;
      pick.push_back(x);
      taken.insert(x);
      if (go()) return true;
      taken.erase(x);
      pick.pop_back();
    }
    return false;
  };
  go();
  return found;
}

/// Simple path starting in `from`, ending in `to`, meeting `via`.
inline std::optional<Path> path_through(const Digraph& g, const VSet& from, const VSet& via, const VSet& to,
                                        Budget* budget) {
  for (Vertex s : from) {
    Path p{s};
    std::set<Vertex> on{s};
    std::function<bool(bool)> go = [&](bool met) -> bool {
      if (budget) budget->tick("transit search");
      for (Vertex y : g.out_neighbors(p.back())) {
        if (on.count(y)) continue;
        bool m = met || via.count(y);
        p.push_back(y);
        if (to.count(y) && m) return true;
        on.insert(y);
        if (!to.count(y) && go(m)) return true;
        on.erase(y);
        p.pop_back();
      }
      return false;
    };
    if (go(via.count(s) != 0)) return p;
  }
  return std::nullopt;
}

}  // namespace detail

/// Some l-cycle C1 lies on a path linking two further l-cycles C2, C3, all
/// three pairwise disjoint. Returns the witness, or nothing when G is
/// l-transit free.
inline std::optional<TransitWitness> find_l_transit(const Digraph& g, int l, Budget* budget = nullptr) {
  auto cycles = detail::l_cycles(g, l, budget);
  std::vector<VSet> sets;
  for (const Path& c : cycles) sets.emplace_back(c.begin(), c.end());
  auto disjoint = [](const VSet& a, const VSet& b) {
    for (Vertex v : a)
      if (b.count(v)) return false;
    return true;
  };
  const size_t m = cycles.size();
  for (size_t a = 0; a < m; ++a)
    for (size_t b = 0; b < m; ++b) {
      if (a == b || !disjoint(sets[a], sets[b])) continue;
      for (size_t c = 0; c < m; ++c) {
        if (c == a || c == b || !disjoint(sets[a], sets[c]) || !disjoint(sets[b], sets[c])) continue;
        if (auto p = detail::path_through(g, sets[b], sets[a], sets[c], budget))
          return TransitWitness{cycles[a], cycles[b], cycles[c], *p};
      }
    }
  return std::nullopt;
}

inline std::pair<bool, std::optional<TransitWitness>> is_l_transit_free(const Digraph& g, int l,
                                                                        Budget* budget = nullptr) {
  auto w = find_l_transit(g, l, budget);
  return {!w.has_value(), w};
}

/// Every vertex on an l-cycle gets a corresponding l-cycle; vertices whose
/// corresponding cycles intersect share a cluster.
inline LClusterSet find_l_clusters(const Digraph& g, int l, const DirectedTreeDecomposition* d = nullptr,
                                   Budget* budget = nullptr) {
  LClusterSet out;
  out.l = l;
  std::vector<VSet> cyc;
  for (Vertex v : g.vertices()) {
    std::optional<Path> c = d ? detail::cycle_through_linkage(g, v, l, *d, budget) : detail::cycle_through(g, v, l);
    if (c) cyc.emplace_back(c->begin(), c->end());
  }
  // Merge intersecting cycles until the groups are disjoint.
  std::vector<VSet> groups;
  for (const VSet& c : cyc) {
    VSet merged = c;
    std::vector<VSet> rest;
    for (VSet& gset : groups) {
      bool meet = std::any_of(gset.begin(), gset.end(), [&](Vertex v) { return merged.count(v) != 0; });
      if (meet)
        merged.insert(gset.begin(), gset.end());
      else
        rest.push_back(std::move(gset));
    }
    rest.push_back(std::move(merged));
    groups = std::move(rest);
  }
  std::sort(groups.begin(), groups.end(), [](const VSet& a, const VSet& b) { return *a.begin() < *b.begin(); });
  out.clusters = groups;
  out.transit_free = !find_l_transit(g, l, budget).has_value();
  return out;
}

}  // namespace epd
