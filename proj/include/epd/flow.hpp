#pragma once

#include <optional>
#include <queue>
#include <vector>

#include "epd/digraph.hpp"
#include "epd/model.hpp"

namespace epd {

/// Exactly one arm is filled: k pairwise vertex-disjoint source-to-sink
/// paths, or a separator of fewer than k vertices meeting every such path.
struct MengerResult {
  std::vector<Path> paths;
  std::optional<std::set<Vertex>> separator;
  bool linked() const { return !separator.has_value(); }
};

namespace detail {

/// Max-flow on the split graph with unit vertex arcs: v_in = 2i, v_out = 2i+1.
class VertexFlow {
 public:
  explicit VertexFlow(int nodes) : adj_(nodes) {}

  void add(int a, int b, int cap) {
    adj_[a].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({b, cap, cap});
    adj_[b].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({a, 0, 0});
  }

  /// Augments along a shortest residual path; false when none is left.
  bool augment(int s, int t) {
    std::vector<int> via(adj_.size(), -1);
    std::vector<char> seen(adj_.size(), 0);
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty() && !seen[t]) {
      int x = q.front();
      q.pop();
      for (int a : adj_[x])
        if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = 1;
          via[arcs_[a].to] = a;
          q.push(arcs_[a].to);
        }
    }
    if (!seen[t]) return false;
    for (int x = t; x != s;) {
      int a = via[x];
      --arcs_[a].cap;
      ++arcs_[a ^ 1].cap;
      x = arcs_[a ^ 1].to;
    }
    return true;
  }

  std::vector<char> residual_reach(int s) const {
    std::vector<char> seen(adj_.size(), 0);
    std::vector<int> todo{s};
    seen[s] = 1;
    while (!todo.empty()) {
      int x = todo.back();
      todo.pop_back();
      for (int a : adj_[x])
        if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = 1;
          todo.push_back(arcs_[a].to);
        }
    }
    return seen;
  }

  /// Next node along a forward arc carrying flow, consuming one unit.
  int follow(int x, const std::vector<char>& forward) {
    for (int a : adj_[x])
      if (forward[a] && arcs_[a].cap < arcs_[a].orig) {
        ++arcs_[a].cap;
        return arcs_[a].to;
      }
    return -1;
  }

  std::vector<char> forward_mask() const {
    std::vector<char> f(arcs_.size(), 0);
    for (size_t a = 0; a < arcs_.size(); a += 2) f[a] = 1;
    return f;
  }

 private:
  struct Arc {
    int to;
    int cap;
    int orig;
  };
  std::vector<std::vector<int>> adj_;
  std::vector<Arc> arcs_;
};

}  // namespace detail

/// k vertex-disjoint paths from `sources` to `sinks`, or a separator of size < k.
inline MengerResult menger_paths(const Digraph& g, const std::set<Vertex>& sources, const std::set<Vertex>& sinks,
                                 int k) {
  auto verts = g.vertices();
  std::map<Vertex, int> idx;
  for (size_t i = 0; i < verts.size(); ++i) idx[verts[i]] = static_cast<int>(i);
  const int n = static_cast<int>(verts.size());
  const int s = 2 * n, t = 2 * n + 1;
  detail::VertexFlow f(2 * n + 2);
  const int inf = n + 1;  // only vertex arcs can be cut
  for (int i = 0; i < n; ++i) f.add(2 * i, 2 * i + 1, 1);
  for (auto [u, v] : g.edges()) f.add(2 * idx[u] + 1, 2 * idx[v], inf);
  for (Vertex v : sources)
    if (idx.count(v)) f.add(s, 2 * idx[v], inf);
  for (Vertex v : sinks)
    if (idx.count(v)) f.add(2 * idx[v] + 1, t, inf);
  int flow = 0;
  while (flow < k && f.augment(s, t)) ++flow;

  MengerResult r;
  if (flow >= k) {
    auto fwd = f.forward_mask();
    for (int p = 0; p < k; ++p) {
      Path path;
      int x = f.follow(s, fwd);
      while (x != t) {
        if (x % 2 == 0) path.push_back(verts[x / 2]);
        x = f.follow(x, fwd);
      }
      r.paths.push_back(path);
    }
    return r;
  }
  auto reach = f.residual_reach(s);
  std::set<Vertex> cut;
  for (int i = 0; i < n; ++i)
    if (reach[2 * i] && !reach[2 * i + 1]) cut.insert(verts[i]);
  r.separator = cut;
  return r;
}

}  // namespace epd
