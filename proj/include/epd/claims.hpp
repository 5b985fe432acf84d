#pragma once

#include <functional>
#include <string>
#include <vector>

#include "epd/ep_engine.hpp"
#include "epd/generators.hpp"
#include "epd/oracle.hpp"

namespace epd {

/// Oracle check of one counterexample instance: the pattern must have
/// packing number exactly 1 and survive the deletion of any vertex set of
/// size at most `deletion_order`.
struct ClaimCheck {
  std::string family;
  std::string pattern;
  int order = 0;
  MinorKind kind = MinorKind::Butterfly;
  size_t vertices = 0;
  int packing = 0;
  bool embeds = false;
  int deletion_order = 1;
  std::vector<VSet> deletion_failures;

  bool passed() const { return embeds && packing == 1 && deletion_failures.empty(); }
};

struct ClaimInstance {
  std::string family;
  std::string pattern;
  int order;
  MinorKind kind;
  Digraph h;
  std::function<Attachment(int)> build;
  int deletion_order = 1;
};

inline std::vector<ClaimInstance> attachment_claim_instances(int max_order) {
  Digraph c3 = directed_cycle(3), digon = directed_cycle(2);
  Digraph parallel = two_cycles_pattern(2, 2);
  parallel.add_edge(1, 3);
  Digraph chain = two_cycles_pattern(3, 2);
  {
    auto [u, off] = disjoint_union(chain, directed_cycle(3));
    u.add_edge(3, off);
    chain = u;
  }
  // Bidirected 3-path feeding a 3-cycle: the path is not s-embeddable into the cycle.
  Digraph lopsided = make_digraph(6, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {3, 4}, {4, 5}, {5, 3}, {0, 3}});
  std::vector<ClaimInstance> out;
  for (int k = 2; k <= max_order; ++k) {
    for (auto [name, h] : {std::pair<std::string, Digraph>{"3-cycle", c3}, {"digon", digon}}) {
      if (k >= 3)
        out.push_back({"attach_to_grid", name, k, MinorKind::Butterfly, h,
                       [h](int n) { return attach_to_grid(h, {0, 1}, n); }});
      out.push_back({"attach_to_wall", name, k, MinorKind::Topological, h,
                     [h](int n) { return attach_to_wall(h, {0, 1}, n); }});
    }
    out.push_back({"two_edge_attachment", "digon pair, double edge", k, MinorKind::Butterfly, parallel,
                   [parallel](int n) { return two_edge_attachment(parallel, {0, 2}, {1, 3}, n); }});
    out.push_back({"three_component_attachment", "3-cycle, digon, 3-cycle", k, MinorKind::Butterfly, chain,
                   [chain](int n) { return three_component_attachment(chain, {0, 3}, {3, 5}, n); }});
    out.push_back({"left_acyclic_attachment", "bidirected 3-path, 3-cycle", k, MinorKind::Butterfly, lopsided,
                   [lopsided](int n) { return left_acyclic_attachment(lopsided, 0, 1, {0, 3}, {3, 4}, n); }, k - 1});
  }
  return out;
}

namespace detail {

inline void for_each_subset(const std::vector<Vertex>& vs, int max_size, const std::function<void(const VSet&)>& f) {
  VSet cur;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (!cur.empty()) f(cur);
    if (static_cast<int>(cur.size()) == max_size) return;
    for (size_t j = i; j < vs.size(); ++j) {
      cur.insert(vs[j]);
      rec(j + 1);
      cur.erase(vs[j]);
    }
  };
  rec(0);
}

}  // namespace detail

inline ClaimCheck check_claim(const ClaimInstance& c, Budget* budget = nullptr) {
  Digraph g = c.build(c.order).graph;
  ClaimCheck r{c.family, c.pattern, c.order, c.kind, g.num_vertices(), 0, false, c.deletion_order, {}};
  r.embeds = find_model_unbounded(c.h, g, c.kind, budget).has_value();
  if (!r.embeds) return r;
  r.packing = find_disjoint_models(c.h, g, 2, c.kind, budget) ? 2 : 1;
  detail::for_each_subset(g.vertices(), c.deletion_order, [&](const VSet& s) {
    if (!find_model_unbounded(c.h, delete_vertices(g, s), c.kind, budget)) r.deletion_failures.push_back(s);
  });
  return r;
}

inline json to_json(const ClaimCheck& c) {
  json j;
  j["family"] = c.family;
  j["pattern"] = c.pattern;
  j["order"] = c.order;
  j["kind"] = to_string(c.kind);
  j["vertices"] = c.vertices;
  j["embeds"] = c.embeds;
  j["packing_at_least"] = c.packing;
  j["deletion_order"] = c.deletion_order;
  j["deletion_failures"] = c.deletion_failures;
  j["passed"] = c.passed();
  return j;
}

}  // namespace epd
