#include <gtest/gtest.h>

#include "corpus.hpp"

using namespace epd;

namespace {

Digraph two_four_cycles_sharing_vertex() {
  return make_digraph(7, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {4, 5}, {5, 6}, {6, 0}});
}

/// Largest set of pairwise vertex-disjoint source-sink paths, by enumeration.
int max_disjoint_paths(const Digraph& g, const std::set<Vertex>& src, const std::set<Vertex>& dst) {
  std::vector<Path> all;
  std::function<void(Path&)> extend = [&](Path& p) {
    if (dst.count(p.back())) {
      all.push_back(p);
      return;
    }
    for (Vertex w : g.out_neighbors(p.back()))
      if (std::find(p.begin(), p.end(), w) == p.end()) {
        p.push_back(w);
        extend(p);
        p.pop_back();
      }
  };
  for (Vertex s : src) {
    Path p{s};
    extend(p);
  }
  int best = 0;
  std::set<Vertex> used;
  std::function<void(size_t, int)> pick = [&](size_t i, int n) {
    best = std::max(best, n);
    for (size_t j = i; j < all.size(); ++j) {
      bool free = true;
      for (Vertex v : all[j]) free = free && !used.count(v);
      if (!free) continue;
      for (Vertex v : all[j]) used.insert(v);
      pick(j + 1, n + 1);
      for (Vertex v : all[j]) used.erase(v);
    }
  };
  pick(0, 0);
  return best;
}

void expect_disjoint(const std::vector<Path>& paths) {
  std::set<Vertex> seen;
  for (const auto& p : paths)
    for (Vertex v : p) EXPECT_TRUE(seen.insert(v).second) << "vertex " << v << " reused";
}

}  // namespace

TEST(ValidateLinkage, ReportsBrokenPaths) {
  Digraph c4 = directed_cycle(4);
  Linkage ok{{{0, 2}}, {{0, 1, 2}}};
  EXPECT_TRUE(validate_linkage(c4, ok).empty());
  Linkage missing{{{0, 2}}, {{0, 2}}};
  EXPECT_FALSE(validate_linkage(c4, missing).empty());
  Linkage crossing{{{0, 2}, {3, 1}}, {{0, 1, 2}, {3, 0, 1}}};
  EXPECT_FALSE(validate_linkage(c4, crossing).empty());
  Linkage count{{{0, 2}}, {}};
  EXPECT_FALSE(validate_linkage(c4, count).empty());
}

TEST(SigmaLinkage, MatchesOracleOnCorpus) {
  for (const auto& inst : corpus::linkage_corpus(100)) {
    auto fast = sigma_linkage(inst.g, inst.sigma);
    auto slow = oracle_sigma_linkage(inst.g, inst.sigma);
    EXPECT_EQ(fast.has_value(), slow.has_value());
    if (fast) {
      EXPECT_TRUE(validate_linkage(inst.g, *fast).empty());
    }
  }
}

TEST(SigmaLinkage, SizeBoundWithoutDecomposition) {
  Digraph g = cylindrical_grid(3).graph;
  EXPECT_THROW(sigma_linkage(g, {{0, 1}}), DomainError);
  auto d = compute_special_dtd(g);
  EXPECT_TRUE(sigma_linkage(g, {{0, 1}}, &d));
}

TEST(Menger, ParallelPaths) {
  Digraph g = make_digraph(8, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {6, 7}});
  auto r = menger_paths(g, {0, 3, 6}, {2, 5, 7}, 3);
  ASSERT_TRUE(r.linked());
  EXPECT_EQ(r.paths.size(), 3u);
  expect_disjoint(r.paths);
}

TEST(Menger, CutVertex) {
  Digraph g = make_digraph(5, {{0, 2}, {1, 2}, {2, 3}, {2, 4}});
  auto r = menger_paths(g, {0, 1}, {3, 4}, 2);
  ASSERT_FALSE(r.linked());
  EXPECT_EQ(*r.separator, (std::set<Vertex>{2}));
}

TEST(Menger, AcyclicGridColumns) {
  auto a = acyclic_grid(3);
  std::set<Vertex> top, bottom;
  for (int j = 1; j <= 3; ++j) {
    top.insert(a.labeling.at("v_1_" + std::to_string(j)));
    bottom.insert(a.labeling.at("v_3_" + std::to_string(j)));
  }
  auto r = menger_paths(a.graph, top, bottom, 3);
  ASSERT_TRUE(r.linked());
  expect_disjoint(r.paths);
  for (const auto& p : r.paths) {
    EXPECT_TRUE(top.count(p.front()));
    EXPECT_TRUE(bottom.count(p.back()));
  }
}

TEST(Menger, DualityOnCorpus) {
  for (const auto& [h, g] : corpus::minor_corpus(80)) {
    if (g.num_vertices() > 8) continue;
    auto vs = g.vertices();
    std::set<Vertex> src{vs[0], vs[1 % vs.size()]}, dst{vs.back(), vs[vs.size() / 2]};
    int best = max_disjoint_paths(g, src, dst);
    for (int k = 1; k <= 3; ++k) {
      auto r = menger_paths(g, src, dst, k);
      EXPECT_EQ(r.linked(), best >= k);
      if (r.linked()) {
        EXPECT_EQ(r.paths.size(), static_cast<size_t>(k));
        expect_disjoint(r.paths);
        for (const auto& p : r.paths)
          for (size_t i = 0; i + 1 < p.size(); ++i) EXPECT_TRUE(g.has_edge(p[i], p[i + 1]));
      } else {
        EXPECT_LT(r.separator->size(), static_cast<size_t>(k));
        Digraph cut = delete_vertices(g, *r.separator);
        std::set<Vertex> s2, d2;
        for (Vertex v : src)
          if (cut.has_vertex(v)) s2.insert(v);
        for (Vertex v : dst)
          if (cut.has_vertex(v)) d2.insert(v);
        EXPECT_EQ(max_disjoint_paths(cut, s2, d2), 0);
      }
    }
  }
}

TEST(Clusters, Examples) {
  auto [two, off] = disjoint_union(directed_cycle(4), directed_cycle(4));
  auto c = find_l_clusters(two, 3);
  EXPECT_EQ(c.clusters.size(), 2u);
  EXPECT_TRUE(c.transit_free);
  EXPECT_EQ(find_l_clusters(two_four_cycles_sharing_vertex(), 3).clusters.size(), 1u);
  EXPECT_TRUE(find_l_clusters(acyclic_grid(3).graph, 2).clusters.empty());
  EXPECT_EQ(find_l_clusters(two, 5).clusters.size(), 0u);
  (void)off;
}

TEST(Clusters, WithDecompositionAgrees) {
  for (const auto& [h, g] : corpus::minor_corpus(60)) {
    auto d = compute_special_dtd(g);
    for (int l : {2, 3, 4}) {
      auto a = find_l_clusters(g, l);
      auto b = find_l_clusters(g, l, &d);
      EXPECT_EQ(a.transit_free, b.transit_free);
      if (a.transit_free) {
        EXPECT_EQ(std::set<VSet>(a.clusters.begin(), a.clusters.end()),
                  std::set<VSet>(b.clusters.begin(), b.clusters.end()));
      }
    }
  }
}

TEST(Transit, Examples) {
  // C2 -> C1 -> C3 with all three cycles disjoint.
  Digraph g = make_digraph(9, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {6, 7}, {7, 8}, {8, 6}, {3, 0}, {1, 6}});
  auto [free, w] = is_l_transit_free(g, 3);
  EXPECT_FALSE(free);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->c1.size(), 3u);
  EXPECT_FALSE(w->path.empty());

  auto [two, off] = disjoint_union(directed_cycle(3), directed_cycle(3));
  EXPECT_TRUE(is_l_transit_free(two, 3).first);
  (void)off;

  // Recorded from the exhaustive transit search.
  Digraph g3 = cylindrical_grid(3).graph;
  EXPECT_FALSE(is_l_transit_free(g3, 6).first);
  EXPECT_TRUE(is_l_transit_free(g3, 12).first);
}

TEST(Clusters, DisjointWhenTransitFree) {
  for (const auto& [h, g] : corpus::minor_corpus(60)) {
    auto c = find_l_clusters(g, 3);
    if (!c.transit_free) continue;
    std::set<Vertex> seen;
    for (const auto& s : c.clusters)
      for (Vertex v : s) EXPECT_TRUE(seen.insert(v).second);
    for (Vertex v : g.vertices())
      if (detail::cycle_through(g, v, 3)) {
        EXPECT_TRUE(seen.count(v)) << v;
      }
  }
}
