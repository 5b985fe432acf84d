#include <gtest/gtest.h>

#include "corpus.hpp"

using namespace epd;

namespace {

Digraph dag(int n) {
  Digraph g;
  for (int i = 0; i < n; ++i) g.add_vertex(i);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; j += 2) g.add_edge(i, j);
  return g;
}

Digraph copies(const Digraph& h, int n) {
  Digraph g;
  for (int i = 0; i < n; ++i) g = disjoint_union(g, h).first;
  return g;
}

void expect_sound(const Digraph& h, const Digraph& g, const PackOrHit& r, int k, MinorKind kind) {
  if (r.packing()) {
    EXPECT_EQ(r.models.size(), static_cast<size_t>(k));
    EXPECT_TRUE(detail::packing_problems(h, g, r.models).empty());
  } else {
    EXPECT_TRUE(r.verified);
    EXPECT_FALSE(oracle_has_minor(h, delete_vertices(g, r.hitting_set), kind));
    EXPECT_LE(static_cast<long long>(r.hitting_set.size()), r.bound.value);
  }
}

OracleBudget wide_oracle() {
  OracleBudget ob;
  ob.max_vertices = 40;
  return ob;
}

}  // namespace

TEST(BoundedDtw, NoModelGivesEmptyHittingSet) {
  Digraph g = dag(6);
  for (int k : {1, 2, 3}) {
    auto r = pack_or_hit_bounded_dtw(directed_cycle(3), g, trivial_dtd(g), k, MinorKind::Topological);
    EXPECT_FALSE(r.packing());
    EXPECT_TRUE(r.hitting_set.empty());
    EXPECT_TRUE(r.verified);
  }
}

TEST(BoundedDtw, TwoDisjointTriangles) {
  Digraph c3 = directed_cycle(3), g = copies(c3, 2);
  auto [w, d] = directed_tree_width(g);
  auto two = pack_or_hit_bounded_dtw(c3, g, d, 2, MinorKind::Butterfly);
  ASSERT_TRUE(two.packing());
  expect_sound(c3, g, two, 2, MinorKind::Butterfly);
  auto three = pack_or_hit_bounded_dtw(c3, g, d, 3, MinorKind::Butterfly);
  ASSERT_FALSE(three.packing());
  expect_sound(c3, g, three, 3, MinorKind::Butterfly);
  EXPECT_LE(static_cast<int>(three.hitting_set.size()), 3 * (w + 1));
  EXPECT_EQ(three.bound.formula, "k*(w+1)");
}

TEST(BoundedDtw, GridAttachmentHoldsConcentricCycles) {
  // The inner cycles C_1, C_2 of the substrate are disjoint 3-cycle models.
  Digraph c3 = directed_cycle(3);
  auto a = attach_to_grid(c3, {0, 1}, 3);
  auto d = compute_special_dtd(a.graph);
  auto r = pack_or_hit_bounded_dtw(c3, a.graph, d, 2, MinorKind::Butterfly);
  ASSERT_TRUE(r.packing());
  EXPECT_TRUE(detail::packing_problems(c3, a.graph, r.models).empty());
  EXPECT_GE(oracle_max_packing(c3, a.graph, MinorKind::Butterfly, wide_oracle()).count, 2);
}

TEST(BoundedDtw, ZeroAndErrors) {
  Digraph c3 = directed_cycle(3);
  auto r = pack_or_hit_bounded_dtw(c3, c3, trivial_dtd(c3), 0, MinorKind::Topological);
  EXPECT_TRUE(r.packing());
  EXPECT_TRUE(r.models.empty());
  EXPECT_THROW(pack_or_hit_bounded_dtw(directed_path(2), c3, trivial_dtd(c3), 1, MinorKind::Topological), DomainError);
  auto bad = trivial_dtd(c3);
  bad.beta[0].erase(1);
  EXPECT_THROW(pack_or_hit_bounded_dtw(c3, c3, bad, 1, MinorKind::Topological), DomainError);
}

TEST(BoundedDtw, BoundAndExclusivityOnCorpus) {
  int checked = 0;
  for (const auto& [h, g] : corpus::minor_corpus(120)) {
    if (!is_strongly_connected(h) || g.num_vertices() > 9) continue;
    auto [w, d] = directed_tree_width(g);
    for (MinorKind kind : {MinorKind::Topological, MinorKind::Butterfly}) {
      int best = oracle_max_packing(h, g, kind).count;
      for (int k = 1; k <= 3; ++k) {
        auto r = pack_or_hit_bounded_dtw(h, g, d, k, kind);
        expect_sound(h, g, r, k, kind);
        EXPECT_EQ(r.packing(), best >= k);
        if (!r.packing()) {
          EXPECT_LE(static_cast<int>(r.hitting_set.size()), k * (w + 1));
        }
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 30);
}

TEST(StronglyConnected, Examples) {
  Digraph c3 = directed_cycle(3);
  Digraph g4 = cylindrical_grid(4).graph;
  auto r = pack_or_hit_strongly_connected(c3, g4, 2, EPConfig{}, MinorKind::Topological);
  ASSERT_TRUE(r.packing());
  expect_sound(c3, g4, r, 2, MinorKind::Topological);

  auto none = pack_or_hit_strongly_connected(c3, dag(5), 3, EPConfig{}, MinorKind::Topological);
  EXPECT_FALSE(none.packing());
  EXPECT_TRUE(none.hitting_set.empty());

  // Concentric cycles of the substrate again give two disjoint digons.
  Digraph digon = directed_cycle(2);
  auto a = attach_to_grid(digon, {0, 1}, 3);
  auto p = pack_or_hit_strongly_connected(digon, a.graph, 2, EPConfig{}, MinorKind::Butterfly);
  EXPECT_TRUE(p.packing());

  EPConfig small;
  small.max_grid_order = 1;
  EXPECT_THROW(pack_or_hit_strongly_connected(c3, g4, 2, small, MinorKind::Topological), DomainError);
}

TEST(StronglyConnected, AgreesWithOracleOnCorpus) {
  for (const auto& [h, g] : corpus::minor_corpus(80)) {
    if (!is_strongly_connected(h)) continue;
    // Dense patterns make the butterfly grid-order search exponential in the grid size.
    std::vector<MinorKind> kinds{MinorKind::Topological};
    if (degree_conversion_applies(h)) kinds.push_back(MinorKind::Butterfly);
    for (MinorKind kind : kinds) {
      int best = oracle_max_packing(h, g, kind).count;
      for (int k = 1; k <= 2; ++k) {
        EPConfig cfg;
        cfg.max_grid_order = 3;
        try {
          auto r = pack_or_hit_strongly_connected(h, g, k, cfg, kind);
          EXPECT_EQ(r.packing(), best >= k);
          expect_sound(h, g, r, k, kind);
        } catch (const DomainError& e) {
          EXPECT_NE(std::string(e.what()).find("outside positive characterization"), std::string::npos);
          EXPECT_FALSE(grid_order_of(h, kind, cfg));
        }
      }
    }
  }
}

TEST(BipartiteClusters, Examples) {
  Digraph h = two_cycles_pattern(3, 2);
  // Two disjoint sectors, each a 3-cycle feeding a digon.
  Digraph g = copies(h, 2);
  auto two = pack_or_hit_bipartite_clusters(g, 3, 2, 2);
  ASSERT_TRUE(two.packing());
  expect_sound(h, g, two, 2, MinorKind::Topological);

  Digraph one = directed_cycle(4);
  auto r = pack_or_hit_bipartite_clusters(one, 3, 2, 2);
  EXPECT_FALSE(r.packing());
  expect_sound(h, one, r, 2, MinorKind::Topological);

  auto empty = pack_or_hit_bipartite_clusters(Digraph{}, 3, 2, 2);
  EXPECT_FALSE(empty.packing());
  EXPECT_TRUE(empty.hitting_set.empty());

  Digraph transit = make_digraph(9, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {6, 7}, {7, 8}, {8, 6}, {3, 0}, {1, 6}});
  EXPECT_THROW(pack_or_hit_bipartite_clusters(transit, 3, 2, 2), DomainError);
}

TEST(BipartiteClusters, BoundOnConstructedInstances) {
  std::mt19937_64 rng(corpus::kCorpusSeed + 17);
  Digraph h = two_cycles_pattern(3, 2);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Digraph g = corpus::random_digraph(rng, std::uniform_int_distribution<int>(4, 10)(rng), 0.22);
    if (!is_l_transit_free(g, 3).first) continue;
    auto r = pack_or_hit_bipartite_clusters(g, 3, 2, 2);
    expect_sound(h, g, r, 2, MinorKind::Topological);
    EXPECT_EQ(r.packing(), oracle_max_packing(h, g, MinorKind::Topological).count >= 2);
    if (!r.packing()) {
      long long f1 = r.bound.parameters.at("f1");
      EXPECT_LE(static_cast<long long>(r.hitting_set.size()), 2 * f1 + 2 * 2 * std::max<long long>(f1, 3) + 1);
    }
    ++checked;
  }
  EXPECT_GT(checked, 10);
}

TEST(TwoCycles, Examples) {
  Digraph h = two_cycles_pattern(2, 2);
  Digraph g = copies(h, 2);
  auto r = pack_or_hit_two_cycles(h, g, 2);
  ASSERT_TRUE(r.packing());
  expect_sound(h, g, r, 2, MinorKind::Topological);

  Digraph h3 = two_cycles_pattern(3, 3);
  auto none = pack_or_hit_two_cycles(h3, dag(7), 2);
  EXPECT_FALSE(none.packing());
  EXPECT_TRUE(none.hitting_set.empty());

  Digraph h32 = two_cycles_pattern(2, 3);
  Digraph g32 = copies(h32, 2);
  auto rev = pack_or_hit_two_cycles(h32, g32, 3);
  EXPECT_FALSE(rev.packing());
  expect_sound(h32, g32, rev, 3, MinorKind::Topological);

  EXPECT_THROW(pack_or_hit_two_cycles(directed_cycle(3), g, 1), DomainError);
}

TEST(TwoCycles, LeftAttachmentArmMatchesOracle) {
  Digraph h = two_cycles_pattern(3, 3);
  auto a = left_acyclic_attachment(h, 0, 1, {0, 3}, {3, 4}, 3);
  int best = oracle_max_packing(h, a.graph, MinorKind::Topological, wide_oracle()).count;
  for (int k = 1; k <= best + 1; ++k) {
    auto r = pack_or_hit_two_cycles(h, a.graph, k);
    EXPECT_EQ(r.packing(), best >= k);
    if (!r.packing()) {
      EXPECT_TRUE(r.verified);
      EXPECT_FALSE(find_topological_model(h, delete_vertices(a.graph, r.hitting_set), MinorOptions{64, nullptr}));
    }
  }
}

TEST(TwoCycles, AgreesWithOracleOnCorpus) {
  Digraph h = two_cycles_pattern(2, 2);
  for (const auto& [p, g] : corpus::minor_corpus(80)) {
    int best = oracle_max_packing(h, g, MinorKind::Topological).count;
    for (int k = 1; k <= 2; ++k) {
      auto r = pack_or_hit_two_cycles(h, g, k);
      EXPECT_EQ(r.packing(), best >= k);
      expect_sound(h, g, r, k, MinorKind::Topological);
    }
  }
}

TEST(NoVerify, ClearsFlag) {
  EPConfig cfg;
  cfg.verify = false;
  Digraph c3 = directed_cycle(3);
  auto r = pack_or_hit_bounded_dtw(c3, c3, trivial_dtd(c3), 2, MinorKind::Topological, cfg);
  EXPECT_FALSE(r.packing());
  EXPECT_FALSE(r.verified);
}
