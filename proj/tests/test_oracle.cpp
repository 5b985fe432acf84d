#include <gtest/gtest.h>

#include "corpus.hpp"

using namespace epd;

namespace {

Digraph two_c3() { return disjoint_union(directed_cycle(3), directed_cycle(3)).first; }

Digraph dag5() { return make_digraph(5, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}}); }

}  // namespace

TEST(OracleHasMinor, Examples) {
  EXPECT_TRUE(oracle_has_minor(directed_cycle(3), directed_cycle(4), MinorKind::Butterfly));
  EXPECT_FALSE(oracle_has_minor(directed_cycle(3), dag5(), MinorKind::Butterfly));
  EXPECT_FALSE(oracle_has_minor(directed_cycle(3), dag5(), MinorKind::Topological));
  EXPECT_TRUE(oracle_has_minor(directed_cycle(2), directed_cycle(2), MinorKind::Topological));
  EXPECT_THROW(oracle_has_minor(directed_cycle(3), cylindrical_grid(3).graph, MinorKind::Topological), BudgetExceeded);
}

TEST(OracleButterfly, StrategiesAgree) {
  for (const auto& [h, g] : corpus::minor_corpus(80)) {
    bool by_contraction = oracle_butterfly_by_contraction(h, g);
    auto tree_like = oracle_butterfly_tree_like(h, g);
    EXPECT_EQ(by_contraction, tree_like.has_value());
    if (tree_like) {
      EXPECT_TRUE(validate_butterfly_model(h, g, *tree_like).ok());
    }
  }
}

TEST(OracleMaxPacking, Examples) {
  Digraph c3 = directed_cycle(3);
  auto p = oracle_max_packing(c3, two_c3(), MinorKind::Butterfly);
  EXPECT_EQ(p.count, 2);
  EXPECT_EQ(p.models.size(), 2u);
  for (const auto& m : p.models) EXPECT_TRUE(validate_model(c3, two_c3(), m).ok());
  EXPECT_EQ(oracle_max_packing(c3, Digraph{}, MinorKind::Topological).count, 0);
  EXPECT_EQ(oracle_max_packing(c3, dag5(), MinorKind::Topological).count, 0);
}

TEST(OracleMinHitting, Examples) {
  Digraph c3 = directed_cycle(3);
  EXPECT_EQ(oracle_min_hitting_set(c3, c3, MinorKind::Topological).size(), 1u);
  EXPECT_TRUE(oracle_min_hitting_set(c3, dag5(), MinorKind::Topological).empty());
  EXPECT_EQ(oracle_min_hitting_set(c3, two_c3(), MinorKind::Butterfly).size(), 2u);
}

TEST(OracleLCycleHitting, Examples) {
  EXPECT_EQ(oracle_min_l_cycle_hitting(directed_cycle(4), 3).size(), 1u);
  EXPECT_TRUE(oracle_min_l_cycle_hitting(dag5(), 3).empty());
  Digraph shared = make_digraph(7, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {4, 5}, {5, 6}, {6, 0}});
  EXPECT_EQ(oracle_min_l_cycle_hitting(shared, 3), (VSet{0}));
  EXPECT_TRUE(oracle_has_long_cycle(directed_cycle(4), 4));
  EXPECT_FALSE(oracle_has_long_cycle(directed_cycle(4), 5));
}

TEST(OracleLinkage, Examples) {
  EXPECT_TRUE(oracle_sigma_linkage(directed_cycle(3), {{2, 2}}));
  auto a = acyclic_grid(2);
  Vertex x = a.labeling.at("v_1_1"), y = a.labeling.at("v_2_2");
  EXPECT_TRUE(oracle_sigma_linkage(a.graph, {{x, y}}));
  EXPECT_FALSE(oracle_sigma_linkage(a.graph, {{y, x}}));
  // Both paths must pass through the single middle vertex.
  Digraph bow = make_digraph(5, {{0, 2}, {1, 2}, {2, 3}, {2, 4}});
  EXPECT_FALSE(oracle_sigma_linkage(bow, {{0, 3}, {1, 4}}));
  EXPECT_TRUE(oracle_sigma_linkage(bow, {{0, 3}}));
}

TEST(OracleProperties, HittingZeroIffNoMinor) {
  for (const auto& [h, g] : corpus::minor_corpus(60)) {
    for (MinorKind kind : {MinorKind::Topological, MinorKind::Butterfly}) {
      bool has = oracle_has_minor(h, g, kind);
      EXPECT_EQ(oracle_min_hitting_set(h, g, kind).empty(), !has);
    }
  }
}

TEST(OracleProperties, WeakDuality) {
  for (const auto& [h, g] : corpus::minor_corpus(60)) {
    auto p = oracle_max_packing(h, g, MinorKind::Butterfly);
    auto s = oracle_min_hitting_set(h, g, MinorKind::Butterfly);
    EXPECT_GE(static_cast<int>(s.size()), p.count);
    EXPECT_FALSE(oracle_has_minor(h, delete_vertices(g, s), MinorKind::Butterfly));
  }
}

TEST(OracleProperties, PackingAntitoneUnderDeletion) {
  for (const auto& [h, g] : corpus::minor_corpus(40)) {
    int full = oracle_max_packing(h, g, MinorKind::Topological).count;
    for (Vertex v : g.vertices()) EXPECT_LE(oracle_max_packing(h, delete_vertices(g, {v}), MinorKind::Topological).count, full);
  }
}

TEST(OracleBudget, TimeoutRaises) {
  OracleBudget ob;
  ob.max_steps = 10;
  EXPECT_THROW(oracle_min_hitting_set(directed_cycle(3), cylindrical_grid(2).graph, MinorKind::Butterfly, ob),
               BudgetExceeded);
}
