#include <gtest/gtest.h>

#include "corpus.hpp"

using namespace epd;

namespace {

Digraph chain(const std::vector<Digraph>& parts, const std::vector<Edge>& links) {
  Digraph g;
  std::vector<Vertex> offs;
  for (const auto& p : parts) {
    auto [u, off] = disjoint_union(g, p);
    g = u;
    offs.push_back(off);
  }
  for (size_t i = 0; i < links.size(); ++i) g.add_edge(offs[i] + links[i].first, offs[i + 1] + links[i].second);
  return g;
}

Digraph bidirected_path3() { return make_digraph(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}}); }

Digraph bidirected_triangle() { return make_digraph(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 2}, {2, 0}}); }

EPConfig small_grids() {
  EPConfig cfg;
  cfg.max_grid_order = 2;
  return cfg;
}

MinorOptions wide() {
  MinorOptions o;
  o.exhaustive_bound = 64;
  return o;
}

}  // namespace

TEST(Classify, DegreeFour) {
  Digraph bowtie = make_digraph(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}});
  auto c = classify_vertex_cyclic(bowtie, MinorKind::Topological, small_grids());
  EXPECT_FALSE(c.candidate);
  EXPECT_EQ(c.item, "degree");
  EXPECT_EQ(c.generator, "attach_to_wall");
  auto a = c.family(2);
  EXPECT_TRUE(find_topological_model(bowtie, a.graph, wide()));
}

TEST(Classify, BlockGraphNotAPath) {
  Digraph c3 = directed_cycle(3);
  Digraph fork = chain({c3, c3}, {{0, 0}});
  auto [u, off] = disjoint_union(fork, c3);
  u.add_edge(0, off);
  auto c = classify_vertex_cyclic(u, MinorKind::Butterfly, small_grids());
  EXPECT_FALSE(c.candidate);
  EXPECT_EQ(c.item, "block-path");
  EXPECT_EQ(c.generator, "left_acyclic_attachment");
  EXPECT_TRUE(find_butterfly_model(u, c.family(2).graph, wide()));
}

TEST(Classify, ParallelArcs) {
  Digraph h = two_cycles_pattern(3, 3);
  h.add_edge(1, 4);
  auto c = classify_vertex_cyclic(h, MinorKind::Butterfly, small_grids());
  EXPECT_FALSE(c.candidate);
  EXPECT_EQ(c.item, "parallel-arcs");
  EXPECT_EQ(c.generator, "two_edge_attachment");
  EXPECT_TRUE(find_butterfly_model(h, c.family(2).graph, wide()));
}

TEST(Classify, NotSEmbeddable) {
  Digraph h = chain({directed_cycle(3), bidirected_path3()}, {{0, 0}});
  auto c = classify_vertex_cyclic(h, MinorKind::Butterfly, small_grids());
  EXPECT_FALSE(c.candidate);
  EXPECT_EQ(c.item, "s-embedding");
  EXPECT_EQ(c.generator, "right_acyclic_attachment");
  EXPECT_TRUE(find_butterfly_model(h, c.family(2).graph, wide()));
}

TEST(Classify, NotGridEmbeddable) {
  auto c = classify_vertex_cyclic(bidirected_triangle(), MinorKind::Butterfly, small_grids());
  EXPECT_FALSE(c.candidate);
  EXPECT_EQ(c.item, "grid-embedding");
  EXPECT_EQ(c.generator, "attach_to_grid");
}

TEST(Classify, SizeProfile) {
  Digraph h = chain({directed_cycle(3), directed_cycle(2), directed_cycle(3)}, {{0, 0}, {0, 0}});
  auto c = classify_vertex_cyclic(h, MinorKind::Butterfly, small_grids());
  EXPECT_FALSE(c.candidate);
  EXPECT_EQ(c.item, "size-profile");
  EXPECT_EQ(c.generator, "three_component_attachment");
  EXPECT_TRUE(find_butterfly_model(h, c.family(2).graph, wide()));
}

TEST(Classify, Candidates) {
  for (MinorKind kind : {MinorKind::Topological, MinorKind::Butterfly}) {
    auto c = classify_vertex_cyclic(two_cycles_pattern(3, 3), kind);
    EXPECT_TRUE(c.candidate);
    EXPECT_TRUE(c.generator.empty());
    EXPECT_TRUE(classify_vertex_cyclic(directed_cycle(4), kind).candidate);
  }
  EXPECT_TRUE(classify_vertex_cyclic(two_cycles_pattern(3, 2), MinorKind::Topological).candidate);
}

TEST(Classify, Preconditions) {
  EXPECT_THROW(classify_vertex_cyclic(directed_path(3), MinorKind::Topological), DomainError);
  Digraph split = disjoint_union(directed_cycle(2), directed_cycle(2)).first;
  EXPECT_THROW(classify_vertex_cyclic(split, MinorKind::Topological), DomainError);
}
