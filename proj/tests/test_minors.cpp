#include <gtest/gtest.h>

#include "corpus.hpp"

using namespace epd;

namespace {

ButterflyModel c3_in_c4(Edge incoming) {
  ButterflyModel m;
  m.vertex_map = {{0, {0, 1}}, {1, {2}}, {2, {3}}};
  m.roots = {{0, 0}, {1, 2}, {2, 3}};
  m.in_branching = {{0, {}}, {1, {}}, {2, {}}};
  m.out_branching = {{0, {{0, 1}}}, {1, {}}, {2, {}}};
  m.edge_map = {{{0, 1}, {1, 2}}, {{1, 2}, {2, 3}}, {{2, 0}, incoming}};
  return m;
}

bool has_message(const ValidationReport& r, const std::string& part) {
  for (const auto& v : r.violations)
    if (v.find(part) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(ValidateTopological, DigonInFourCycle) {
  Digraph h = directed_cycle(2), g = directed_cycle(4);
  TopologicalModel m;
  m.vertex_map = {{0, 0}, {1, 2}};
  m.edge_map = {{{0, 1}, {0, 1, 2}}, {{1, 0}, {2, 3, 0}}};
  EXPECT_TRUE(validate_topological_model(h, g, m).ok());

  Digraph g2 = g;
  g2.add_edge(2, 1);
  g2.add_edge(1, 0);
  m.edge_map[{1, 0}] = {2, 1, 0};
  auto rep = validate_topological_model(h, g2, m);
  EXPECT_TRUE(has_message(rep, "paths intersect internally"));
}

TEST(ValidateTopological, ThreeCycleOnGridCycle) {
  auto grid = cylindrical_grid(2);
  const auto& c1 = grid.labeling.cycles[0];
  ASSERT_EQ(c1.size(), 4u);
  TopologicalModel m;
  m.vertex_map = {{0, c1[0]}, {1, c1[1]}, {2, c1[2]}};
  m.edge_map = {{{0, 1}, {c1[0], c1[1]}}, {{1, 2}, {c1[1], c1[2]}}, {{2, 0}, {c1[2], c1[3], c1[0]}}};
  EXPECT_TRUE(validate_topological_model(directed_cycle(3), grid.graph, m).ok());
}

TEST(ValidateButterfly, IdentityAndPath) {
  Digraph h = two_cycles_pattern(2, 3);
  ButterflyModel id;
  for (Vertex v : h.vertices()) {
    id.vertex_map[v] = {v};
    id.roots[v] = v;
  }
  for (Edge e : h.edges()) id.edge_map[e] = e;
  EXPECT_TRUE(validate_butterfly_model(h, h, id).ok());
  EXPECT_TRUE(validate_butterfly_model(directed_cycle(3), directed_cycle(4), c3_in_c4({3, 0})).ok());
}

TEST(ValidateButterfly, HeadInOutBranching) {
  Digraph g = directed_cycle(4);
  g.add_edge(3, 1);
  auto rep = validate_butterfly_model(directed_cycle(3), g, c3_in_c4({3, 1}));
  EXPECT_TRUE(has_message(rep, "head not in in-branching"));
}

TEST(FindTopological, Examples) {
  Digraph c3 = directed_cycle(3);
  auto m = find_topological_model(c3, c3);
  ASSERT_TRUE(m);
  EXPECT_TRUE(validate_topological_model(c3, c3, *m).ok());
  EXPECT_FALSE(find_topological_model(c3, acyclic_grid(3).graph));
}

TEST(FindTopological, DigonPairInGridOfOrderTwo) {
  // C_1 and C_2 are disjoint and an outward path joins them, so a model exists.
  Digraph h = two_cycles_pattern(2, 2), g = cylindrical_grid(2).graph;
  auto m = find_topological_model(h, g);
  ASSERT_TRUE(m);
  EXPECT_TRUE(validate_topological_model(h, g, *m).ok());
  EXPECT_TRUE(oracle_has_minor(h, g, MinorKind::Topological));
}

TEST(FindTopological, SizeBound) {
  EXPECT_THROW(find_topological_model(directed_cycle(3), cylindrical_grid(3).graph), DomainError);
  MinorOptions wide;
  wide.exhaustive_bound = 20;
  EXPECT_TRUE(find_topological_model(directed_cycle(3), cylindrical_grid(3).graph, wide));
}

TEST(FindButterfly, Examples) {
  Digraph h = two_cycles_pattern(3, 2);
  auto id = find_butterfly_model(h, h);
  ASSERT_TRUE(id);
  EXPECT_TRUE(validate_butterfly_model(h, h, *id).ok());

  auto m = find_butterfly_model(directed_cycle(3), directed_cycle(4));
  ASSERT_TRUE(m);
  EXPECT_TRUE(validate_butterfly_model(directed_cycle(3), directed_cycle(4), *m).ok());
  size_t big = 0;
  for (const auto& [_, s] : m->vertex_map) big = std::max(big, s.size());
  EXPECT_EQ(big, 2u);

  EXPECT_TRUE(find_butterfly_model(directed_cycle(2), directed_cycle(3)));
}

TEST(Conversion, ButterflyToTopological) {
  Digraph c3 = directed_cycle(3), c4 = directed_cycle(4);
  auto t = butterfly_to_topological(c3, c4, c3_in_c4({3, 0}));
  EXPECT_TRUE(validate_topological_model(c3, c4, t).ok());

  Digraph h = two_cycles_pattern(2, 2);
  ButterflyModel id;
  for (Vertex v : h.vertices()) {
    id.vertex_map[v] = {v};
    id.roots[v] = v;
  }
  for (Edge e : h.edges()) id.edge_map[e] = e;
  auto back = butterfly_to_topological(h, h, id);
  for (auto [v, x] : back.vertex_map) EXPECT_EQ(v, x);

  Digraph star = make_digraph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  ButterflyModel sid;
  for (Vertex v : star.vertices()) {
    sid.vertex_map[v] = {v};
    sid.roots[v] = v;
  }
  for (Edge e : star.edges()) sid.edge_map[e] = e;
  EXPECT_THROW(butterfly_to_topological(star, star, sid), DomainError);
}

TEST(Conversion, InDegreeThreeCounterexample) {
  // a1,a2,a3 -> v is a butterfly minor but not a topological minor.
  Digraph h = make_digraph(4, {{1, 0}, {2, 0}, {3, 0}});
  Digraph g;
  for (int i = 0; i < 8; ++i) g.add_vertex(i);
  // 0=a1 1=a2 2=a3 3=h1 4=h2 5=h3 6=x 7=y
  for (Edge e : std::vector<Edge>{{0, 3}, {3, 6}, {1, 4}, {4, 6}, {6, 7}, {2, 5}, {5, 7}}) g.add_edge(e.first, e.second);
  EXPECT_TRUE(find_butterfly_model(h, g));
  EXPECT_FALSE(find_topological_model(h, g));
  EXPECT_FALSE(degree_conversion_applies(h));
}

TEST(SEmbeddable, Examples) {
  EXPECT_TRUE(is_s_embeddable(directed_cycle(3), directed_cycle(3), MinorKind::Topological));
  EXPECT_TRUE(is_s_embeddable(directed_cycle(4), directed_cycle(3), MinorKind::Topological));
  // A digon is a cycle, so the subdivided 3-cycle holds it.
  EXPECT_TRUE(is_s_embeddable(directed_cycle(2), directed_cycle(3), MinorKind::Topological));
  Digraph bidir = make_digraph(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}});
  EXPECT_FALSE(is_s_embeddable(bidir, directed_cycle(2), MinorKind::Topological));
}

TEST(UltraHomogeneous, Examples) {
  EXPECT_TRUE(is_ultra_homogeneous(two_cycles_pattern(3, 3), MinorKind::Butterfly).ok);
  Digraph chain = two_cycles_pattern(3, 2);
  auto [u, off] = disjoint_union(chain, directed_cycle(3));
  u.add_edge(3, off);
  auto r = is_ultra_homogeneous(u, MinorKind::Butterfly);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.reason.find("smaller"), std::string::npos);
  Digraph par = two_cycles_pattern(3, 3);
  par.add_edge(1, 4);
  auto p = is_ultra_homogeneous(par, MinorKind::Butterfly);
  EXPECT_FALSE(p.ok);
  EXPECT_NE(p.reason.find("parallel"), std::string::npos);
}

TEST(Corpus, ModelsValidateAndMatchOracle) {
  for (const auto& [h, g] : corpus::minor_corpus(80)) {
    auto t = find_topological_model(h, g);
    if (t) {
      EXPECT_TRUE(validate_topological_model(h, g, *t).ok());
    }
    EXPECT_EQ(t.has_value(), oracle_has_minor(h, g, MinorKind::Topological));
    auto b = find_butterfly_model(h, g);
    if (b) {
      EXPECT_TRUE(validate_butterfly_model(h, g, *b).ok());
    }
    EXPECT_EQ(b.has_value(), oracle_has_minor(h, g, MinorKind::Butterfly));
    if (b && degree_conversion_applies(h)) {
      auto c = butterfly_to_topological(h, g, *b);
      EXPECT_TRUE(validate_topological_model(h, g, c).ok());
    }
  }
}

TEST(Corpus, MonotoneUnderAddedEdges) {
  for (const auto& [h, g] : corpus::minor_corpus(60)) {
    if (!find_butterfly_model(h, g)) continue;
    Digraph big = g;
    Vertex extra = big.next_free_id();
    big.add_vertex(extra);
    for (Vertex v : g.vertices()) big.add_edge(extra, v);
    EXPECT_TRUE(find_butterfly_model(h, big));
    EXPECT_EQ(find_topological_model(h, g).has_value() && !find_topological_model(h, big), false);
  }
}

TEST(Json, ModelRoundTrip) {
  Digraph h = directed_cycle(3), g = directed_cycle(4);
  auto b = c3_in_c4({3, 0});
  auto back = butterfly_model_from_json(to_json(b));
  EXPECT_TRUE(validate_butterfly_model(h, g, back).ok());
  auto t = *find_topological_model(h, g);
  auto tb = topological_model_from_json(to_json(t));
  EXPECT_EQ(tb.edge_map, t.edge_map);
}
