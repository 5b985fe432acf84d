#include <gtest/gtest.h>

#include "corpus.hpp"

using namespace epd;

namespace {

DirectedTreeDecomposition path_of_singletons(const std::vector<Vertex>& order) {
  DirectedTreeDecomposition d;
  for (size_t i = 0; i < order.size(); ++i) {
    int t = static_cast<int>(i);
    d.tree.nodes.insert(t);
    if (i > 0) {
      d.tree.parent[t] = t - 1;
      d.gamma[t] = {};
    }
    d.beta[t] = {order[i]};
  }
  return d;
}

bool mentions(const std::vector<std::string>& vs, const std::string& part) {
  for (const auto& v : vs)
    if (v.find(part) != std::string::npos) return true;
  return false;
}

std::vector<Vertex> topo_order(const Digraph& g) {
  std::vector<Vertex> out;
  for (const auto& c : strong_components(g).components) out.insert(out.end(), c.begin(), c.end());
  return out;
}

}  // namespace

TEST(ZNormal, Examples) {
  Digraph c3 = directed_cycle(3);
  EXPECT_TRUE(is_z_normal(c3, {}, {}).normal);
  auto r = is_z_normal(c3, {}, {0});
  EXPECT_FALSE(r.normal);
  EXPECT_FALSE(r.witness.empty());
  EXPECT_TRUE(is_z_normal(c3, {0}, {1}).normal);
}

TEST(ZNormal, CharacterizationsAgreeOnCorpus) {
  std::mt19937_64 rng(corpus::kCorpusSeed);
  for (const auto& [h, g] : corpus::minor_corpus(80)) {
    std::bernoulli_distribution coin(0.3);
    VSet z, s;
    for (Vertex v : g.vertices()) {
      if (coin(rng))
        z.insert(v);
      else if (coin(rng))
        s.insert(v);
    }
    EXPECT_EQ(z_normal_by_walks(g, z, s).normal, z_normal_by_intervals(g, z, s));
  }
}

TEST(ValidateDtd, TrivialDecomposition) {
  Digraph g = cylindrical_grid(2).graph;
  auto r = validate_dtd(g, trivial_dtd(g));
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.width, 7);
}

TEST(ValidateDtd, DagPathHasWidthZero) {
  Digraph g = acyclic_grid(3).graph;
  auto r = validate_dtd(g, path_of_singletons(topo_order(g)));
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.width, 0);
}

TEST(ValidateDtd, SmallGuardIsReported) {
  Digraph g = directed_cycle(3);
  auto d = path_of_singletons({0, 1, 2});
  auto r = validate_dtd(g, d);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.width, -1);
  d.gamma[1] = {0};
  d.gamma[2] = {0, 1};
  EXPECT_TRUE(validate_dtd(g, d).ok());
}

TEST(ValidateDtd, NonPartitionIsReported) {
  Digraph g = directed_path(3);
  auto d = path_of_singletons({0, 1, 2});
  d.beta[2] = {1};
  EXPECT_FALSE(validate_dtd(g, d).ok());
  d.beta[2] = {2, 7};
  EXPECT_FALSE(validate_dtd(g, d).ok());
}

TEST(ExactDtd, Examples) {
  EXPECT_TRUE(compute_dtd_exact(acyclic_grid(2).graph, 0));
  Digraph c3 = directed_cycle(3);
  EXPECT_FALSE(compute_dtd_exact(c3, 0));
  auto d = compute_dtd_exact(c3, 1);
  ASSERT_TRUE(d);
  EXPECT_TRUE(validate_dtd(c3, *d).ok());
  // Recorded from the exhaustive search: G_2 needs width 2.
  Digraph g2 = cylindrical_grid(2).graph;
  EXPECT_FALSE(compute_dtd_exact(g2, 1));
  auto [w, dg] = directed_tree_width(g2);
  EXPECT_EQ(w, 2);
  EXPECT_EQ(validate_dtd(g2, dg).width, 2);
  EXPECT_THROW(compute_dtd_exact(cylindrical_grid(3).graph, 3), DomainError);
}

TEST(ExactDtd, WidthIsMinimalOnCorpus) {
  for (const auto& [h, g] : corpus::minor_corpus(30)) {
    if (g.num_vertices() > 8) continue;
    auto [w, d] = directed_tree_width(g);
    auto r = validate_dtd(g, d);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.width, w);
    if (w > 0) {
      EXPECT_FALSE(compute_dtd_exact(g, w - 1));
    }
  }
}

TEST(SpecialDtd, DagIsStarOfSingletons) {
  Digraph g = acyclic_grid(2).graph;
  auto d = compute_special_dtd(g);
  EXPECT_TRUE(validate_special_dtd(g, d).ok());
  EXPECT_TRUE(d.bag(d.tree.root).empty());
  EXPECT_EQ(d.tree.children(d.tree.root).size(), g.num_vertices());
  auto path = path_of_singletons(topo_order(g));
  EXPECT_TRUE(validate_dtd(g, path).ok());
  auto rep = validate_special_dtd(g, path);
  EXPECT_FALSE(rep.ok());
  EXPECT_TRUE(mentions(rep.violations, "not a strong component"));
}

TEST(SpecialDtd, CyclesAndJoinedCycles) {
  Digraph c3 = directed_cycle(3);
  EXPECT_TRUE(validate_special_dtd(c3, compute_special_dtd(c3)).ok());
  EXPECT_TRUE(validate_special_dtd(c3, trivial_dtd(c3)).ok());

  Digraph tc = two_cycles_pattern(3, 3);
  auto d = compute_special_dtd(tc);
  EXPECT_TRUE(validate_special_dtd(tc, d).ok());
  auto kids = d.tree.children(d.tree.root);
  ASSERT_EQ(kids.size(), 2u);
  std::set<VSet> unions;
  for (int c : kids) unions.insert(d.subtree_union(c));
  EXPECT_EQ(unions, (std::set<VSet>{{0, 1, 2}, {3, 4, 5}}));
}

TEST(SpecialDtd, ValidOnCorpus) {
  for (const auto& [h, g] : corpus::minor_corpus(60)) {
    auto d = compute_special_dtd(g);
    auto r = validate_special_dtd(g, d);
    EXPECT_TRUE(r.ok()) << (r.violations.empty() ? "" : r.violations.front());
  }
}

TEST(DtdJson, RoundTrip) {
  Digraph g = two_cycles_pattern(3, 2);
  auto d = compute_special_dtd(g);
  auto back = dtd_from_json(json::parse(to_json(d).dump()));
  EXPECT_EQ(to_json(back), to_json(d));
  EXPECT_TRUE(validate_dtd(g, back).ok());
  EXPECT_THROW(dtd_from_json(json::parse(R"({"beta":{}})")), DomainError);
}

TEST(SigmaLinkage, Examples) {
  Digraph c3 = directed_cycle(3);
  auto one = sigma_linkage(c3, {{1, 1}});
  ASSERT_TRUE(one);
  EXPECT_EQ(one->paths[0], (Path{1}));

  auto grid = acyclic_grid(2);
  Vertex a = grid.labeling.at("v_1_1"), b = grid.labeling.at("v_2_2");
  auto fwd = sigma_linkage(grid.graph, {{a, b}});
  ASSERT_TRUE(fwd);
  EXPECT_TRUE(validate_linkage(grid.graph, *fwd).empty());
  EXPECT_FALSE(sigma_linkage(grid.graph, {{b, a}}));
  EXPECT_THROW(sigma_linkage(c3, {{0, 9}}), DomainError);
}

TEST(SigmaLinkage, WithAndWithoutDecompositionAgree) {
  for (const auto& inst : corpus::linkage_corpus(60)) {
    auto plain = sigma_linkage(inst.g, inst.sigma);
    auto d = compute_special_dtd(inst.g);
    auto guided = sigma_linkage(inst.g, inst.sigma, &d);
    EXPECT_EQ(plain.has_value(), guided.has_value());
    if (plain) {
      EXPECT_TRUE(validate_linkage(inst.g, *plain).empty());
    }
    if (guided) {
      EXPECT_TRUE(validate_linkage(inst.g, *guided).empty());
    }
  }
}

TEST(BoundedDtwSearch, Examples) {
  Digraph c3 = directed_cycle(3), g2 = cylindrical_grid(2).graph;
  auto d = directed_tree_width(g2).second;
  auto m = find_model_bounded_dtw(c3, g2, d, MinorKind::Topological);
  ASSERT_TRUE(m);
  EXPECT_TRUE(validate_model(c3, g2, *m).ok());
  Digraph dag = acyclic_grid(3).graph;
  EXPECT_FALSE(find_model_bounded_dtw(two_cycles_pattern(2, 2), dag, trivial_dtd(dag), MinorKind::Butterfly));
  auto bad = trivial_dtd(dag);
  bad.beta[0].erase(0);
  EXPECT_THROW(find_model_bounded_dtw(c3, dag, bad, MinorKind::Topological), DomainError);
}

TEST(BoundedDtwSearch, AgreesWithOracleOnCorpus) {
  for (const auto& [h, g] : corpus::minor_corpus(50)) {
    auto d = compute_special_dtd(g);
    for (MinorKind kind : {MinorKind::Topological, MinorKind::Butterfly}) {
      auto m = find_model_bounded_dtw(h, g, d, kind);
      EXPECT_EQ(m.has_value(), oracle_has_minor(h, g, kind));
      if (m) {
        EXPECT_TRUE(validate_model(h, g, *m).ok());
      }
    }
  }
}

TEST(Properties, GuardsMeetStronglyConnectedSubgraphs) {
  // Every node on the minimal subtree spanning the bags touched by a strong
  // subgraph H has Γ(t) ∩ V(H) nonempty.
  for (const auto& [h, g] : corpus::minor_corpus(60)) {
    for (const DirectedTreeDecomposition& d : {compute_special_dtd(g), trivial_dtd(g)}) {
      for (const auto& comp : strong_components(g).components) {
        if (comp.size() < 2) continue;
        VSet vh(comp.begin(), comp.end());
        std::set<int> touched;
        for (int t : d.tree.nodes)
          for (Vertex v : d.bag(t))
            if (vh.count(v)) touched.insert(t);
        auto hits = [&](int t) {
          size_t n = 0;
          for (int s : d.tree.subtree(t)) n += touched.count(s);
          return n;
        };
        int top = d.tree.root;
        for (bool moved = true; moved;) {
          moved = false;
          for (int c : d.tree.children(top))
            if (hits(c) == touched.size()) {
              top = c;
              moved = true;
            }
        }
        std::set<int> span;
        for (int t : d.tree.subtree(top))
          if (hits(t) > 0) span.insert(t);
        for (int t : span) {
          VSet gt = d.big_gamma(t);
          bool meets = false;
          for (Vertex v : gt) meets = meets || vh.count(v);
          EXPECT_TRUE(meets) << "node " << t;
        }
      }
    }
  }
}

TEST(Properties, RestrictionIsMonotone) {
  std::mt19937_64 rng(corpus::kCorpusSeed + 7);
  for (const auto& [h, g] : corpus::minor_corpus(40)) {
    if (g.num_vertices() > 8) continue;
    auto d = directed_tree_width(g).second;
    int w = validate_dtd(g, d).width;
    std::bernoulli_distribution keep_coin(0.7);
    VSet keep;
    for (Vertex v : g.vertices())
      if (keep_coin(rng)) keep.insert(v);
    Digraph sub = induced_subgraph(g, keep);
    auto r = validate_dtd(sub, restrict_dtd(d, keep));
    EXPECT_TRUE(r.ok());
    EXPECT_LE(r.width, w);
  }
}
