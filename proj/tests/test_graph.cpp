#include <gtest/gtest.h>

#include <set>

#include "delta334/graph.hpp"
#include "delta334/graph_io.hpp"
#include "delta334/group_enum.hpp"
#include "oracles.hpp"

using namespace delta334;

namespace {

GroupElement perm(const char* s, std::size_t n = 4) { return GroupElement(Permutation::from_cycles(s, n)); }

IntMatrix3 mat(std::initializer_list<std::int64_t> xs) {
  IntMatrix3::Entries e{};
  std::copy(xs.begin(), xs.end(), e.begin());
  return IntMatrix3(e);
}

TriangleGraph delta(const char* spec, bool with_identity = false, unsigned threads = 1) {
  return build_delta334(order3_vertices(parse_group_spec(spec), with_identity), threads);
}

TriangleGraph complete_bipartite(std::uint32_t a, std::uint32_t b) {
  std::vector<Edge> e;
  for (std::uint32_t i = 0; i < a; ++i)
    for (std::uint32_t j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return TriangleGraph(a + b, e);
}

oracle::Mat to_oracle(const IntMatrix3& m) {
  oracle::Mat o;
  std::copy(m.entries().begin(), m.entries().end(), o.begin());
  return o;
}

}  // namespace

TEST(EdgePredicate, Examples) {
  EXPECT_TRUE(edge_predicate(perm("(123)"), perm("(124)")));
  EXPECT_FALSE(edge_predicate(perm("(123)"), perm("(214)")));
  auto x = perm("(134)");
  EXPECT_TRUE(edge_predicate(x, x.inverse()));
  GroupElement a(mat({0, 0, 1, 1, 0, 0, 0, 1, 0})), b(mat({1, 2, 3, 0, -2, -1, 0, 3, 1}));
  EXPECT_TRUE(edge_predicate(a, b));
  GroupElement c(mat({1, 1, 2, 0, 1, 1, 0, -3, -2})), d(mat({-2, 0, -1, -5, 1, -1, 3, 0, 1}));
  EXPECT_TRUE(edge_predicate(c, d));
  EXPECT_THROW(edge_predicate(perm("(12)"), perm("(123)")), PreconditionError);
}

TEST(Build, A4AndSL3OverF2) {
  auto a4 = delta("A4");
  EXPECT_EQ(a4.size(), 8u);
  EXPECT_EQ(a4.num_edges(), 16u);
  auto sl = delta("SL3(2)");
  EXPECT_EQ(sl.size(), 56u);
  EXPECT_EQ(sl.num_edges(), 532u);
}

TEST(Build, SL3OverF2EdgesMatchBruteForce) {
  // Oracle: order-3 matrices among all 512 binary matrices, then (AB)^4 = I.
  std::vector<oracle::Mat> v;
  for (const auto& m : oracle::sl3_mod(2))
    if (oracle::is_identity(oracle::power_mod(m, 3, 2)) && !oracle::is_identity(m)) v.push_back(m);
  ASSERT_EQ(v.size(), 56u);
  std::set<std::pair<oracle::Mat, oracle::Mat>> brute;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (oracle::is_identity(oracle::power_mod(oracle::mul_mod(v[i], v[j], 2), 4, 2)))
        brute.insert(std::minmax(v[i], v[j]));
  auto g = delta("SL3(2)");
  std::set<std::pair<oracle::Mat, oracle::Mat>> built;
  for (auto [a, b] : g.edges()) {
    oracle::Mat x, y;
    const auto& ea = g.label(a).as<ModMatrix3>().entries();
    const auto& eb = g.label(b).as<ModMatrix3>().entries();
    std::copy(ea.begin(), ea.end(), x.begin());
    std::copy(eb.begin(), eb.end(), y.begin());
    built.insert(std::minmax(x, y));
  }
  EXPECT_EQ(brute, built);
}

TEST(Build, S5EdgesMatchBruteForce) {
  std::vector<oracle::Perm> v;
  for (const auto& p : oracle::all_perms(5))
    if (!oracle::perm_identity(p) && oracle::perm_identity(oracle::compose(p, oracle::compose(p, p)))) v.push_back(p);
  std::size_t brute = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      auto c = oracle::compose(v[i], v[j]);
      auto c2 = oracle::compose(c, c);
      brute += oracle::perm_identity(oracle::compose(c2, c2));
    }
  EXPECT_EQ(delta("S5").num_edges(), brute);
  EXPECT_EQ(brute, 70u);
}

TEST(Build, IdentityAloneIsALoop) {
  auto g = build_delta334(ElementSet::from_elements({GroupElement(Permutation::identity(3))}));
  EXPECT_EQ(g.size(), 1u);
  EXPECT_EQ(g.num_edges(), 0u);
  EXPECT_EQ(g.loops(), std::vector<std::uint32_t>{0});
}

TEST(Build, RejectsElementsOfOtherOrders) {
  auto s = ElementSet::from_elements({perm("(12)"), perm("(123)")});
  EXPECT_THROW(build_delta334(s), PreconditionError);
}

TEST(Build, ThreadCountDoesNotChangeTheGraph) {
  for (const char* spec : {"SL3(2)", "S5", "sum(A4,Z3)"}) {
    auto one = build_delta334(order3_vertices(parse_group_spec(spec), true), 1);
    auto four = build_delta334(order3_vertices(parse_group_spec(spec), true), 4);
    EXPECT_EQ(one, four) << spec;
    EXPECT_EQ(graph_to_json(one).dump(), graph_to_json(four).dump());
  }
}

TEST(GraphInvariants, SymmetricLoopAtIdentityInverseAdjacent) {
  for (const char* spec : {"S4", "S5", "SL3(2)", "SL2(3)", "SL2(5)", "sum(A4,Z3)", "Z9"}) {
    for (bool with_identity : {false, true}) {
      auto g = delta(spec, with_identity);
      for (std::uint32_t a = 0; a < g.size(); ++a)
        for (std::uint32_t b = 0; b < g.size(); ++b)
          if (a != b) {
            ASSERT_EQ(g.adjacent(a, b), g.adjacent(b, a));
          }
      if (with_identity) {
        ASSERT_EQ(g.loops().size(), 1u) << spec;
        EXPECT_TRUE(g.label(g.loops()[0]).is_identity());
        // The identity has no other neighbour.
        EXPECT_EQ(g.degree(g.loops()[0]), 0u);
      } else {
        EXPECT_TRUE(g.loops().empty());
      }
      for (std::uint32_t v = 0; v < g.size(); ++v) {
        if (g.label(v).is_identity()) continue;
        auto inv = g.index_of(g.label(v).inverse().key());
        ASSERT_TRUE(inv);
        EXPECT_TRUE(g.adjacent(v, *inv)) << spec;
      }
    }
  }
}

TEST(GraphInvariants, AbelianEdgesAreExactlyInversePairs) {
  for (const char* spec : {"Z3", "Z9", "sum(Z3,Z3)"}) {
    auto g = delta(spec);
    std::set<Edge> expected;
    for (std::uint32_t v = 0; v < g.size(); ++v) {
      auto w = *g.index_of(g.label(v).inverse().key());
      expected.insert(std::minmax(v, w));
    }
    EXPECT_EQ(std::set<Edge>(g.edges().begin(), g.edges().end()), expected) << spec;
  }
}

TEST(Kronecker, SmallProducts) {
  TriangleGraph k2(2, {{0, 1}});
  auto m = kronecker_product(k2, k2);
  EXPECT_EQ(m.size(), 4u);
  EXPECT_EQ(m.num_edges(), 2u);
  for (std::uint32_t v = 0; v < 4; ++v) EXPECT_EQ(m.degree(v), 1u);

  TriangleGraph looped(1, {}, {0});
  auto g = delta("A4");
  auto p = kronecker_product(g, looped);
  EXPECT_TRUE(graph_isomorphic(p, g));
  EXPECT_EQ(p.num_edges(), g.num_edges());
}

TEST(Kronecker, DirectSumMatchesProductWithIdentities) {
  const char* names[] = {"Z3", "A4", "S4"};
  for (const char* a : names)
    for (const char* b : names) {
      auto prod = kronecker_product(delta(a, true), delta(b, true));
      auto direct = build_delta334(order3_vertices(GroupSpec::sum(parse_group_spec(a), parse_group_spec(b)), true));
      EXPECT_EQ(prod.canonical(), direct.canonical()) << a << " + " << b;
    }
}

TEST(Morphism, SingleEdgeModTwo) {
  auto b = mat({1, 2, 3, 0, -2, -1, 0, 3, 1});
  auto dom = build_delta334(ElementSet::from_elements({GroupElement(b), GroupElement(b.multiply(b))}));
  ASSERT_EQ(dom.num_edges(), 1u);
  auto cod = build_delta334(order3_vertices(GroupSpec::sl3(2), true));
  auto r = induced_morphism(dom, 2, cod);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.edges_checked, 1u);
  EXPECT_NE(r.morphism.vertex_map[0], r.morphism.vertex_map[1]);
}

TEST(Morphism, EmptyDomain) {
  auto cod = build_delta334(order3_vertices(GroupSpec::sl3(2), true));
  auto r = induced_morphism(TriangleGraph(), 2, cod);
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.morphism.vertex_map.empty());
}

TEST(Morphism, FamilyModThreeMatchesBruteForce) {
  std::vector<GroupElement> fam;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c) fam.emplace_back(parametric_order3(a, b, c));
  auto dom = build_delta334(ElementSet::from_elements(fam));
  ASSERT_EQ(dom.size(), 27u);
  auto cod = build_delta334(order3_vertices(GroupSpec::sl3(3), true));
  auto r = induced_morphism(dom, 3, cod);
  EXPECT_TRUE(r.ok());
  // Oracle for both sides: integer edges and their reductions.
  std::size_t brute_edges = 0;
  for (std::uint32_t i = 0; i < 27; ++i)
    for (std::uint32_t j = i + 1; j < 27; ++j) {
      auto x = to_oracle(dom.label(i).as<IntMatrix3>()), y = to_oracle(dom.label(j).as<IntMatrix3>());
      bool edge = oracle::is_identity(oracle::power(oracle::mul(x, y), 4));
      EXPECT_EQ(edge, dom.adjacent(i, j));
      if (!edge) continue;
      ++brute_edges;
      EXPECT_TRUE(oracle::is_identity(oracle::power_mod(oracle::mul_mod(x, y, 3), 4, 3)));
      EXPECT_NE(r.morphism.vertex_map[i], r.morphism.vertex_map[j]);
    }
  EXPECT_EQ(brute_edges, r.edges_checked);
}

TEST(Morphism, ViolationsAreReportedNotThrown) {
  auto b = mat({1, 2, 3, 0, -2, -1, 0, 3, 1});
  auto dom = build_delta334(ElementSet::from_elements({GroupElement(b), GroupElement(b.multiply(b))}));
  auto full = build_delta334(order3_vertices(GroupSpec::sl3(2), true));
  // Same vertices, no edges.
  TriangleGraph bare(full.size(), {}, full.loops(), full.labels());
  auto r = induced_morphism(dom, 2, bare);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].kind, MorphismViolation::Kind::kEdgeNotPreserved);
  // Codomain lacking the image vertex.
  auto r2 = induced_morphism(dom, 2, delta("SL3(3)"));
  EXPECT_FALSE(r2.ok());
  EXPECT_EQ(r2.violations[0].kind, MorphismViolation::Kind::kMissingImage);
}

TEST(Isomorphism, Examples) {
  auto s4 = delta("S4"), sl23 = delta("SL2(3)"), a4 = delta("A4");
  auto m = graph_isomorphic(s4, sl23);
  ASSERT_TRUE(m);
  EXPECT_TRUE(is_isomorphism(s4, sl23, *m));
  auto k = graph_isomorphic(a4, complete_bipartite(4, 4));
  ASSERT_TRUE(k);
  EXPECT_TRUE(is_isomorphism(a4, complete_bipartite(4, 4), *k));
  EXPECT_FALSE(graph_isomorphic(a4, delta("S5")));
  // Same size and degrees, different structure: C6 vs two triangles.
  TriangleGraph c6(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
  TriangleGraph tt(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  EXPECT_FALSE(graph_isomorphic(c6, tt));
  EXPECT_THROW(graph_isomorphic(delta("SL3(3)"), delta("SL3(3)")), GuardExceeded);
}

TEST(Storage, SparseAboveDenseLimit) {
  const std::uint32_t n = TriangleGraph::kDenseLimit + 10;
  std::vector<Edge> path;
  for (std::uint32_t i = 0; i + 1 < n; ++i) path.emplace_back(i, i + 1);
  TriangleGraph g(n, path);
  EXPECT_TRUE(g.adjacent(4099, 4100));
  EXPECT_FALSE(g.adjacent(4099, 4101));
  EXPECT_EQ(g.degree(0), 1u);
  EXPECT_THROW(TriangleGraph(3, {{0, 0}}), std::invalid_argument);
  EXPECT_THROW(TriangleGraph(3, {{0, 3}}), std::invalid_argument);
}

TEST(Serialization, JsonRoundTripIsByteIdentical) {
  for (const char* spec : {"A4", "SL3(2)", "SL2(3)", "Z9", "sum(S4,Z3)", "sum(sum(Z3,A4),SL2(3))"}) {
    auto g = build_delta334(order3_vertices(parse_group_spec(spec), true), 1, {{"group", spec}});
    auto text = dump_canonical(graph_to_json(g));
    auto back = graph_from_json(nlohmann::json::parse(text));
    EXPECT_EQ(back, g) << spec;
    EXPECT_EQ(dump_canonical(graph_to_json(back)), text) << spec;
  }
  TriangleGraph plain(4, {{0, 1}, {2, 3}}, {1});
  EXPECT_EQ(graph_from_json(graph_to_json(plain)), plain);
}

TEST(Serialization, FileShape) {
  auto j = graph_to_json(delta("S4"));
  ASSERT_EQ(j["vertices"].size(), 8u);
  EXPECT_EQ(j["vertices"][0]["id"], 0);
  EXPECT_EQ(j["meta"]["carrier"], "perm(4)");
  EXPECT_TRUE(j["vertices"][0]["label"].is_array());
  for (const auto& e : j["edges"]) EXPECT_LT(e[0].get<int>(), e[1].get<int>());
  auto edges = j["edges"].get<std::vector<std::vector<int>>>();
  EXPECT_TRUE(std::is_sorted(edges.begin(), edges.end()));
}

TEST(Serialization, MalformedFilesAreRejected) {
  using nlohmann::json;
  EXPECT_THROW(graph_from_json(json::array()), FormatError);
  EXPECT_THROW(graph_from_json(json{{"meta", json::object()}, {"vertices", json::array({{{"id", 1}}})}, {"edges", json::array()}}),
               FormatError);
  EXPECT_THROW(graph_from_json(json{{"meta", json::object()}, {"vertices", json::array({{{"id", 0}}})}, {"edges", {{0, 4}}}}),
               FormatError);
  auto j = graph_to_json(delta("A4"));
  j["vertices"][0]["label"] = json::array({0, 0, 1, 2});
  EXPECT_THROW(graph_from_json(j), FormatError);
  auto k = graph_to_json(delta("SL3(2)"));
  k["meta"]["carrier"] = "mod3(4)";
  EXPECT_THROW(graph_from_json(k), FormatError);
}

TEST(Serialization, DotAndGraphmlCarryLabels) {
  auto g = delta("A4");
  auto dot = to_dot(g);
  EXPECT_NE(dot.find("label=\"(123)\""), std::string::npos);
  EXPECT_NE(dot.find(" -- "), std::string::npos);
  auto xml = to_graphml(g);
  EXPECT_NE(xml.find("<data key=\"label\">(123)</data>"), std::string::npos);
  EXPECT_NE(xml.find("edgedefault=\"undirected\""), std::string::npos);
}
