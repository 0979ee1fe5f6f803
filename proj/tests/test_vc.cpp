#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tww/vc_density.hpp"

using namespace tww;
using tww::testing::small_fixtures;

TEST(Bipartite, WholeSetKeepsSequence) {
  auto inst = tww::testing::p4();
  auto bs = make_bipartite(inst.graph, inst.cs, {1, 2, 3, 4});
  EXPECT_EQ(bs.cs, inst.cs);
}

TEST(Bipartite, P4) {
  auto inst = tww::testing::p4();
  auto bs = make_bipartite(inst.graph, inst.cs, {1, 2});
  EXPECT_LE(validate(inst.graph, bs.cs), 2);
  EXPECT_TRUE(parts_respect(bs.cs, bs.in_a));
}

TEST(Bipartite, WidthCounterexampleToDoubling) {
  // width 0 input; any sequence keeping {1,3} apart from {2} until the end has width 1
  Graph g(3);
  g.add_edge(1, 2);
  auto cs = build_sequence(g, {{1, 2}, {4, 3}});
  EXPECT_EQ(validate(g, cs), 0);
  EXPECT_EQ(validate(g, make_bipartite(g, cs, {1, 3}).cs), 1);
}

TEST(Bipartite, WidthAtMostDoublePlusTwoAndPure) {
  for (auto& f : small_fixtures(30)) {
    const int n = f.inst.graph.n();
    const int d = validate(f.inst.graph, f.inst.cs);
    for (unsigned mask = 1; mask < (1u << n); mask += std::max(1u, (1u << n) / 17)) {
      std::vector<int> a;
      for (int v = 1; v <= n; ++v)
        if (mask >> (v - 1) & 1) a.push_back(v);
      auto bs = make_bipartite(f.inst.graph, f.inst.cs, a);
      EXPECT_LE(validate(f.inst.graph, bs.cs), 2 * d + 2) << f.name;
      EXPECT_TRUE(parts_respect(bs.cs, bs.in_a)) << f.name;
    }
  }
}

TEST(MeetingTime, P4) {
  auto inst = tww::testing::p4();
  EXPECT_EQ(meeting_time(inst.cs, {3, 4}), 2);
  EXPECT_EQ(meeting_time(inst.cs, {2}), 1);
  EXPECT_EQ(meeting_time(inst.cs, {1, 4}), 4);
  EXPECT_THROW(meeting_time(inst.cs, {}), std::invalid_argument);
}

TEST(MeetingTime, MatchesForestReplay) {
  for (auto& f : small_fixtures(20)) {
    PartForest forest(f.inst.cs);
    const int n = f.inst.graph.n();
    for (int u = 1; u <= n; ++u)
      for (int v = 1; v <= n; ++v) {
        int t = 1;
        while (forest.part_at(u, t) != forest.part_at(v, t)) ++t;
        EXPECT_EQ(meeting_time(f.inst.cs, {u, v}), t);
      }
  }
}

TEST(DistanceColoring, Examples) {
  auto inst = path_instance(6);
  std::vector<int> a{1, 2, 3, 4, 6};
  auto bs = make_bipartite(inst.graph, inst.cs, a);
  auto col = distance_coloring(inst.graph, bs, 2);
  EXPECT_EQ(col.palette, 1);
  EXPECT_EQ(col.color[5], 0);
  auto zero = distance_coloring(inst.graph, make_bipartite(inst.graph, inst.cs, {1, 3, 5}), 0);
  EXPECT_EQ(zero.palette, 1);
  for (int v : {2, 4, 6}) EXPECT_EQ(zero.color[v], 0);
  auto e = edgeless_instance(6);
  auto ecol = distance_coloring(e.graph, make_bipartite(e.graph, e.cs, {1, 2, 3}), 3);
  EXPECT_EQ(ecol.palette, 1);
}

TEST(DistanceColoring, PaletteGrowsLinearly) {
  for (int s : {4, 8, 16}) {
    auto inst = path_instance(2 * s);
    auto a = odd_vertices(2 * s);
    auto bs = make_bipartite(inst.graph, inst.cs, a);
    auto col = distance_coloring(inst.graph, bs, 2);
    EXPECT_LE(col.palette, 4 * (s - 1) + 1);
    for (int v = 1; v <= 2 * s; ++v) EXPECT_EQ(col.color[v] < 0, static_cast<bool>(bs.in_a[v]));
  }
}

TEST(StoneSpace, Examples) {
  auto inst = tww::testing::p4();
  auto s = stone_space(inst.graph, {1, 2}, *parse_formula("E(x,y)"));
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(stone_space(inst.graph, {1, 2}, *parse_formula("x = x")).size(), 1u);
  EXPECT_LE(stone_space(inst.graph, {3}, *parse_formula("E(x,y)")).size(), 2u);
  EXPECT_THROW(stone_space(inst.graph, {}, *parse_formula("E(x,y)")), std::invalid_argument);
  EXPECT_THROW(stone_space(path_instance(64).graph, {1, 2, 3}, *parse_formula("E x y1 and E x y2 and E x y3 and E x y4"), {},
                           1000),
               BudgetExceeded);
}

TEST(StoneSpace, TracesMatchWitnesses) {
  auto phi = parse_formula("exists z (E x z and E z y)");
  for (auto& f : small_fixtures(10)) {
    if (f.inst.graph.n() < 2) continue;
    auto s = stone_space(f.inst.graph, {1, 2}, *phi);
    for (auto& [trace, w] : s.traces) {
      std::vector<std::vector<int>> again;
      for (int x : {1, 2})
        if (naive_eval(f.inst.graph, *phi, {{"x", x}, {"y", w[0]}})) again.push_back({x});
      EXPECT_EQ(trace, again) << f.name;
    }
  }
}

TEST(TypeClasses, TrivialCases) {
  auto e = edgeless_instance(8);
  auto bs = make_bipartite(e.graph, e.cs, odd_vertices(8));
  auto col = distance_coloring(e.graph, bs, 2);
  EXPECT_EQ(max_type_classes(e.graph, bs, col, 1, 1), 1);
  auto inst = path_instance(6);
  auto pbs = make_bipartite(inst.graph, inst.cs, {1, 2, 3, 4, 6});
  auto pcol = distance_coloring(inst.graph, pbs, 2);
  EXPECT_EQ(count_type_classes(inst.graph, pbs, pcol, {0}, 1, 6, 1), 1);
  EXPECT_THROW(count_type_classes(inst.graph, pbs, pcol, {0}, 1, 0, 1), std::invalid_argument);
}

TEST(TypeClasses, EquivalentWitnessesShareTraces) {
  auto inst = path_instance(12);
  auto a = odd_vertices(12);
  auto bs = make_bipartite(inst.graph, inst.cs, a);
  auto col = distance_coloring(inst.graph, bs, 2);
  // equal local types for all x over A at the meeting time imply equal traces of E(x,y)
  auto phi = parse_formula("E(x,y)");
  for (int c = 0; c < col.palette; ++c) {
    std::vector<int> cls;
    for (int v = 1; v <= 12; ++v)
      if (col.color[v] == c) cls.push_back(v);
    if (count_type_classes(inst.graph, bs, col, {c}, 1, meeting_time(bs.cs, cls), 1) == 1)
      for (int v : cls)
        for (int x : a)
          EXPECT_EQ(naive_eval(inst.graph, *phi, {{"x", x}, {"y", v}}), naive_eval(inst.graph, *phi, {{"x", x}, {"y", cls[0]}}));
  }
}

TEST(VcDensity, Slope) {
  EXPECT_NEAR(loglog_slope({2, 4, 8}, {4, 16, 64}), 2.0, 1e-9);
  EXPECT_THROW(loglog_slope({2}, {3}), std::invalid_argument);
}

TEST(VcDensity, PathsAndEdgeless) {
  auto rep = vc_density_report("path", {4, 8, 16}, *parse_formula("E(x,y)"));
  EXPECT_LE(rep.exponent, 1.2);
  EXPECT_FALSE(rep.flagged);
  for (auto& row : rep.rows) EXPECT_LE(static_cast<int>(row.stone_size), 2 * row.a_size + 1);
  auto flat = vc_density_report("edgeless", {4, 8, 16}, *parse_formula("E(x,y)"));
  EXPECT_NEAR(flat.exponent, 0.0, 1e-9);
  auto none = vc_density_report("path", {4, 8}, *parse_formula("exists y E x y"));
  for (auto& row : none.rows) EXPECT_EQ(row.stone_size, 1u);
}
