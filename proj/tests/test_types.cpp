#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "lemma_suite.hpp"
#include "tww/calculus.hpp"
#include "tww/types.hpp"

using namespace tww;
using tww::testing::small_fixtures;

TEST(Atom, ConcatAndPermute) {
  Graph g = parse_graph(tww::testing::kP4Graph);
  Atom a = atom_of(g, {1, 2});
  Atom b = atom_of(g, {4, 4});
  EXPECT_TRUE(a.edge(0, 1));
  EXPECT_TRUE(b.equal(0, 1));
  Atom c = atom_concat(a, b, [&](int i, int j) { return g.has_edge(std::vector<int>{1, 2}[i], 4 + 0 * j); });
  EXPECT_EQ(c, atom_of(g, {1, 2, 4, 4}));
  EXPECT_EQ(c.drop_last(), atom_of(g, {1, 2, 4}));
  EXPECT_EQ(atom_of(g, {1, 2, 3}).permuted({2, 0, 1}), atom_of(g, {3, 1, 2}));
}

TEST(TypeArena, HashConsing) {
  TypeArena arena;
  Graph g = parse_graph(tww::testing::kP4Graph);
  EXPECT_EQ(tp(arena, g, {1}, 2), tp(arena, g, {4}, 2));
  EXPECT_NE(tp(arena, g, {1}, 2), tp(arena, g, {2}, 2));
  EXPECT_EQ(tp(arena, g, {2}, 1), tp(arena, g, {3}, 1));
  EXPECT_EQ(arena.universe({3, 1, 3}), arena.universe({1, 3}));
}

TEST(TypeArena, PermuteMatchesTupleOrder) {
  TypeArena arena;
  for (auto& f : small_fixtures(10)) {
    const Graph& g = f.inst.graph;
    for (int u = 1; u <= g.n(); ++u)
      for (int v = 1; v <= g.n(); ++v)
        EXPECT_EQ(arena.permute(tp(arena, g, {u, v}, 2), {1, 0}), tp(arena, g, {v, u}, 2)) << f.name;
  }
}

TEST(RankCap, Enforced) {
  EXPECT_NO_THROW(check_rank_cap(4, 4));
  EXPECT_THROW(check_rank_cap(5, 1), RankCapError);
  EXPECT_THROW(check_rank_cap(3, 6), RankCapError);
}

TEST(GlobalTypes, DecideFormulas) {
  TypeArena arena;
  for (auto& f : small_fixtures(25)) {
    const Graph& g = f.inst.graph;
    for (auto& phi : tww::testing::query_pool()) {
      auto vars = free_vars(*phi);
      const int k = quantifier_rank(*phi);
      for (int u = 1; u <= g.n(); ++u)
        for (int v = 1; v <= (vars.size() == 2 ? g.n() : 1); ++v) {
          std::vector<int> tup{u};
          Assignment asg{{vars[0], u}};
          if (vars.size() == 2) {
            tup.push_back(v);
            asg[vars[1]] = v;
          }
          EXPECT_EQ(eval_on_type(arena, tp(arena, g, tup, k), *phi), naive_eval(g, *phi, asg))
              << f.name << " " << to_string(*phi);
        }
    }
    for (auto& phi : tww::testing::sentence_pool()) {
      const int q = quantifier_rank(*phi);
      std::vector<TypeId> members;
      for (int v = 1; v <= g.n(); ++v) members.push_back(tp(arena, g, {v}, q - 1));
      TypeId whole = arena.global(static_cast<std::uint8_t>(q), Atom{}, members);
      EXPECT_EQ(eval_on_type(arena, whole, *phi), naive_eval(g, *phi, {})) << f.name << " " << to_string(*phi);
    }
  }
}

TEST(GlobalTypes, RankTooLowThrows) {
  TypeArena arena;
  Graph g = parse_graph(tww::testing::kP4Graph);
  EXPECT_THROW(eval_on_type(arena, tp(arena, g, {1}, 0), *parse_formula("exists y E x y")), std::invalid_argument);
}

TEST(LocalTypes, Time1HasNoNeighbours) {
  TypeArena arena;
  auto inst = tww::testing::p4();
  auto view = PartitionView::at_time(inst.graph, inst.cs, 1);
  EXPECT_EQ(ltp_time1(arena, inst.graph, {2}, 2), ltp_ref(arena, inst.graph, view, {2}, 2));
  EXPECT_EQ(arena.node(ltp_time1(arena, inst.graph, {2}, 1)).members.size(), 1u);
}

TEST(LocalTypes, AbstractBoundGrowsWithWidth) {
  EXPECT_DOUBLE_EQ(abstract_type_bound_log2(0, 1, 3), 0.0);
  EXPECT_DOUBLE_EQ(abstract_type_bound_log2(0, 2, 3), std::log2(3.0));
  EXPECT_LT(abstract_type_bound_log2(1, 1, 1), abstract_type_bound_log2(1, 1, 2));
}

namespace {

void expect_clean(const tww::testing::LemmaReport& report) {
  for (const char* lemma : {"ltp_basic", "to_global", "universe", "relevant_invariance", "promote", "trim", "join"}) {
    auto it = report.find(lemma);
    ASSERT_NE(it, report.end()) << lemma;
    EXPECT_GT(it->second.checked, 0) << lemma;
    EXPECT_EQ(it->second.failed, 0) << lemma << ": " << it->second.first_failure;
  }
}

}  // namespace

TEST(Calculus, LemmaSuiteRankTwo) {
  tww::testing::LemmaReport report;
  for (auto& f : small_fixtures(12, 7)) tww::testing::run_lemma_suite(f.name, f.inst, 2, report);
  expect_clean(report);
}

TEST(Calculus, LemmaSuiteLongPath) {
  tww::testing::LemmaReport report;
  tww::testing::run_lemma_suite("path12", path_instance(12), 2, report);
  tww::testing::run_lemma_suite("grid3x4", grid_instance(3, 4), 1, report);
  expect_clean(report);
}

TEST(Calculus, ScanOnSingleVertexNeverLeavesRegion) {
  for (auto& f : small_fixtures(20)) {
    TypeArena arena;
    auto regions = compute_relevant_regions(f.inst.graph, f.inst.cs, scan_radius(2));
    UniverseScan scan(arena, f.inst.graph, f.inst.cs, 2, regions);
    while (scan.time() < f.inst.cs.n) EXPECT_NO_THROW(scan.advance()) << f.name;
  }
}
