#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "tww/calculus.hpp"
#include "tww/close_tree.hpp"
#include "tww/firstclose.hpp"
#include "tww/query.hpp"

using namespace tww;
using tww::testing::small_fixtures;

namespace {

Instance convex(const Instance& inst) {
  auto re = reindex_convex(inst.graph, inst.cs);
  return {re.graph, re.cs};
}

std::vector<Instance> larger_fixtures() {
  std::vector<Instance> out;
  out.push_back(path_instance(64));
  out.push_back(grid_instance(4, 16));
  out.push_back(grid_instance(8, 8));
  out.push_back(convex(random_instance(30, 0.15, 3)));
  out.push_back(convex(random_instance(40, 0.08, 4)));
  out.push_back(edgeless_instance(20));
  out.push_back(complete_instance(20));
  return out;
}

void check_first_close(const Instance& inst, int r, const std::string& name) {
  const int n = inst.graph.n();
  auto rects = build_firstclose_rectangles(inst.graph, inst.cs, r);
  std::vector<std::vector<int>> cover(n + 1, std::vector<int>(n + 1, 0));
  for (auto& rc : rects)
    for (int u = rc.x1; u <= rc.x2; ++u)
      for (int v = rc.y1; v <= rc.y2; ++v) ++cover[u][v];
  auto fc = first_close_bruteforce(inst.graph, inst.cs, r);
  RangeIndex idx(n, rects);
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v) {
      ASSERT_EQ(cover[u][v], 1) << name << " r=" << r << " cell " << u << "," << v;
      ASSERT_EQ(idx.first_close(u, v), fc[u][v]) << name << " r=" << r << " cell " << u << "," << v;
    }
}

}  // namespace

TEST(FirstClose, P4Examples) {
  auto inst = tww::testing::p4();
  auto rects = build_firstclose_rectangles(inst.graph, inst.cs, 1);
  RangeIndex idx(4, rects);
  EXPECT_EQ(idx.first_close(2, 3), 2);
  EXPECT_EQ(idx.first_close(1, 4), 3);
  for (int v = 1; v <= 4; ++v) EXPECT_EQ(idx.first_close(v, v), 1);
  EXPECT_THROW(idx.first_close(0, 1), std::out_of_range);
  EXPECT_THROW(idx.first_close(1, 5), std::out_of_range);
}

TEST(FirstClose, SingleVertex) {
  auto inst = path_instance(1);
  auto rects = build_firstclose_rectangles(inst.graph, inst.cs, 1);
  ASSERT_EQ(rects.size(), 1u);
  EXPECT_EQ(RangeIndex(1, rects).first_close(1, 1), 1);
}

TEST(FirstClose, EdgelessRadiusZero) {
  auto inst = edgeless_instance(6);
  auto fc = first_close_bruteforce(inst.graph, inst.cs, 0);
  PartForest forest(inst.cs);
  RangeIndex idx(6, build_firstclose_rectangles(inst.graph, inst.cs, 0));
  for (int u = 1; u <= 6; ++u)
    for (int v = 1; v <= 6; ++v) {
      int t = 1;
      while (forest.part_at(u, t) != forest.part_at(v, t)) ++t;
      EXPECT_EQ(fc[u][v], t);
      EXPECT_EQ(idx.first_close(u, v), t);
    }
}

TEST(FirstClose, MatchesBruteForce) {
  for (auto& f : small_fixtures(30))
    for (int r : {1, 2, 4}) check_first_close(convex(f.inst), r, f.name);
  int i = 0;
  for (auto& inst : larger_fixtures())
    for (int r : {1, 2, 4}) check_first_close(inst, r, "large" + std::to_string(i++));
}

TEST(FirstClose, NonConvexSequenceRejected) {
  Graph star(4);
  for (int v = 2; v <= 4; ++v) star.add_edge(1, v);
  auto cs = build_sequence(star, {{2, 4}, {5, 3}, {6, 1}});
  EXPECT_THROW(build_firstclose_rectangles(star, cs, 1), ValidationError);
}

TEST(PartLocator, MatchesForest) {
  for (auto inst : {path_instance(50), grid_instance(5, 7), random_instance(8, 0.4, 9)}) {
    PartForest forest(inst.cs);
    PartLocator loc(inst.cs);
    for (int v = 1; v <= inst.cs.n; ++v)
      for (int t = 1; t <= inst.cs.n; ++t) ASSERT_EQ(loc.part_at(v, t), forest.part_at(v, t));
  }
}

namespace {

// Vertex tuples whose parts at time t are exactly `parts`.
std::vector<std::vector<int>> realizing(const PartitionView& view, const std::vector<int>& parts) {
  std::vector<std::vector<int>> out{{}};
  for (int p : parts) {
    std::vector<std::vector<int>> next;
    for (auto& pre : out)
      for (int v : view.members[view.index(p)]) {
        auto t = pre;
        t.push_back(v);
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

int index_of(const CloseNode& nd, TypeId t) {
  auto it = std::lower_bound(nd.universe.begin(), nd.universe.end(), t);
  return it != nd.universe.end() && *it == t ? static_cast<int>(it - nd.universe.begin()) : -1;
}

void check_forest(const Instance& inst, int k, int m, const std::string& name) {
  const Graph& g = inst.graph;
  CloseForest forest(g, inst.cs, k, m);
  TypeArena& arena = forest.arena();
  std::vector<PartitionView> views{PartitionView{}};
  for (int t = 1; t <= g.n(); ++t) views.push_back(PartitionView::at_time(g, inst.cs, t));
  const int r = 1 << k;
  for (std::size_t id = 0; id < forest.size(); ++id) {
    const CloseNode& nd = forest.node(static_cast<int>(id));
    const auto& view = views[nd.time];
    const std::string where = name + " node " + std::to_string(id) + " t=" + std::to_string(nd.time);
    // the part tuple is r-close
    for (std::size_t i = 0; i < nd.parts.size(); ++i) {
      bool linked = nd.parts.size() == 1;
      for (std::size_t j = 0; j < nd.parts.size(); ++j)
        if (i != j && view.distance(nd.parts[i], nd.parts[j]) <= r * static_cast<int>(nd.parts.size() - 1)) linked = true;
      ASSERT_TRUE(linked) << where;
    }
    ASSERT_EQ(nd.universe, realized_universe_ref(arena, g, view, nd.parts, k)) << where;
    if (nd.parent >= 0) {
      const CloseNode& par = forest.node(nd.parent);
      ASSERT_GT(par.time, nd.time) << where;
      for (auto& w : realizing(view, nd.parts)) {
        int child_t = index_of(nd, ltp_ref(arena, g, view, w, k));
        int parent_t = index_of(par, ltp_ref(arena, g, views[par.time], w, k));
        ASSERT_GE(child_t, 0);
        ASSERT_EQ(nd.to_parent[child_t], parent_t) << where << " edge to " << nd.parent;
      }
    }
  }
  for (int j = 1; j <= m; ++j) {
    const CloseNode& root = forest.node(forest.root(j));
    EXPECT_EQ(root.time, g.n());
    EXPECT_EQ(root.parts, std::vector<int>(j, inst.cs.root()));
  }
}

}  // namespace

TEST(CloseForest, P4Shape) {
  auto inst = tww::testing::p4();
  CloseForest forest(inst.graph, inst.cs, 0, 1);
  for (int v = 1; v <= 4; ++v) EXPECT_GE(forest.leaf(1, v), 0);
  EXPECT_EQ(forest.node(forest.root(1)).parts, (std::vector<int>{7}));
  EXPECT_EQ(forest.node(forest.root(1)).time, 4);
  EXPECT_EQ(forest.warp(forest.root(1), forest.root(1), 0), 0);
  EXPECT_THROW(forest.warp(forest.root(1), forest.leaf(1, 1), 0), std::invalid_argument);
}

TEST(CloseForest, UniversesAndEdgesMatchReference) {
  for (auto& f : small_fixtures(15, 7)) {
    auto inst = convex(f.inst);
    for (int k : {0, 1, 2}) check_forest(inst, k, 2, f.name + " k=" + std::to_string(k));
  }
  check_forest(path_instance(12), 1, 2, "path12");
  check_forest(grid_instance(3, 3), 1, 2, "grid3x3");
}

TEST(CloseForest, WarpComposes) {
  for (auto& f : small_fixtures(10)) {
    auto inst = convex(f.inst);
    CloseForest forest(inst.graph, inst.cs, 1, 2);
    for (std::size_t a = 0; a < forest.size(); ++a) {
      std::vector<int> chain{static_cast<int>(a)};
      while (forest.node(chain.back()).parent >= 0) chain.push_back(forest.node(chain.back()).parent);
      for (std::size_t t = 0; t < forest.node(static_cast<int>(a)).universe.size(); ++t)
        for (std::size_t i = 0; i < chain.size(); ++i)
          for (std::size_t j = i; j < chain.size(); ++j) {
            int direct = forest.warp(chain[0], chain[j], static_cast<int>(t));
            int split = forest.warp(chain[i], chain[j], forest.warp(chain[0], chain[i], static_cast<int>(t)));
            ASSERT_EQ(direct, split);
          }
    }
  }
}

TEST(CloseForest, NodeCountLinearOnPaths) {
  std::vector<double> per_vertex;
  for (int n : {256, 1024, 4096}) {
    CloseForest forest(path_instance(n).graph, path_instance(n).cs, 1, 2);
    per_vertex.push_back(static_cast<double>(forest.size()) / n);
  }
  EXPECT_LE(per_vertex.back(), per_vertex.front() * 1.5);
}

TEST(QueryEngine, P4Examples) {
  auto inst = tww::testing::p4();
  QueryEngine e(inst.graph, inst.cs, *parse_formula("E(x,y)"));
  EXPECT_TRUE(e.answer(Assignment{{"x", 2}, {"y", 3}}));
  EXPECT_FALSE(e.answer(Assignment{{"x", 1}, {"y", 3}}));
  EXPECT_FALSE(e.answer(Assignment{{"x", 1}, {"y", 4}}));
  QueryEngine e2(inst.graph, inst.cs, *parse_formula("exists z (E x z and E z y)"));
  EXPECT_TRUE(e2.answer(Assignment{{"x", 1}, {"y", 3}}));
  QueryEngine eq(inst.graph, inst.cs, *parse_formula("x = y"));
  for (int v = 1; v <= 4; ++v) EXPECT_TRUE(eq.answer(std::vector<int>{v, v}));
  EXPECT_THROW(e.answer(Assignment{{"x", 1}}), std::invalid_argument);
  EXPECT_THROW(e.answer(std::vector<int>{1, 9}), std::out_of_range);
  EXPECT_THROW(QueryEngine(inst.graph, inst.cs, *parse_formula("exists x E x x")), std::invalid_argument);
}

TEST(QueryEngine, SingleVertex) {
  auto inst = path_instance(1);
  QueryEngine e(inst.graph, inst.cs, *parse_formula("x = y and not E x y"));
  EXPECT_TRUE(e.answer(std::vector<int>{1, 1}));
}

TEST(QueryEngine, MatchesNaiveOnFixtures) {
  for (auto& f : small_fixtures(25)) {
    for (auto& phi : tww::testing::query_pool()) {
      QueryEngine e(f.inst.graph, f.inst.cs, *phi);
      auto vars = e.variables();
      const int n = f.inst.graph.n();
      std::vector<int> tup(vars.size(), 1);
      while (true) {
        Assignment asg;
        for (std::size_t i = 0; i < vars.size(); ++i) asg[vars[i]] = tup[i];
        ASSERT_EQ(e.answer(tup), naive_eval(f.inst.graph, *phi, asg)) << f.name << " " << to_string(*phi);
        std::size_t i = tup.size();
        while (i > 0 && tup[i - 1] == n) tup[--i] = 1;
        if (i == 0) break;
        ++tup[i - 1];
      }
    }
  }
}

TEST(QueryEngine, ThreeVariables) {
  auto phi = parse_formula("E x y and E y z and not x = z");
  for (auto& f : small_fixtures(6, 6)) {
    QueryEngine e(f.inst.graph, f.inst.cs, *phi);
    const int n = f.inst.graph.n();
    for (int x = 1; x <= n; ++x)
      for (int y = 1; y <= n; ++y)
        for (int z = 1; z <= n; ++z)
          ASSERT_EQ(e.answer(std::vector<int>{x, y, z}), naive_eval(f.inst.graph, *phi, {{"x", x}, {"y", y}, {"z", z}}))
              << f.name;
  }
}

namespace {

std::string canonical(const TypeArena& arena, TypeId t) {
  const TypeNode& nd = arena.node(t);
  std::string out = std::to_string(nd.k) + (nd.global ? "g" : "l") + std::to_string(nd.atom.m) + ":" +
                    std::to_string(nd.atom.eq) + ":" + std::to_string(nd.atom.adj) + "[";
  for (int p : nd.parts) out += std::to_string(p) + ",";
  std::vector<std::string> members;
  for (TypeId m : nd.members) members.push_back(canonical(arena, m));
  std::sort(members.begin(), members.end());
  out += "]{";
  for (auto& m : members) out += m + ";";
  return out + "}";
}

}  // namespace

TEST(QueryEngine, IntermediateTypesMatchReference) {
  auto phi = parse_formula("exists z (E x z and E z y)");
  for (auto& f : small_fixtures(10)) {
    QueryEngine e(f.inst.graph, f.inst.cs, *phi);
    auto re = reindex_convex(f.inst.graph, f.inst.cs);
    const CloseForest& forest = e.forest();
    TypeArena arena;
    const int n = f.inst.graph.n();
    for (int x = 1; x <= n; ++x)
      for (int y = 1; y <= n; ++y) {
        std::vector<QueryEngine::Trace> trace;
        e.answer_traced({x, y}, &trace);
        ASSERT_FALSE(trace.empty());
        std::vector<int> internal{re.eta[x], re.eta[y]};
        for (auto& step : trace) {
          const CloseNode& nd = forest.node(step.node);
          auto view = PartitionView::at_time(re.graph, re.cs, nd.time);
          std::vector<int> w;
          for (int i : step.positions) w.push_back(internal[i]);
          EXPECT_EQ(canonical(forest.arena(), nd.universe[step.type_index]),
                    canonical(arena, ltp_ref(arena, re.graph, view, w, 1)))
              << f.name << " (" << x << "," << y << ") t=" << nd.time;
        }
      }
  }
}
