#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tww/formula.hpp"

using namespace tww;

TEST(ParseFormula, RanksAndFreeVariables) {
  auto a = parse_formula("E x y");
  EXPECT_EQ(quantifier_rank(*a), 0);
  EXPECT_EQ(free_vars(*a), (std::vector<std::string>{"x", "y"}));
  auto b = parse_formula("exists y (E x y)");
  EXPECT_EQ(quantifier_rank(*b), 1);
  EXPECT_EQ(free_vars(*b), (std::vector<std::string>{"x"}));
  auto c = parse_formula("forall x exists y (E x y)");
  EXPECT_EQ(quantifier_rank(*c), 2);
  EXPECT_TRUE(free_vars(*c).empty());
}

TEST(ParseFormula, SyntaxVariants) {
  EXPECT_EQ(to_string(*parse_formula("E(x, y)")), "E x y");
  auto f = parse_formula("not x = y and E x y or exists z z = z");
  EXPECT_EQ(f->kind, Formula::Kind::Or);
  EXPECT_EQ(quantifier_rank(*f), 1);
  EXPECT_THROW(parse_formula("E x"), FormulaSyntaxError);
  EXPECT_THROW(parse_formula("exists (E x y)"), FormulaSyntaxError);
  EXPECT_THROW(parse_formula("x = y )"), FormulaSyntaxError);
  EXPECT_THROW(parse_formula("x # y"), FormulaSyntaxError);
  EXPECT_THROW(parse_formula("E and y"), FormulaSyntaxError);
}

TEST(ParseFormula, PrintParseRoundTrip) {
  for (auto& f : tww::testing::sentence_pool()) {
    auto g = parse_formula(to_string(*f));
    EXPECT_EQ(to_string(*g), to_string(*f));
  }
}

TEST(ParseFormula, RankLaws) {
  auto p = parse_formula("exists x exists y E x y");
  auto q = parse_formula("forall z z = z");
  EXPECT_EQ(quantifier_rank(*Formula::neg(p)), quantifier_rank(*p));
  EXPECT_EQ(quantifier_rank(*Formula::conj(p, q)), 2);
  EXPECT_EQ(quantifier_rank(*Formula::exists("w", p)), 3);
}

TEST(NaiveEval, Examples) {
  Graph g = parse_graph(tww::testing::kP4Graph);
  EXPECT_TRUE(naive_eval(g, *parse_formula("E x y"), {{"x", 2}, {"y", 3}}));
  EXPECT_TRUE(naive_eval(g, *parse_formula("exists y E x y"), {{"x", 1}}));
  EXPECT_FALSE(naive_eval(g, *parse_formula("exists x forall y (not E x y)"), {}));
  EXPECT_THROW(naive_eval(g, *parse_formula("E x y"), {{"x", 1}}), std::invalid_argument);
}

TEST(NaiveEval, SatisfyingSets) {
  Graph g = parse_graph(tww::testing::kP4Graph);
  auto e = naive_satisfying_set(g, *parse_formula("E x y"));
  EXPECT_EQ(e, (std::vector<std::vector<int>>{{1, 2}, {2, 1}, {2, 3}, {3, 2}, {3, 4}, {4, 3}}));
  EXPECT_EQ(naive_satisfying_set(g, *parse_formula("x = x")).size(), 4u);
  EXPECT_TRUE(naive_satisfying_set(Graph(2), *parse_formula("E x y")).empty());
}

TEST(NaiveEval, BoundVariableRenaming) {
  auto fixtures = tww::testing::small_fixtures(20);
  auto a = parse_formula("forall x exists y (E x y or x = y)");
  auto b = parse_formula("forall u exists w (E u w or u = w)");
  for (auto& f : fixtures) EXPECT_EQ(naive_eval(f.inst.graph, *a, {}), naive_eval(f.inst.graph, *b, {}));
}

TEST(NaiveEval, IsomorphismInvariance) {
  for (auto& f : tww::testing::small_fixtures(20)) {
    const Graph& g = f.inst.graph;
    Graph h(g.n());
    for (auto [u, v] : g.edges()) h.add_edge(g.n() + 1 - u, g.n() + 1 - v);
    for (auto& phi : tww::testing::sentence_pool()) EXPECT_EQ(naive_eval(g, *phi, {}), naive_eval(h, *phi, {}));
  }
}
