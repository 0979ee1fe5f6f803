#include "fixtures.hpp"

#include <random>

namespace tww::testing {

Instance p4() {
  Graph g = parse_graph(kP4Graph);
  auto cs = parse_contraction_sequence(kP4Cs, g);
  return {std::move(g), std::move(cs)};
}

std::vector<Fixture> small_fixtures(int random_count, int max_n, unsigned seed) {
  std::vector<Fixture> out;
  out.push_back({"p4", p4()});
  out.push_back({"single", path_instance(1)});
  out.push_back({"path6", path_instance(std::min(6, max_n))});
  out.push_back({"grid2x3", grid_instance(2, 3)});
  out.push_back({"edgeless4", edgeless_instance(4)});
  out.push_back({"complete4", complete_instance(4)});
  {
    Graph star(4);
    for (int v = 1; v <= 3; ++v) star.add_edge(v, 4);
    auto cs = greedy_contraction_sequence(star);
    out.push_back({"star", {std::move(star), std::move(cs)}});
  }
  {
    Graph c(5);
    for (int v = 1; v <= 5; ++v) c.add_edge(v, v % 5 + 1);
    auto cs = greedy_contraction_sequence(c);
    out.push_back({"cycle5", {std::move(c), std::move(cs)}});
  }
  std::mt19937 rng(seed);
  const double ps[] = {0.2, 0.35, 0.5, 0.7};
  for (int i = 0; i < random_count; ++i) {
    int n = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_n - 1));
    double p = ps[rng() % 4];
    out.push_back({"random" + std::to_string(i) + "_n" + std::to_string(n), random_instance(n, p, rng())});
  }
  return out;
}

std::vector<FormulaPtr> sentence_pool() {
  const char* src[] = {
      "exists x exists y (E x y)",
      "exists x forall y (not E x y)",
      "forall x forall y (x = y or not E x y)",
      "forall x exists y (E x y)",
      "exists x exists y exists z (E x y and E y z and E x z)",
      "exists x exists y (not x = y and not E x y)",
      "forall x exists y exists z (not y = z and E x y and E x z)",
      "exists x forall y (x = y or E x y)",
      "forall x forall y (E x y or x = y or exists z (E x z and E z y))",
      "exists x exists y (not x = y and forall z (E x z or E y z or z = x or z = y))",
      "forall x (exists y (E x y) or forall y (x = y))",
      "exists x exists y exists z (E x y and E y z and not E x z and not x = z)",
      "not exists x exists y (E x y and forall z (not E y z or z = x))",
      "exists x (forall y (not E x y or exists z (E y z and not z = x)))",
  };
  std::vector<FormulaPtr> out;
  for (const char* s : src) out.push_back(parse_formula(s));
  return out;
}

std::vector<FormulaPtr> query_pool() {
  const char* src[] = {
      "E x y",
      "x = y",
      "not E x y and not x = y",
      "exists z (E x z and E z y)",
      "exists z (E x z)",
      "forall z (not E x z)",
      "exists z exists w (E x z and E z w and not x = w)",
      "forall z (E x z or x = z)",
      "E x y or exists z (E x z and E y z)",
      "exists z (E x z and not E y z and not y = z)",
      "forall y (not E x y or exists z (E y z and not z = x))",
  };
  std::vector<FormulaPtr> out;
  for (const char* s : src) out.push_back(parse_formula(s));
  return out;
}

}  // namespace tww::testing
