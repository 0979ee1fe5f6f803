#pragma once

#include <string>
#include <vector>

#include "tww/formula.hpp"
#include "tww/generate.hpp"

namespace tww::testing {

inline constexpr const char* kP4Graph = "4 3\n1 2\n2 3\n3 4\n";
inline constexpr const char* kP4Cs = "3 4 5 1\n2 C N\n1 2 6 1\n5 N I\n6 5 7 0\n";

Instance p4();

struct Fixture {
  std::string name;
  Instance inst;
};

// Hand-picked small graphs plus seeded random graphs with greedy sequences, all n <= max_n.
std::vector<Fixture> small_fixtures(int random_count, int max_n = 8, unsigned seed = 7);

// Sentences of rank <= 3.
std::vector<FormulaPtr> sentence_pool();
// Formulas with one or two free variables and rank <= 2.
std::vector<FormulaPtr> query_pool();

}  // namespace tww::testing
