#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tww/graph.hpp"

namespace tww {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { True, False, Eq, Edge, Not, And, Or, Exists, Forall };
  Kind kind;
  std::string x, y;  // atom variables, or the bound variable of a quantifier
  FormulaPtr left, right;

  static FormulaPtr atom_eq(std::string a, std::string b);
  static FormulaPtr atom_edge(std::string a, std::string b);
  static FormulaPtr neg(FormulaPtr f);
  static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr exists(std::string v, FormulaPtr f);
  static FormulaPtr forall(std::string v, FormulaPtr f);
};

class FormulaSyntaxError : public std::runtime_error {
 public:
  FormulaSyntaxError(std::size_t pos, const std::string& what)
      : std::runtime_error("formula syntax error at offset " + std::to_string(pos) + ": " + what) {}
};

FormulaPtr parse_formula(std::string_view text);
std::string to_string(const Formula& f);

// Free variables in sorted order; this order fixes tuple positions everywhere.
std::vector<std::string> free_vars(const Formula& f);
int quantifier_rank(const Formula& f);

using Assignment = std::map<std::string, int>;

bool naive_eval(const Graph& g, const Formula& f, const Assignment& asg);
// Tuples are listed in the order of free_vars(f).
std::vector<std::vector<int>> naive_satisfying_set(const Graph& g, const Formula& f);

}  // namespace tww
