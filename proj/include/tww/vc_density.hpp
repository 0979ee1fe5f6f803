#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tww/formula.hpp"
#include "tww/graph.hpp"
#include "tww/sequence.hpp"

namespace tww {

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget);
  std::uint64_t required() const { return required_; }

 private:
  std::uint64_t required_;
};

struct BipartiteSequence {
  ContractionSequence cs;
  std::vector<char> in_a;  // by vertex
};

// Splits every contraction into its A-side and complement-side halves, then joins the two sides.
// A empty or A = V returns the input sequence.
BipartiteSequence make_bipartite(const Graph& g, const ContractionSequence& cs, const std::vector<int>& a);

// Whether every part before the last time lies inside A or outside it.
bool parts_respect(const ContractionSequence& cs, const std::vector<char>& in_a);

struct DistanceColoring {
  int r = 0;
  std::vector<int> color;  // by vertex; -1 on A, colors 0..palette-1 elsewhere
  int palette = 0;
};

DistanceColoring distance_coloring(const Graph& g, const BipartiteSequence& bs, int r);

// Earliest time at which all of X lie in one part.
int meeting_time(const ContractionSequence& cs, const std::vector<int>& x);

struct StoneSpace {
  std::vector<std::string> xvars, yvars;
  std::vector<int> a;
  // distinct traces (sorted lists of x-tuples over A) with one witness y-tuple each
  std::vector<std::pair<std::vector<std::vector<int>>, std::vector<int>>> traces;
  std::size_t size() const { return traces.size(); }
};

// Parameter variables: yvars if given, else the free variables whose names start with 'y'.
std::vector<std::string> parameter_vars(const Formula& phi, const std::vector<std::string>& yvars = {});

StoneSpace stone_space(const Graph& g, const std::vector<int>& a, const Formula& phi,
                       const std::vector<std::string>& yvars = {}, std::uint64_t budget = 20'000'000);

// Number of classes of y-tuples with the given colors, where two tuples are equivalent when
// every x-tuple over A gives the same local type at time t. Requires t at or after the meeting
// time of every listed color class.
int count_type_classes(const Graph& g, const BipartiteSequence& bs, const DistanceColoring& col,
                       const std::vector<int>& colors, int x_arity, int t, int k, std::uint64_t budget = 50'000'000);

// Maximum class count over single colors (one parameter variable), each at its meeting time.
int max_type_classes(const Graph& g, const BipartiteSequence& bs, const DistanceColoring& col, int x_arity, int k);

// Slope of the least-squares line through (log x, log y).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct VcRow {
  int a_size;
  int n;
  std::size_t stone_size;
};

struct VcReport {
  std::vector<VcRow> rows;
  double exponent = 0;
  int y_arity = 0;
  bool flagged = false;  // exponent above y_arity + 0.3
};

// For each size s: a family graph on 2s vertices with A the odd-numbered vertices.
VcReport vc_density_report(const std::string& family, const std::vector<int>& sizes, const Formula& phi,
                           const std::vector<std::string>& yvars = {}, std::uint64_t seed = 1);

// Instance and target set used by the report for one size.
std::vector<int> odd_vertices(int n);

}  // namespace tww
