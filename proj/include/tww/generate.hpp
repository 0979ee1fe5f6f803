#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tww/graph.hpp"
#include "tww/sequence.hpp"

namespace tww {

// Turns a list of merges of current part ids into a fully annotated sequence.
// The i-th merge (0-based) creates part n+i+1.
ContractionSequence build_sequence(const Graph& g, const std::vector<std::pair<int, int>>& merges);

// Greedy sequence: each step takes the pair minimising the resulting maximum impurity degree,
// ties broken by the smallest pair of part ids.
ContractionSequence greedy_contraction_sequence(const Graph& g);

struct Instance {
  Graph graph;
  ContractionSequence cs;
};

Instance path_instance(int n);
Instance grid_instance(int rows, int cols);
Instance random_instance(int n, double p, std::uint64_t seed);
Instance edgeless_instance(int n);
Instance complete_instance(int n);

// family in {path, grid, random, edgeless, complete}; for grid, n is rounded to a near-square shape.
Instance make_family(const std::string& family, int n, std::uint64_t seed, double p = 0.3);

}  // namespace tww
