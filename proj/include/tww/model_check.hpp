#pragma once

#include <cstddef>

#include "tww/formula.hpp"
#include "tww/graph.hpp"
#include "tww/sequence.hpp"

namespace tww {

struct ScanStats {
  std::size_t steps = 0;
  std::size_t max_updates = 0;      // (part, rank) universes recomputed in one step
  std::size_t max_region = 0;       // largest relevant region
  std::size_t total_updates = 0;
  std::size_t arena_types = 0;
};

// Decides a sentence along the contraction sequence.
bool model_check(const Graph& g, const ContractionSequence& cs, const Formula& phi, ScanStats* stats = nullptr);

struct Interpretation {
  Graph graph;
  ContractionSequence cs;
};

// Graph with uv an edge iff phi(u,v) and phi(v,u), plus a contraction sequence for it
// obtained by splitting parts by local types.
Interpretation interpret(const Graph& g, const ContractionSequence& cs, const Formula& phi);

}  // namespace tww
