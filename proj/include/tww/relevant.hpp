#pragma once

#include <vector>

#include "tww/graph.hpp"
#include "tww/sequence.hpp"

namespace tww {

// Trigraph at time s around the contraction performed at time s+1.
// parts[0], parts[1] are the two merged parts; the rest are the parts of P_{s+1}
// within impurity distance `radius` of the new part, in BFS order.
struct RelevantRegion {
  int s = 0;
  int a = 0, a2 = 0, b = 0;
  int radius = 0;
  Trigraph tg;
  std::vector<int> dist_next;  // distance to b at time s+1 (0 for the merged parts)
};

// Regions for s = 1..n-1 (index s-1), via two scans over the sequence.
std::vector<RelevantRegion> compute_relevant_regions(const Graph& g, const ContractionSequence& cs, int p);

// From-scratch recomputation for a single s; used to cross-check.
RelevantRegion relevant_region_naive(const Graph& g, const ContractionSequence& cs, int s, int p);

}  // namespace tww
