#pragma once

#include <cstddef>
#include <cstdint>

#include "tww/formula.hpp"
#include "tww/generate.hpp"

namespace tww {

struct BenchRow {
  int n = 0;
  double query_build_ms = 0;
  double query_us = 0;  // mean over random tuples
  double enum_build_ms = 0;
  std::size_t outputs = 0;  // one full enumeration cycle
  double steps_per_output = 0;
};

// Builds both indexes for phi on the instance, times random queries and one enumeration cycle.
BenchRow run_bench(const Instance& inst, const Formula& phi, int queries, std::uint64_t seed);

}  // namespace tww
