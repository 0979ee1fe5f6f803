#include "tww/bench.hpp"

#include <chrono>
#include <random>

#include "tww/enumerate.hpp"
#include "tww/query.hpp"

namespace tww {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

BenchRow run_bench(const Instance& inst, const Formula& phi, int queries, std::uint64_t seed) {
  BenchRow row;
  row.n = inst.graph.n();
  auto t0 = std::chrono::steady_clock::now();
  {
    // scoped so the enumeration build below starts from the same heap state
    QueryEngine qe(inst.graph, inst.cs, phi);
    row.query_build_ms = ms_since(t0);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(1, row.n);
    std::vector<std::vector<int>> tuples(static_cast<std::size_t>(queries), std::vector<int>(qe.variables().size()));
    for (auto& t : tuples)
      for (int& v : t) v = pick(rng);
    std::size_t hits = 0;
    t0 = std::chrono::steady_clock::now();
    for (const auto& t : tuples) hits += qe.answer(t);
    if (queries > 0) row.query_us = ms_since(t0) * 1000.0 / queries;
    (void)hits;
  }

  auto t1 = std::chrono::steady_clock::now();
  EnumerationIndex idx(inst.graph, inst.cs, phi);
  row.enum_build_ms = ms_since(t1);
  StepCounter counter;
  auto e = idx.enumerator(&counter);
  Tuple out;
  while (e->next(out)) ++row.outputs;
  row.steps_per_output = static_cast<double>(counter.steps) / static_cast<double>(row.outputs + 1);
  return row;
}

}  // namespace tww
