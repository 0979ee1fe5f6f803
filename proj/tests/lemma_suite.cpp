#include "lemma_suite.hpp"

#include <algorithm>

#include "tww/calculus.hpp"
#include "tww/relevant.hpp"
#include "tww/types.hpp"

namespace tww::testing {

namespace {

void record(LemmaReport& report, const std::string& lemma, bool ok, const std::string& where) {
  auto& c = report[lemma];
  ++c.checked;
  if (!ok) {
    if (c.failed == 0) c.first_failure = where;
    ++c.failed;
  }
}

std::vector<std::vector<int>> short_tuples(int n) {
  std::vector<std::vector<int>> out;
  for (int u = 1; u <= n; ++u) out.push_back({u});
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v) out.push_back({u, v});
  return out;
}

std::string show(const std::vector<int>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

}  // namespace

void run_lemma_suite(const std::string& name, const Instance& inst, int max_k, LemmaReport& report) {
  const Graph& g = inst.graph;
  const auto& cs = inst.cs;
  const int n = g.n();
  TypeArena arena;
  const auto tuples = short_tuples(n);

  std::vector<PartitionView> views;
  views.push_back(PartitionView{});
  for (int t = 1; t <= n; ++t) views.push_back(PartitionView::at_time(g, cs, t));

  for (int v = 1; v <= n; ++v)
    for (int k = 0; k <= max_k; ++k)
      record(report, "ltp_basic", ltp_time1(arena, g, {v}, k) == ltp_ref(arena, g, views[1], {v}, k),
             name + " v=" + std::to_string(v) + " k=" + std::to_string(k));

  for (const auto& tup : tuples)
    for (int k = 0; k <= max_k; ++k)
      record(report, "to_global", arena.to_global(ltp_ref(arena, g, views[n], tup, k)) == tp(arena, g, tup, k),
             name + " " + show(tup) + " k=" + std::to_string(k));

  if (n <= 1) return;
  const int p = scan_radius(max_k);
  auto regions = compute_relevant_regions(g, cs, p);
  auto wider = compute_relevant_regions(g, cs, p + 2);
  UniverseScan scan(arena, g, cs, max_k, regions);
  UniverseScan wide_scan(arena, g, cs, max_k, wider);

  while (scan.time() < n) {
    const int s = scan.time();
    const auto& vs = views[s];
    const auto& vn = views[s + 1];
    const std::string at = name + " s=" + std::to_string(s);
    for (int part : vs.part_ids)
      for (int k = 0; k <= max_k; ++k) {
        bool same = scan.single(part, k) == realized_universe_ref(arena, g, vs, {part}, k);
        record(report, "universe", same, at + " part=" + std::to_string(part) + " k=" + std::to_string(k));
        record(report, "relevant_invariance", scan.universe_id(part, k) == wide_scan.universe_id(part, k),
               at + " part=" + std::to_string(part) + " k=" + std::to_string(k));
      }
    scan.advance([&](StepContext& ctx) {
      for (const auto& tup : tuples)
        for (int k = 0; k <= max_k; ++k) {
          const std::string where = at + " " + show(tup) + " k=" + std::to_string(k);
          const TypeId alpha = ltp_ref(arena, g, vs, tup, k);
          try {
            record(report, "promote", ctx.promote(alpha) == ltp_ref(arena, g, vn, tup, k), where);
          } catch (const RegionTooSmall&) {
            if (tup.size() == 1) record(report, "promote", false, where + " (region too small)");
            else ++report["promote"].skipped;
          }
          if (k == 0) continue;
          try {
            record(report, "trim", ctx.trim(alpha) == ltp_ref(arena, g, vs, tup, k - 1), where);
          } catch (const RegionTooSmall&) {
            ++report["trim"].skipped;  // trim is only needed near the contracted parts
          }
        }
      for (int u = 1; u <= n; ++u)
        for (int v = 1; v <= n; ++v)
          for (int k = 0; k <= max_k; ++k) {
            if (vs.distance(vs.owner[u], vs.owner[v]) <= (1 << k)) continue;
            const std::string where = at + " join " + std::to_string(u) + "," + std::to_string(v) + " k=" + std::to_string(k);
            try {
              TypeId j = ctx.join(ltp_ref(arena, g, vs, {u}, k), ltp_ref(arena, g, vs, {v}, k));
              record(report, "join", j == ltp_ref(arena, g, vs, {u, v}, k), where);
            } catch (const RegionTooSmall&) {
              ++report["join"].skipped;
            }
          }
    });
    wide_scan.advance();
  }
  // consistency: the scan's final universes agree with brute force at the last time
  for (int k = 0; k <= max_k; ++k)
    record(report, "universe", scan.single(cs.root(), k) == realized_universe_ref(arena, g, views[n], {cs.root()}, k),
           name + " final k=" + std::to_string(k));
}

}  // namespace tww::testing
