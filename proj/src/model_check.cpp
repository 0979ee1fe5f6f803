#include "tww/model_check.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tww/calculus.hpp"
#include "tww/enumerate.hpp"
#include "tww/generate.hpp"
#include "tww/relevant.hpp"
#include "tww/types.hpp"

namespace tww {

bool model_check(const Graph& g, const ContractionSequence& cs, const Formula& phi, ScanStats* stats) {
  if (!free_vars(phi).empty()) throw std::invalid_argument("model checking needs a sentence");
  const int q = quantifier_rank(phi);
  if (q == 0 || g.n() == 0) return naive_eval(g, phi, {});
  const int k = q - 1;
  check_rank_cap(k, 1);
  TypeArena arena;
  auto regions = compute_relevant_regions(g, cs, scan_radius(k));
  UniverseScan scan(arena, g, cs, k, regions);
  ScanStats local;
  for (const auto& rg : regions) local.max_region = std::max<std::size_t>(local.max_region, rg.tg.parts.size());
  while (scan.time() < cs.n) {
    scan.advance();
    ++local.steps;
    local.total_updates += scan.last_updates();
    local.max_updates = std::max(local.max_updates, scan.last_updates());
  }
  std::vector<TypeId> members;
  for (TypeId t : scan.single(cs.root(), k)) members.push_back(arena.to_global(t));
  TypeId whole = arena.global(static_cast<std::uint8_t>(q), Atom{}, std::move(members));
  local.arena_types = arena.size();
  if (stats) *stats = local;
  return eval_on_type(arena, whole, phi);
}

Interpretation interpret(const Graph& g, const ContractionSequence& cs, const Formula& phi) {
  if (free_vars(phi).size() != 2) throw std::invalid_argument("interpretation needs exactly two free variables");
  const int n = g.n();
  const int q = quantifier_rank(phi);
  check_rank_cap(q, 1);

  Graph h(n);
  {
    EnumerationIndex index(g, cs, phi);
    auto en = index.enumerator();
    std::set<std::pair<int, int>> sat;
    std::vector<int> tup;
    while (en->next(tup)) sat.emplace(tup[0], tup[1]);
    for (auto [u, v] : sat)
      if (u < v && sat.count({v, u})) h.add_edge(u, v);
  }
  if (n <= 1) return {h, ContractionSequence{n, {}}};

  TypeArena arena;
  auto regions = compute_relevant_regions(g, cs, scan_radius(q));
  UniverseScan scan(arena, g, cs, q, regions);
  // per part of the original sequence: (type, class part id in the new sequence)
  std::vector<std::vector<std::pair<TypeId, int>>> cls(static_cast<std::size_t>(2 * n));
  for (int v = 1; v <= n; ++v) cls[v] = {{scan.single(v, q).front(), v}};
  std::vector<std::pair<int, int>> merges;
  int next_id = n + 1;
  auto merge_chain = [&](std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    int cur = ids.front();
    for (std::size_t i = 1; i < ids.size(); ++i) {
      merges.emplace_back(cur, ids[i]);
      cur = next_id++;
    }
    return cur;
  };
  auto regroup = [&](StepContext& ctx, const std::vector<std::pair<TypeId, int>>& entries) {
    std::map<TypeId, std::vector<int>> groups;
    for (auto [t, c] : entries) groups[ctx.promote(t)].push_back(c);
    std::vector<std::pair<int, TypeId>> order;
    for (auto& [t, ids] : groups) order.emplace_back(*std::min_element(ids.begin(), ids.end()), t);
    std::sort(order.begin(), order.end());
    std::vector<std::pair<TypeId, int>> out;
    for (auto [first, t] : order) out.emplace_back(t, merge_chain(groups[t]));
    return out;
  };

  while (scan.time() < n) {
    scan.advance([&](StepContext& ctx) {
      const auto& rg = ctx.region();
      auto entries = cls[rg.a];
      entries.insert(entries.end(), cls[rg.a2].begin(), cls[rg.a2].end());
      std::vector<std::pair<int, std::vector<std::pair<TypeId, int>>>> updates;
      updates.emplace_back(rg.b, regroup(ctx, entries));
      for (int i = 2; i < rg.tg.size(); ++i)
        if (rg.dist_next[i] <= (1 << q)) updates.emplace_back(rg.tg.parts[i], regroup(ctx, cls[rg.tg.parts[i]]));
      cls[rg.a].clear();
      cls[rg.a2].clear();
      for (auto& [p, e] : updates) cls[p] = std::move(e);
    });
  }
  std::vector<int> rest;
  for (auto [t, c] : cls[cs.root()]) rest.push_back(c);
  merge_chain(rest);
  return {h, build_sequence(h, merges)};
}

}  // namespace tww
