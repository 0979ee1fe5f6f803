#include "tww/query.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tww {

QueryEngine::QueryEngine(const Graph& g, const ContractionSequence& cs, const Formula& phi) : vars_(free_vars(phi)) {
  if (vars_.empty()) throw std::invalid_argument("query engine needs at least one free variable");
  const int m = static_cast<int>(vars_.size());
  const int k = quantifier_rank(phi);
  check_rank_cap(k, m);
  validate(g, cs);
  n_ = g.n();
  if (n_ < 1) throw std::invalid_argument("query engine needs a nonempty graph");
  auto re = reindex_convex(g, cs);
  eta_ = re.eta;
  locator_ = std::make_unique<PartLocator>(re.cs);
  auto rects = build_firstclose_rectangles(re.graph, re.cs, 1 << k);
  proximity_ = RangeIndex(n_, rects);
  forest_ = std::make_unique<CloseForest>(re.graph, re.cs, k, m);
  auto& arena = forest_->arena();
  for (TypeId t : forest_->node(forest_->root(m)).universe) accept_.push_back(eval_on_type(arena, arena.to_global(t), phi));
  stats_.tree_nodes = forest_->size();
  stats_.rectangles = rects.size();
  stats_.types = arena.size();
  stats_.region_radius = forest_->radius();
}

bool QueryEngine::answer(const Assignment& w) const {
  std::vector<int> tuple;
  for (const auto& v : vars_) {
    auto it = w.find(v);
    if (it == w.end()) throw std::invalid_argument("assignment misses variable " + v);
    tuple.push_back(it->second);
  }
  if (w.size() != vars_.size()) throw std::invalid_argument("assignment has variables outside the formula");
  return answer(tuple);
}

bool QueryEngine::answer(const std::vector<int>& tuple) const { return answer_traced(tuple, nullptr); }

bool QueryEngine::answer_traced(const std::vector<int>& tuple, std::vector<Trace>* trace) const {
  const int m = static_cast<int>(vars_.size());
  if (static_cast<int>(tuple.size()) != m) throw std::invalid_argument("tuple length does not match the formula");
  std::vector<int> w(m);
  for (int i = 0; i < m; ++i) {
    if (tuple[i] < 1 || tuple[i] > n_) throw std::out_of_range("vertex " + std::to_string(tuple[i]) + " out of range");
    w[i] = eta_[tuple[i]];
  }
  const CloseForest& f = *forest_;
  auto parts_at = [&](const std::vector<int>& pos, int t) {
    std::vector<int> parts;
    for (int i : pos) parts.push_back(locator_->part_at(w[i], t));
    return parts;
  };

  // events: pairs of positions by the time they become close
  std::map<int, std::vector<std::pair<int, int>>> events;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) events[proximity_.first_close(w[i], w[j])].emplace_back(i, j);

  struct Comp {
    std::vector<int> pos;
    int node;
    int type;
  };
  std::vector<int> owner(m);
  std::vector<Comp> comps;
  std::vector<int> dsu(m);
  for (int i = 0; i < m; ++i) dsu[i] = i;
  auto root = [&](int x) {
    while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
    return x;
  };
  for (auto& [t, pairs] : events)
    if (t == 1)
      for (auto [i, j] : pairs) dsu[root(i)] = root(j);
  {
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < m; ++i) groups[root(i)].push_back(i);
    for (auto& [rt, pos] : groups) {
      int node = f.leaf(static_cast<int>(pos.size()), w[pos[0]]);
      for (int i : pos) owner[i] = static_cast<int>(comps.size());
      comps.push_back({pos, node, 0});
      if (trace) trace->push_back({pos, node, 0});
    }
  }

  for (auto& [t, pairs] : events) {
    if (t == 1) continue;
    for (auto [i, j] : pairs) dsu[root(i)] = root(j);
    std::map<int, std::vector<int>> merging;  // new root -> old components
    for (auto [i, j] : pairs) {
      merging[root(i)].push_back(owner[i]);
      merging[root(j)].push_back(owner[j]);
    }
    for (auto& [rt, old] : merging) {
      std::sort(old.begin(), old.end());
      old.erase(std::unique(old.begin(), old.end()), old.end());
      if (old.size() < 2) continue;
      std::vector<int> pos;
      for (int c : old) pos.insert(pos.end(), comps[c].pos.begin(), comps[c].pos.end());
      std::sort(pos.begin(), pos.end());
      // components of the preimage in order of their smallest position
      std::sort(old.begin(), old.end(), [&](int x, int y) { return comps[x].pos[0] < comps[y].pos[0]; });
      std::vector<int> types;
      for (int c : old) {
        int target = f.find(parts_at(comps[c].pos, t - 1), t - 1);
        if (target < 0) throw std::logic_error("component is not pinned before its merge");
        types.push_back(f.warp(comps[c].node, target, comps[c].type));
      }
      int node = f.find(parts_at(pos, t), t);
      if (node < 0) throw std::logic_error("new close tuple has no node");
      int type = f.birth(node, parts_at(pos, t - 1), types);
      if (type < 0) throw std::logic_error("missing birth entry");
      if (trace) trace->push_back({pos, node, type});
      int id = static_cast<int>(comps.size());
      for (int i : pos) owner[i] = id;
      comps.push_back({pos, node, type});
    }
  }
  const Comp& all = comps[owner[0]];
  if (static_cast<int>(all.pos.size()) != m) throw std::logic_error("tuple never became close");
  int type = f.warp(all.node, f.root(m), all.type);
  if (trace) trace->push_back({all.pos, f.root(m), type});
  return accept_[type];
}

}  // namespace tww
