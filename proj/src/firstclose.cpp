#include "tww/firstclose.hpp"

#include <algorithm>
#include <stdexcept>

#include "tww/calculus.hpp"
#include "tww/relevant.hpp"
#include "tww/types.hpp"

namespace tww {

PartLocator::PartLocator(const ContractionSequence& cs) : n_(cs.n) {
  PartForest forest(cs);
  const int ids = std::max(2 * n_, 2);
  parent_.assign(ids, 0);
  death_.assign(ids, n_ + 1);
  jump_.assign(ids, 0);
  std::vector<int> depth(ids, 0);
  if (n_ == 0) return;
  const int root = cs.root();
  for (int p = 1; p <= cs.max_id(); ++p) {
    parent_[p] = p == root ? p : forest.parent(p);
    death_[p] = forest.death(p);
  }
  // parents have larger ids, so descending order visits them first
  for (int p = cs.max_id(); p >= 1; --p) {
    const int par = parent_[p];
    if (par == p) {
      jump_[p] = p;
      continue;
    }
    depth[p] = depth[par] + 1;
    const int j1 = jump_[par], j2 = jump_[j1];
    jump_[p] = depth[par] - depth[j1] == depth[j1] - depth[j2] ? j2 : par;
  }
}

int PartLocator::part_at(int v, int t) const {
  if (v < 1 || v > n_) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
  int p = v;
  while (death_[p] <= t) p = death_[jump_[p]] <= t ? jump_[p] : parent_[p];
  return p;
}

std::vector<Rect> build_firstclose_rectangles(const Graph& g, const ContractionSequence& cs, int r) {
  const int n = g.n();
  auto iv = part_intervals(cs);
  std::vector<Rect> out;
  for (int v = 1; v <= n; ++v) out.push_back({v, v, v, v, 1});
  if (n <= 1) return out;
  auto regions = compute_relevant_regions(g, cs, 2 * r + 1);
  TypeArena unused;
  static const std::vector<TypeId> kNone;
  for (const auto& rg : regions) {
    StepContext ctx(unused, rg, [](int, int) -> const std::vector<TypeId>& { return kNone; });
    std::vector<int> near;
    for (int i = 0; i < rg.tg.size(); ++i)
      if (rg.dist_next[i] <= r) near.push_back(rg.tg.parts[i]);
    for (int x : near) {
      auto now = ctx.ball({x}, r, false);
      auto next = ctx.ball({ctx.next_part(x)}, r, true);
      for (int y : near) {
        if (now.count(y)) continue;
        if (!next.count(ctx.next_part(y))) continue;
        out.push_back({iv[x].first, iv[x].second, iv[y].first, iv[y].second, rg.s + 1});
      }
    }
  }
  return out;
}

RangeIndex::RangeIndex(int n, const std::vector<Rect>& rects) : n_(n) {
  tree_.assign(static_cast<std::size_t>(4 * std::max(n, 1)), {});
  for (const auto& r : rects) insert(1, 1, n, r);
  for (auto& bucket : tree_) std::sort(bucket.begin(), bucket.end(), [](const Entry& a, const Entry& b) { return a.y1 < b.y1; });
}

void RangeIndex::insert(int node, int lo, int hi, const Rect& r) {
  if (r.x2 < lo || hi < r.x1) return;
  if (r.x1 <= lo && hi <= r.x2) {
    tree_[node].push_back({r.y1, r.y2, r.t});
    return;
  }
  const int mid = (lo + hi) / 2;
  insert(2 * node, lo, mid, r);
  insert(2 * node + 1, mid + 1, hi, r);
}

int RangeIndex::first_close(int u, int v) const {
  if (u < 1 || u > n_ || v < 1 || v > n_) throw std::out_of_range("vertex pair out of range");
  int node = 1, lo = 1, hi = n_;
  while (true) {
    const auto& bucket = tree_[node];
    auto it = std::upper_bound(bucket.begin(), bucket.end(), v, [](int y, const Entry& e) { return y < e.y1; });
    if (it != bucket.begin() && std::prev(it)->y2 >= v) return std::prev(it)->t;
    if (lo == hi) break;
    const int mid = (lo + hi) / 2;
    if (u <= mid) {
      node = 2 * node;
      hi = mid;
    } else {
      node = 2 * node + 1;
      lo = mid + 1;
    }
  }
  throw std::out_of_range("cell not covered by any rectangle");
}

std::vector<std::vector<int>> first_close_bruteforce(const Graph& g, const ContractionSequence& cs, int r) {
  const int n = g.n();
  std::vector<std::vector<int>> fc(n + 1, std::vector<int>(n + 1, 0));
  for (int t = 1; t <= n; ++t) {
    auto view = PartitionView::at_time(g, cs, t);
    for (int u = 1; u <= n; ++u)
      for (int v = 1; v <= n; ++v)
        if (fc[u][v] == 0 && view.distance(view.owner[u], view.owner[v]) <= r) fc[u][v] = t;
  }
  return fc;
}

}  // namespace tww
