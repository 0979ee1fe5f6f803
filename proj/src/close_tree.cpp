#include "tww/close_tree.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "tww/calculus.hpp"
#include "tww/relevant.hpp"

namespace tww {

namespace {

// Connected components of positions 0..m-1 under `close`, ordered by smallest position.
template <class F>
std::vector<std::vector<int>> components(int m, F&& close) {
  std::vector<int> comp(m, -1);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < m; ++i) {
    if (comp[i] >= 0) continue;
    comp[i] = static_cast<int>(out.size());
    std::vector<int> group{i};
    for (std::size_t h = 0; h < group.size(); ++h)
      for (int j = 0; j < m; ++j)
        if (comp[j] < 0 && close(group[h], j)) {
          comp[j] = comp[i];
          group.push_back(j);
        }
    std::sort(group.begin(), group.end());
    out.push_back(std::move(group));
  }
  return out;
}

int index_in(const std::vector<TypeId>& universe, TypeId t) {
  auto it = std::lower_bound(universe.begin(), universe.end(), t);
  if (it == universe.end() || *it != t) throw std::logic_error("type missing from node universe");
  return static_cast<int>(it - universe.begin());
}

}  // namespace

CloseForest::CloseForest(const Graph& g, const ContractionSequence& cs, int k, int max_arity)
    : k_(k), max_arity_(max_arity), arena_(std::make_unique<TypeArena>()) {
  if (max_arity < 1) throw std::invalid_argument("close trees need arity at least 1");
  if (g.n() < 1) throw std::invalid_argument("close trees need a nonempty graph");
  check_rank_cap(k, max_arity);
  count_.assign(static_cast<std::size_t>(max_arity + 1), 0);
  roots_.assign(static_cast<std::size_t>(max_arity + 1), -1);
  build(g, cs);
  build_jumps();
}

int CloseForest::add_node(int arity, int time, std::vector<int> parts, std::vector<TypeId> universe) {
  std::vector<int> key{time};
  key.insert(key.end(), parts.begin(), parts.end());
  const int id = static_cast<int>(nodes_.size());
  if (!index_.emplace(std::move(key), id).second) throw std::logic_error("close-tree node created twice");
  CloseNode nd;
  nd.arity = arity;
  nd.time = time;
  nd.parts = std::move(parts);
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  nd.universe = std::move(universe);
  nodes_.push_back(std::move(nd));
  ++count_[arity];
  return id;
}

int CloseForest::find(const std::vector<int>& parts, int time) const {
  std::vector<int> key{time};
  key.insert(key.end(), parts.begin(), parts.end());
  auto it = index_.find(key);
  return it == index_.end() ? -1 : it->second;
}

int CloseForest::leaf(int arity, int v) const { return find(std::vector<int>(arity, v), 1); }

void CloseForest::build(const Graph& g, const ContractionSequence& cs) {
  const int n = g.n();
  const int r = 1 << k_;
  const int m = max_arity_;
  const int scan_rank = std::max(k_ - 1, 0);
  radius_ = std::max(scan_radius(scan_rank), r * (m + 2));

  // node holding the current universe of every close tuple, per arity
  std::vector<absl::flat_hash_map<std::vector<int>, int>> current(m + 1);
  for (int j = 1; j <= m; ++j)
    for (int v = 1; v <= n; ++v) {
      std::vector<int> parts(j, v);
      int id = add_node(j, 1, parts, {ltp_time1(*arena_, g, parts, k_)});
      current[j].emplace(std::move(parts), id);
    }

  auto link = [&](int child, int parent, const std::vector<TypeId>& images) {
    auto& c = nodes_[child];
    c.parent = parent;
    c.to_parent.clear();
    for (TypeId t : images) c.to_parent.push_back(index_in(nodes_[parent].universe, t));
    nodes_[parent].children.push_back(child);
  };

  auto regions = n > 1 ? compute_relevant_regions(g, cs, radius_) : std::vector<RelevantRegion>{};
  UniverseScan scan(*arena_, g, cs, scan_rank, regions);
  while (scan.time() < n) {
    scan.advance([&](StepContext& ctx) {
      const RelevantRegion& rg = ctx.region();
      const int s = rg.s;
      auto close_now = [&](int p, int q) { return p == q || ctx.distance({p}, q, r, false) <= r; };
      auto close_next = [&](int p, int q) { return p == q || ctx.distance({p}, q, r, true) <= r; };
      std::vector<std::pair<int, std::vector<int>>> retired;  // (arity, tuple) holding a merged part
      std::vector<std::pair<int, std::pair<std::vector<int>, int>>> updates;

      for (int j = 1; j <= m; ++j) {
        auto near = ctx.ball({rg.b}, r * j, true);
        std::vector<int> cand;
        for (auto [p, d] : near) cand.push_back(p);
        std::sort(cand.begin(), cand.end());

        std::vector<std::vector<int>> fresh;  // close j-tuples at s+1 within r of the new part
        std::vector<int> cur(j);
        std::vector<std::size_t> pos(j, 0);
        while (true) {
          for (int i = 0; i < j; ++i) cur[i] = cand[pos[i]];
          bool touches = false;
          for (int p : cur) touches = touches || near.at(p) <= r;
          if (touches && components(j, [&](int x, int y) { return close_next(cur[x], cur[y]); }).size() == 1)
            fresh.push_back(cur);
          int i = j;
          while (i > 0 && pos[i - 1] + 1 == cand.size()) pos[--i] = 0;
          if (i == 0) break;
          ++pos[i - 1];
        }

        for (const auto& up : fresh) {
          std::vector<TypeId> universe;
          std::vector<std::pair<int, std::vector<TypeId>>> kids;
          std::vector<std::pair<BirthEntry, TypeId>> born;
          std::vector<int> at_b;
          for (int i = 0; i < j; ++i)
            if (up[i] == rg.b) at_b.push_back(i);
          for (int mask = 0; mask < (1 << at_b.size()); ++mask) {
            std::vector<int> pre = up;
            for (std::size_t i = 0; i < at_b.size(); ++i) pre[at_b[i]] = (mask >> i) & 1 ? rg.a2 : rg.a;
            auto comps = components(j, [&](int x, int y) { return close_now(pre[x], pre[y]); });
            if (comps.size() == 1) {
              auto it = current[j].find(pre);
              if (it == current[j].end()) throw std::logic_error("close tuple without a node");
              int child = it->second;
              if (nodes_[child].time < s) {
                int id = add_node(j, s, pre, nodes_[child].universe);
                link(child, id, nodes_[id].universe);
                child = id;
                it->second = id;
              }
              std::vector<TypeId> images;
              for (TypeId t : nodes_[child].universe) images.push_back(ctx.promote(t));
              universe.insert(universe.end(), images.begin(), images.end());
              kids.emplace_back(child, std::move(images));
              if (std::find(pre.begin(), pre.end(), rg.a) != pre.end() ||
                  std::find(pre.begin(), pre.end(), rg.a2) != pre.end())
                retired.emplace_back(j, pre);
              continue;
            }
            BirthEntry proto;
            proto.pre = pre;
            std::vector<std::uint8_t> pi(j);
            int concat = 0;
            for (auto& c : comps) {
              std::vector<int> sub;
              for (int x : c) {
                sub.push_back(pre[x]);
                pi[x] = static_cast<std::uint8_t>(concat++);
              }
              int id = find(sub, s);
              if (id < 0) throw std::logic_error("component of a new close tuple has no node");
              proto.comps.push_back({c, id});
            }
            bool identity = true;
            for (int i = 0; i < j; ++i) identity = identity && pi[i] == i;
            std::vector<int> choice(comps.size(), 0);
            while (true) {
              TypeId t = nodes_[proto.comps[0].node].universe[choice[0]];
              for (std::size_t c = 1; c < comps.size(); ++c)
                t = ctx.join(t, nodes_[proto.comps[c].node].universe[choice[c]]);
              if (!identity) t = arena_->permute(t, pi);
              t = ctx.promote(t);
              universe.push_back(t);
              BirthEntry e = proto;
              e.types = choice;
              born.emplace_back(std::move(e), t);
              std::size_t c = comps.size();
              while (c > 0 && choice[c - 1] + 1 == static_cast<int>(nodes_[proto.comps[c - 1].node].universe.size()))
                choice[--c] = 0;
              if (c == 0) break;
              ++choice[c - 1];
            }
          }
          const int id = add_node(j, s + 1, up, std::move(universe));
          for (auto& [child, images] : kids) link(child, id, images);
          for (auto& [e, t] : born) {
            e.result = index_in(nodes_[id].universe, t);
            std::vector<int> key{id};
            key.insert(key.end(), e.pre.begin(), e.pre.end());
            key.insert(key.end(), e.types.begin(), e.types.end());
            birth_index_.emplace(std::move(key), e.result);
            nodes_[id].births.push_back(std::move(e));
          }
          updates.push_back({j, {up, id}});
        }
      }
      for (auto& [j, pre] : retired) current[j].erase(pre);
      for (auto& [j, entry] : updates) current[j][entry.first] = entry.second;
    });
  }
  for (int j = 1; j <= m; ++j) {
    roots_[j] = find(std::vector<int>(j, cs.root()), n);
    if (roots_[j] < 0) throw std::logic_error("close tree has no root");
  }
}

void CloseForest::build_jumps() {
  // parents are created after their children
  for (int x = static_cast<int>(nodes_.size()) - 1; x >= 0; --x) {
    auto& nd = nodes_[x];
    if (nd.parent < 0) {
      nd.depth = 0;
      nd.jump = x;
      nd.to_jump.resize(nd.universe.size());
      std::iota(nd.to_jump.begin(), nd.to_jump.end(), 0);
      continue;
    }
    const auto& p = nodes_[nd.parent];
    const auto& j1 = nodes_[p.jump];
    const auto& j2 = nodes_[j1.jump];
    nd.depth = p.depth + 1;
    if (p.depth - j1.depth == j1.depth - j2.depth) {
      nd.jump = j1.jump;
      nd.to_jump.clear();
      for (int t : nd.to_parent) nd.to_jump.push_back(j1.to_jump[p.to_jump[t]]);
    } else {
      nd.jump = nd.parent;
      nd.to_jump = nd.to_parent;
    }
  }
}

int CloseForest::warp(int from, int to, int type_index) const {
  int x = from;
  const int target_depth = node(to).depth;
  while (x != to) {
    const auto& nd = node(x);
    if (nd.depth <= target_depth) throw std::invalid_argument("warp target is not an ancestor");
    if (node(nd.jump).depth >= target_depth) {
      type_index = nd.to_jump[type_index];
      x = nd.jump;
    } else {
      type_index = nd.to_parent[type_index];
      x = nd.parent;
    }
  }
  return type_index;
}

int CloseForest::birth(int node_id, const std::vector<int>& pre, const std::vector<int>& types) const {
  std::vector<int> key{node_id};
  key.insert(key.end(), pre.begin(), pre.end());
  key.insert(key.end(), types.begin(), types.end());
  auto it = birth_index_.find(key);
  return it == birth_index_.end() ? -1 : it->second;
}

}  // namespace tww
