#include "tww/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tww {

StepContext::StepContext(TypeArena& arena, const RelevantRegion& region, UniverseLookup universes)
    : arena_(&arena), region_(&region), universes_(std::move(universes)) {
  const int k = region.tg.size();
  for (int i = 0; i < k; ++i) idx_[region.tg.parts[i]] = i;
  adj_s_.assign(k, {});
  adj_n_.assign(k, {});
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (region.tg.at(i, j) == Rel::Impure) {
        adj_s_[i].push_back(j);
        adj_s_[j].push_back(i);
        if (i >= 2) {
          adj_n_[i].push_back(j);
          adj_n_[j].push_back(i);
        }
      }
  for (int c = 2; c < k; ++c) {
    Rel ra = region.tg.at(0, c), ra2 = region.tg.at(1, c);
    if (ra == Rel::Impure || ra2 == Rel::Impure || ra != ra2) {
      adj_n_[0].push_back(c);
      adj_n_[c].push_back(0);
    }
  }
  interior_s_.assign(k, 0);
  interior_n_.assign(k, 0);
  const int p = region.radius;
  for (int i = 0; i < k; ++i) {
    bool in = i < 2 ? p >= 1 : region.dist_next[i] < p;
    interior_s_[i] = in;
    interior_n_[i] = i == 1 ? 0 : in;
  }
}

int StepContext::index_s(int part) const {
  auto it = idx_.find(part);
  if (it == idx_.end())
    throw RegionTooSmall("part " + std::to_string(part) + " lies outside the region at time " + std::to_string(s()));
  return it->second;
}

int StepContext::index_n(int part) const {
  if (part == region_->b) return 0;
  if (part == region_->a || part == region_->a2) throw std::logic_error("merged part used after the contraction");
  return index_s(part);
}

int StepContext::dist_next(int part) const {
  if (part == region_->b) return 0;
  auto it = idx_.find(part);
  return it == idx_.end() ? kInf : region_->dist_next[it->second];
}

Rel StepContext::relation(int p, int q) const { return region_->tg.at(index_s(p), index_s(q)); }

bool StepContext::touched(const std::vector<int>& parts, int rank) const {
  const int lim = 1 << rank;
  for (int p : parts)
    if (p == region_->a || p == region_->a2 || dist_next(p) <= lim) return true;
  return false;
}

const std::vector<int>& StepContext::bfs(std::vector<int> sources, int radius, bool next) {
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  std::vector<int> key{next ? 1 : 0, radius};
  key.insert(key.end(), sources.begin(), sources.end());
  if (auto it = bfs_memo_.find(key); it != bfs_memo_.end()) return it->second;
  const auto& adj = next ? adj_n_ : adj_s_;
  const auto& interior = next ? interior_n_ : interior_s_;
  std::vector<int> dist(adj.size(), kInf), queue;
  for (int x : sources) {
    dist[x] = 0;
    queue.push_back(x);
  }
  for (std::size_t h = 0; h < queue.size(); ++h) {
    int x = queue[h];
    if (dist[x] >= radius) continue;
    if (!interior[x])
      throw RegionTooSmall("ball of radius " + std::to_string(radius) + " leaves the region at time " +
                           std::to_string(s() + (next ? 1 : 0)));
    for (int y : adj[x])
      if (dist[y] == kInf) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
  }
  return bfs_memo_.emplace(std::move(key), std::move(dist)).first->second;
}

std::unordered_map<int, int> StepContext::ball(const std::vector<int>& sources, int radius, bool next) {
  std::vector<int> src;
  for (int p : sources) src.push_back(next ? index_n(p) : index_s(p));
  const auto& dist = bfs(src, radius, next);
  std::unordered_map<int, int> out;
  for (std::size_t i = 0; i < dist.size(); ++i)
    if (dist[i] != kInf) out[next && i == 0 ? region_->b : region_->tg.parts[i]] = dist[i];
  return out;
}

int StepContext::distance(const std::vector<int>& sources, int target, int radius, bool next) {
  std::vector<int> src;
  for (int p : sources) src.push_back(next ? index_n(p) : index_s(p));
  const auto& dist = bfs(src, radius, next);
  if (next && target == region_->b) return dist[0];
  auto it = idx_.find(target);
  if (it == idx_.end()) return kInf;
  if (next && it->second == 1) throw std::logic_error("merged part used after the contraction");
  return dist[it->second];
}

TypeId StepContext::trim(TypeId alpha) {
  if (auto it = trim_memo_.find(alpha); it != trim_memo_.end()) return it->second;
  const TypeNode& nd = arena_->node(alpha);
  if (nd.k == 0) throw std::logic_error("trim of a rank-0 type");
  TypeId res;
  if (nd.k == 1) {
    res = arena_->local0(nd.atom, nd.parts);
  } else {
    const int lim = 1 << (nd.k - 2);
    std::vector<TypeId> members;
    for (TypeId beta : nd.members) {
      int w = arena_->node(beta).parts.back();
      if (distance(nd.parts, w, lim, false) <= lim) members.push_back(trim(beta));
    }
    res = arena_->local(static_cast<std::uint8_t>(nd.k - 1), nd.atom, nd.parts, std::move(members));
  }
  trim_memo_.emplace(alpha, res);
  return res;
}

TypeId StepContext::join(TypeId alpha, TypeId beta) {
  const std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(alpha)) << 32) |
                            static_cast<std::uint32_t>(beta);
  if (auto it = join_memo_.find(key); it != join_memo_.end()) return it->second;
  const TypeNode& na = arena_->node(alpha);
  const TypeNode& nb = arena_->node(beta);
  if (na.k != nb.k) throw std::logic_error("join of types with different ranks");
  const int m1 = na.atom.m, m2 = nb.atom.m;
  check_rank_cap(na.k, m1 + m2);
  Atom atom = atom_concat(na.atom, nb.atom, [&](int i, int j) {
    Rel r = relation(na.parts[i], nb.parts[j]);
    if (r == Rel::Impure || na.parts[i] == nb.parts[j]) throw std::logic_error("join of tuples that are too close");
    return r == Rel::Complete;
  });
  std::vector<int> parts = na.parts;
  parts.insert(parts.end(), nb.parts.begin(), nb.parts.end());
  TypeId res;
  if (na.k == 0) {
    res = arena_->local0(atom, std::move(parts));
  } else {
    std::vector<TypeId> members;
    const TypeId tb = trim(beta), ta = trim(alpha);
    std::vector<std::uint8_t> pi;
    for (int i = 0; i < m1; ++i) pi.push_back(static_cast<std::uint8_t>(i));
    for (int i = 0; i < m2; ++i) pi.push_back(static_cast<std::uint8_t>(m1 + 1 + i));
    pi.push_back(static_cast<std::uint8_t>(m1));
    for (TypeId gamma : na.members) members.push_back(arena_->permute(join(gamma, tb), pi));
    for (TypeId gamma : nb.members) members.push_back(join(ta, gamma));
    res = arena_->local(na.k, atom, std::move(parts), std::move(members));
  }
  join_memo_.emplace(key, res);
  return res;
}

TypeId StepContext::promote(TypeId alpha) {
  if (auto it = promote_memo_.find(alpha); it != promote_memo_.end()) return it->second;
  const TypeNode& nd = arena_->node(alpha);
  TypeId res;
  if (!touched(nd.parts, nd.k)) {
    res = alpha;
  } else {
    std::vector<int> next;
    for (int p : nd.parts) next.push_back(next_part(p));
    if (nd.k == 0) {
      res = arena_->local0(nd.atom, std::move(next));
    } else {
      const int lim = 1 << (nd.k - 1);
      std::vector<TypeId> members;
      for (TypeId beta : nd.members) members.push_back(promote(beta));
      auto near_next = ball(next, lim, true);
      std::vector<int> candidates;
      for (auto [q, d] : near_next) {
        if (q == region_->b) {
          candidates.push_back(region_->a);
          candidates.push_back(region_->a2);
        } else {
          candidates.push_back(q);
        }
      }
      std::sort(candidates.begin(), candidates.end());
      const TypeId ta = trim(alpha);
      for (int v : candidates) {
        if (distance(nd.parts, v, lim, false) <= lim) continue;
        for (TypeId gamma : universes_(v, nd.k - 1)) members.push_back(promote(join(ta, gamma)));
      }
      res = arena_->local(nd.k, nd.atom, std::move(next), std::move(members));
    }
  }
  promote_memo_.emplace(alpha, res);
  return res;
}

UniverseScan::UniverseScan(TypeArena& arena, const Graph& g, const ContractionSequence& cs, int max_rank,
                           const std::vector<RelevantRegion>& regions)
    : arena_(&arena), cs_(&cs), regions_(&regions), max_rank_(max_rank) {
  check_rank_cap(max_rank, 1);
  if (cs.n > 1 && static_cast<int>(regions.size()) != cs.n - 1)
    throw std::invalid_argument("one relevant region per contraction is required");
  uni_.assign(static_cast<std::size_t>(std::max(2 * cs.n, 2)), std::vector<int>(max_rank + 1, -1));
  for (int v = 1; v <= cs.n; ++v)
    for (int j = 0; j <= max_rank; ++j) uni_[v][j] = arena.universe({ltp_time1(arena, g, {v}, j)});
}

const std::vector<TypeId>& UniverseScan::single(int part, int rank) const {
  int u = uni_[part][rank];
  if (u < 0) throw std::logic_error("part " + std::to_string(part) + " is not alive at time " + std::to_string(t_));
  return arena_->universe_members(u);
}

void UniverseScan::advance(const std::function<void(StepContext&)>& hook) {
  if (t_ >= cs_->n) throw std::logic_error("scan already finished");
  const RelevantRegion& rg = (*regions_)[static_cast<std::size_t>(t_ - 1)];
  StepContext ctx(*arena_, rg, [this](int part, int rank) -> const std::vector<TypeId>& { return single(part, rank); });
  if (hook) hook(ctx);
  std::vector<std::tuple<int, int, int>> updates;
  for (int j = 0; j <= max_rank_; ++j) {
    std::vector<TypeId> out;
    for (int src : {rg.a, rg.a2})
      for (TypeId alpha : single(src, j)) out.push_back(ctx.promote(alpha));
    updates.emplace_back(rg.b, j, arena_->universe(std::move(out)));
  }
  for (int i = 2; i < rg.tg.size(); ++i) {
    const int c = rg.tg.parts[i];
    for (int j = 0; j <= max_rank_; ++j) {
      if (rg.dist_next[i] > (1 << j)) continue;
      std::vector<TypeId> out;
      for (TypeId alpha : single(c, j)) out.push_back(ctx.promote(alpha));
      updates.emplace_back(c, j, arena_->universe(std::move(out)));
    }
  }
  for (auto [part, j, u] : updates) uni_[part][j] = u;
  for (int j = 0; j <= max_rank_; ++j) uni_[rg.a][j] = uni_[rg.a2][j] = -1;
  last_updates_ = updates.size();
  ++t_;
}

double abstract_type_bound_log2(int k, int arity, int d) {
  if (k == 0) {
    // sum over set partitions with c blocks of 2^(c choose 2)
    std::vector<std::vector<double>> st(arity + 1, std::vector<double>(arity + 1, 0.0));
    st[0][0] = 1;
    for (int m = 1; m <= arity; ++m)
      for (int c = 1; c <= m; ++c) st[m][c] = st[m - 1][c - 1] + c * st[m - 1][c];
    double total = 0;
    for (int c = 0; c <= arity; ++c) total += st[arity][c] * std::pow(2.0, c * (c - 1) / 2.0);
    return std::log2(std::max(total, 1.0));
  }
  const int radius = 1 << (k - 1);
  double ball = 0, pw = 1;
  for (int i = 0; i <= radius; ++i) {
    ball += pw;
    pw *= std::max(d, 0);
  }
  double inner = abstract_type_bound_log2(k - 1, arity + 1, d);
  if (inner > 1000) return std::numeric_limits<double>::infinity();
  return arity * ball * std::pow(2.0, inner);
}

std::vector<TypeId> realized_universe_ref(TypeArena& arena, const Graph& g, const PartitionView& view,
                                          const std::vector<int>& parts, int k) {
  std::vector<TypeId> out;
  std::vector<const std::vector<int>*> mem;
  for (int p : parts) mem.push_back(&view.members[view.index(p)]);
  std::vector<std::size_t> pos(parts.size(), 0);
  std::vector<int> tuple(parts.size());
  while (true) {
    for (std::size_t i = 0; i < parts.size(); ++i) tuple[i] = (*mem[i])[pos[i]];
    out.push_back(ltp_ref(arena, g, view, tuple, k));
    std::size_t i = parts.size();
    while (i > 0 && pos[i - 1] + 1 == mem[i - 1]->size()) pos[--i] = 0;
    if (i == 0) break;
    ++pos[i - 1];
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace tww
