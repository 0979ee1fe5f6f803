#include "tww/types.hpp"

#include <algorithm>
#include <stdexcept>

namespace tww {

bool Atom::equal(int i, int j) const {
  if (i == j) return true;
  if (i > j) std::swap(i, j);
  return (eq >> pair_index(i, j)) & 1u;
}

bool Atom::edge(int i, int j) const {
  if (i == j) return false;
  if (i > j) std::swap(i, j);
  return (adj >> pair_index(i, j)) & 1u;
}

Atom Atom::drop_last() const {
  Atom out;
  out.m = static_cast<std::uint8_t>(m - 1);
  const int bits = (m - 1) * (m - 2) / 2;
  const std::uint32_t mask = bits >= 32 ? ~0u : ((1u << bits) - 1u);
  out.eq = eq & mask;
  out.adj = adj & mask;
  return out;
}

Atom Atom::permuted(const std::vector<std::uint8_t>& pi) const {
  Atom out;
  out.m = static_cast<std::uint8_t>(pi.size());
  for (int j = 0; j < out.m; ++j)
    for (int i = 0; i < j; ++i) {
      if (equal(pi[i], pi[j])) out.eq |= 1u << pair_index(i, j);
      if (edge(pi[i], pi[j])) out.adj |= 1u << pair_index(i, j);
    }
  return out;
}

Atom atom_of(const Graph& g, const std::vector<int>& tuple) {
  Atom a;
  a.m = static_cast<std::uint8_t>(tuple.size());
  for (std::size_t j = 0; j < tuple.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      int bit = pair_index(static_cast<int>(i), static_cast<int>(j));
      if (tuple[i] == tuple[j])
        a.eq |= 1u << bit;
      else if (g.has_edge(tuple[i], tuple[j]))
        a.adj |= 1u << bit;
    }
  return a;
}

void check_rank_cap(int k, int arity) {
  if (k < 0 || k > kMaxRank) throw RankCapError("rank " + std::to_string(k) + " exceeds the cap of " + std::to_string(kMaxRank));
  if (arity + k > kMaxPositions)
    throw RankCapError("free variables plus rank (" + std::to_string(arity + k) + ") exceed " + std::to_string(kMaxPositions));
}

std::size_t TypeArena::VecHash::operator()(const std::vector<std::int32_t>& v) const {
  std::size_t h = 1469598103934665603ull;
  for (auto x : v) {
    h ^= static_cast<std::uint32_t>(x);
    h *= 1099511628211ull;
    h ^= h >> 29;
  }
  return h;
}

TypeId TypeArena::intern(TypeNode node) {
  std::vector<std::int32_t> key;
  key.reserve(6 + node.parts.size() + node.members.size());
  key.push_back(node.k);
  key.push_back(node.global);
  key.push_back(node.atom.m);
  key.push_back(static_cast<std::int32_t>(node.atom.eq));
  key.push_back(static_cast<std::int32_t>(node.atom.adj));
  key.push_back(static_cast<std::int32_t>(node.parts.size()));
  key.insert(key.end(), node.parts.begin(), node.parts.end());
  key.insert(key.end(), node.members.begin(), node.members.end());
  auto [it, fresh] = index_.emplace(std::move(key), static_cast<TypeId>(nodes_.size()));
  if (fresh) nodes_.push_back(std::move(node));
  return it->second;
}

TypeId TypeArena::local0(const Atom& a, std::vector<int> parts) {
  return intern(TypeNode{0, false, a, std::move(parts), {}});
}

TypeId TypeArena::local(std::uint8_t k, const Atom& a, std::vector<int> parts, std::vector<TypeId> members) {
  if (k == 0) return local0(a, std::move(parts));
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return intern(TypeNode{k, false, a, std::move(parts), std::move(members)});
}

TypeId TypeArena::global0(const Atom& a) { return intern(TypeNode{0, true, a, {}, {}}); }

TypeId TypeArena::global(std::uint8_t k, const Atom& a, std::vector<TypeId> members) {
  if (k == 0) return global0(a);
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return intern(TypeNode{k, true, a, {}, std::move(members)});
}

TypeId TypeArena::permute(TypeId id, const std::vector<std::uint8_t>& pi) {
  bool identity = true;
  for (std::size_t i = 0; i < pi.size(); ++i) identity = identity && pi[i] == i;
  if (identity) return id;
  std::vector<std::int32_t> key{id};
  key.insert(key.end(), pi.begin(), pi.end());
  if (auto it = permute_memo_.find(key); it != permute_memo_.end()) return it->second;
  const TypeNode& src = node(id);
  TypeNode out;
  out.k = src.k;
  out.global = src.global;
  out.atom = src.atom.permuted(pi);
  if (!src.global)
    for (auto p : pi) out.parts.push_back(src.parts[p]);
  if (src.k > 0) {
    auto ext = pi;
    ext.push_back(static_cast<std::uint8_t>(pi.size()));
    for (TypeId mem : src.members) out.members.push_back(permute(mem, ext));
    std::sort(out.members.begin(), out.members.end());
  }
  TypeId res = intern(std::move(out));
  permute_memo_.emplace(std::move(key), res);
  return res;
}

TypeId TypeArena::to_global(TypeId id) {
  if (node(id).global) return id;
  if (auto it = global_memo_.find(id); it != global_memo_.end()) return it->second;
  const std::uint8_t k = node(id).k;
  const Atom a = node(id).atom;
  std::vector<TypeId> members;
  const std::vector<TypeId> src = node(id).members;
  for (TypeId m : src) members.push_back(to_global(m));
  TypeId res = global(k, a, std::move(members));
  global_memo_.emplace(id, res);
  return res;
}

int TypeArena::universe(std::vector<TypeId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto [it, fresh] = universe_index_.emplace(ids, static_cast<int>(universes_.size()));
  if (fresh) universes_.push_back(std::move(ids));
  return it->second;
}

namespace {

bool eval_rec(const TypeArena& arena, TypeId t, const Formula& f, std::map<std::string, int>& env) {
  using K = Formula::Kind;
  const TypeNode& nd = arena.node(t);
  auto pos = [&](const std::string& v) {
    auto it = env.find(v);
    if (it == env.end()) throw std::invalid_argument("variable '" + v + "' has no position");
    return it->second;
  };
  switch (f.kind) {
    case K::True: return true;
    case K::False: return false;
    case K::Eq: return nd.atom.equal(pos(f.x), pos(f.y));
    case K::Edge: return nd.atom.edge(pos(f.x), pos(f.y));
    case K::Not: return !eval_rec(arena, t, *f.left, env);
    case K::And: return eval_rec(arena, t, *f.left, env) && eval_rec(arena, t, *f.right, env);
    case K::Or: return eval_rec(arena, t, *f.left, env) || eval_rec(arena, t, *f.right, env);
    case K::Exists:
    case K::Forall: {
      if (nd.k == 0) throw std::invalid_argument("formula rank exceeds type rank");
      const bool want = f.kind == K::Exists;
      auto it = env.find(f.x);
      const bool had = it != env.end();
      const int saved = had ? it->second : 0;
      env[f.x] = nd.atom.m;
      bool result = !want;
      for (TypeId mem : nd.members)
        if (eval_rec(arena, mem, *f.left, env) == want) {
          result = want;
          break;
        }
      if (had)
        env[f.x] = saved;
      else
        env.erase(f.x);
      return result;
    }
  }
  return false;
}

}  // namespace

bool eval_on_type(const TypeArena& arena, TypeId t, const Formula& phi) {
  const TypeNode& nd = arena.node(t);
  if (quantifier_rank(phi) > nd.k) throw std::invalid_argument("formula rank exceeds type rank");
  auto vars = free_vars(phi);
  if (static_cast<int>(vars.size()) != nd.atom.m)
    throw std::invalid_argument("formula has " + std::to_string(vars.size()) + " free variables, type has arity " +
                                std::to_string(nd.atom.m));
  std::map<std::string, int> env;
  for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = static_cast<int>(i);
  return eval_rec(arena, t, phi, env);
}

TypeId tp(TypeArena& arena, const Graph& g, const std::vector<int>& tuple, int k) {
  if (k == 0) return arena.global0(atom_of(g, tuple));
  std::vector<TypeId> members;
  auto ext = tuple;
  ext.push_back(0);
  for (int b = 1; b <= g.n(); ++b) {
    ext.back() = b;
    members.push_back(tp(arena, g, ext, k - 1));
  }
  return arena.global(static_cast<std::uint8_t>(k), atom_of(g, tuple), std::move(members));
}

namespace {

PartitionView build_view(const Graph& g, std::vector<int> ids, std::vector<std::vector<int>> members) {
  PartitionView v;
  v.owner.assign(static_cast<std::size_t>(g.n()) + 1, 0);
  // keep ids sorted together with members
  std::vector<std::size_t> order(ids.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return ids[x] < ids[y]; });
  for (auto i : order) {
    v.part_ids.push_back(ids[i]);
    v.members.push_back(members[i]);
  }
  for (std::size_t i = 0; i < v.part_ids.size(); ++i)
    for (int x : v.members[i]) v.owner[x] = v.part_ids[i];
  Trigraph q = quotient_trigraph(g, v.members);
  const int k = q.size();
  v.dist.assign(k, std::vector<int>(k, kInf));
  for (int s = 0; s < k; ++s) {
    std::vector<int> queue{s};
    v.dist[s][s] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      int x = queue[h];
      for (int y = 0; y < k; ++y)
        if (y != x && v.dist[s][y] == kInf && q.at(x, y) == Rel::Impure) {
          v.dist[s][y] = v.dist[s][x] + 1;
          queue.push_back(y);
        }
    }
  }
  return v;
}

}  // namespace

PartitionView PartitionView::at_time(const Graph& g, const ContractionSequence& cs, int t) {
  PartForest forest(cs);
  auto ids = forest.parts_at(t);
  std::vector<std::vector<int>> members;
  for (int p : ids) members.push_back(forest.members(p));
  return build_view(g, std::move(ids), std::move(members));
}

PartitionView PartitionView::from_partition(const Graph& g, const std::vector<std::vector<int>>& parts) {
  std::vector<int> ids;
  for (std::size_t i = 0; i < parts.size(); ++i) ids.push_back(static_cast<int>(i) + 1);
  return build_view(g, std::move(ids), parts);
}

int PartitionView::index(int part) const {
  auto it = std::lower_bound(part_ids.begin(), part_ids.end(), part);
  if (it == part_ids.end() || *it != part) throw std::out_of_range("unknown part " + std::to_string(part));
  return static_cast<int>(it - part_ids.begin());
}

TypeId ltp_ref(TypeArena& arena, const Graph& g, const PartitionView& view, const std::vector<int>& tuple, int k) {
  std::vector<int> parts;
  for (int v : tuple) parts.push_back(view.owner[v]);
  const Atom a = atom_of(g, tuple);
  if (k == 0) return arena.local0(a, parts);
  const int radius = 1 << (k - 1);
  std::vector<TypeId> members;
  auto ext = tuple;
  ext.push_back(0);
  for (std::size_t w = 0; w < view.part_ids.size(); ++w) {
    int d = kInf;
    for (int p : parts) d = std::min(d, view.dist[view.index(p)][w]);
    if (d > radius) continue;
    for (int b : view.members[w]) {
      ext.back() = b;
      members.push_back(ltp_ref(arena, g, view, ext, k - 1));
    }
  }
  return arena.local(static_cast<std::uint8_t>(k), a, std::move(parts), std::move(members));
}

TypeId ltp_time1(TypeArena& arena, const Graph& g, const std::vector<int>& tuple, int k) {
  const Atom a = atom_of(g, tuple);
  if (k == 0) return arena.local0(a, tuple);
  std::vector<TypeId> members;
  auto ext = tuple;
  ext.push_back(0);
  for (int v : tuple) {
    ext.back() = v;
    members.push_back(ltp_time1(arena, g, ext, k - 1));
  }
  return arena.local(static_cast<std::uint8_t>(k), a, tuple, std::move(members));
}

}  // namespace tww
