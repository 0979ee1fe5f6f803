#include "tww/relevant.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

namespace tww {

namespace {

// Ball around the new part right after a contraction (first scan).
struct Affected {
  std::vector<int> parts;  // excludes b
  std::vector<int> dist;
  std::vector<char> impure;  // |parts| x |parts| at time t
  bool merged_impure = false;
};

// Pending pure pairs whose relation is not known yet (second scan).
class PendingLists {
 public:
  struct Slot {
    int region, i, j;
    int next;
  };

  explicit PendingLists(std::size_t ids) : partners_(ids) {}

  void add(int x, int y, int region, int i, int j) {
    int id = get_or_create(x, y);
    int e = static_cast<int>(slots_.size());
    slots_.push_back({region, i, j, -1});
    auto& l = lists_[id];
    if (l.tail < 0)
      l.head = e;
    else
      slots_[l.tail].next = e;
    l.tail = e;
  }

  // Detaches the list of pair {x,y}; returns -1 if none.
  int take(int x, int y) {
    auto it = index_.find(key(x, y));
    if (it == index_.end()) return -1;
    int id = it->second;
    index_.erase(it);
    drop_partner(x, y);
    drop_partner(y, x);
    return id;
  }

  template <class F>
  void drain(int id, F&& f) {
    if (id < 0) return;
    for (int e = lists_[id].head; e >= 0; e = slots_[e].next) f(slots_[e]);
    free_.push_back(id);
  }

  void attach(int id, int x, int y) {
    if (id < 0) return;
    auto it = index_.find(key(x, y));
    if (it == index_.end()) {
      index_[key(x, y)] = id;
      partners_[x].push_back(y);
      partners_[y].push_back(x);
      return;
    }
    auto& dst = lists_[it->second];
    auto& src = lists_[id];
    if (src.head >= 0) {
      if (dst.tail < 0)
        dst.head = src.head;
      else
        slots_[dst.tail].next = src.head;
      dst.tail = src.tail;
    }
    free_.push_back(id);
  }

  std::vector<int> partners(int x) const { return partners_[x]; }
  bool empty() const { return index_.empty(); }

 private:
  struct List {
    int head = -1, tail = -1;
  };

  static std::uint64_t key(int x, int y) {
    if (x > y) std::swap(x, y);
    return (static_cast<std::uint64_t>(x) << 32) | static_cast<std::uint32_t>(y);
  }

  int get_or_create(int x, int y) {
    auto it = index_.find(key(x, y));
    if (it != index_.end()) return it->second;
    int id;
    if (!free_.empty()) {
      id = free_.back();
      free_.pop_back();
      lists_[id] = List{};
    } else {
      id = static_cast<int>(lists_.size());
      lists_.push_back({});
    }
    index_[key(x, y)] = id;
    partners_[x].push_back(y);
    partners_[y].push_back(x);
    return id;
  }

  void drop_partner(int x, int y) {
    auto& l = partners_[x];
    auto it = std::find(l.begin(), l.end(), y);
    if (it != l.end()) {
      *it = l.back();
      l.pop_back();
    }
  }

  std::vector<Slot> slots_;
  std::vector<List> lists_;
  std::vector<int> free_;
  std::unordered_map<std::uint64_t, int> index_;
  std::vector<std::vector<int>> partners_;
};

}  // namespace

std::vector<RelevantRegion> compute_relevant_regions(const Graph& g, const ContractionSequence& cs, int p) {
  const int n = cs.n;
  std::vector<RelevantRegion> regions;
  if (n <= 1) return regions;

  // First scan: affected balls around each new part.
  std::vector<Affected> affected(static_cast<std::size_t>(n + 1));
  {
    ImpurityState st(g, cs);
    for (int t = 2; t <= n; ++t) {
      const Step& step = cs.at(t);
      Affected& af = affected[t];
      af.merged_impure = st.impure(step.a, step.a2);
      st.advance();
      for (auto [q, d] : st.ball({step.b}, p)) {
        if (q == step.b) continue;
        af.parts.push_back(q);
        af.dist.push_back(d);
      }
      const std::size_t k = af.parts.size();
      af.impure.assign(k * k, 0);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
          af.impure[i * k + j] = af.impure[j * k + i] = st.impure(af.parts[i], af.parts[j]);
    }
  }

  // Second scan: resolve pure relations through pending pair lists.
  regions.resize(static_cast<std::size_t>(n - 1));
  PendingLists pending(static_cast<std::size_t>(2 * n));
  std::vector<int> rep(static_cast<std::size_t>(2 * n), 0);
  for (int v = 1; v <= n; ++v) rep[v] = v;

  for (int t = 2; t <= n; ++t) {
    const Step& step = cs.at(t);
    const int a = step.a, a2 = step.a2, b = step.b;
    const Affected& af = affected[t];
    rep[b] = rep[a];

    auto resolve = [&](int id, Rel r) {
      pending.drain(id, [&](const PendingLists::Slot& sl) { regions[sl.region].tg.set(sl.i, sl.j, r); });
    };
    const Rel merged_rel =
        af.merged_impure ? Rel::Impure : (g.has_edge(rep[a], rep[a2]) ? Rel::Complete : Rel::Anti);
    resolve(pending.take(a, a2), merged_rel);
    for (const auto& e : step.impure) {
      resolve(pending.take(a, e.c), e.ra);
      resolve(pending.take(a2, e.c), e.ra2);
    }
    for (int x : {a, a2})
      for (int d : pending.partners(x)) pending.attach(pending.take(x, d), b, d);

    RelevantRegion& rg = regions[t - 2];
    rg.s = t - 1;
    rg.a = a;
    rg.a2 = a2;
    rg.b = b;
    rg.radius = p;
    rg.tg.parts = {a, a2};
    rg.tg.parts.insert(rg.tg.parts.end(), af.parts.begin(), af.parts.end());
    rg.dist_next = {0, 0};
    rg.dist_next.insert(rg.dist_next.end(), af.dist.begin(), af.dist.end());
    const std::size_t k = af.parts.size();
    rg.tg.rel.assign((k + 2) * (k + 2), Rel::Anti);
    rg.tg.set(0, 1, merged_rel);
    std::unordered_map<int, const ImpureEntry*> imp_of_b;
    for (const auto& e : step.impure) imp_of_b[e.c] = &e;
    const int region = t - 2;
    for (std::size_t i = 0; i < k; ++i) {
      const int ci = static_cast<int>(i) + 2;
      auto it = imp_of_b.find(af.parts[i]);
      if (it != imp_of_b.end()) {
        rg.tg.set(0, ci, it->second->ra);
        rg.tg.set(1, ci, it->second->ra2);
      } else {
        pending.add(b, af.parts[i], region, 0, ci);
        pending.add(b, af.parts[i], region, 1, ci);
      }
      for (std::size_t j = i + 1; j < k; ++j) {
        const int cj = static_cast<int>(j) + 2;
        if (af.impure[i * k + j])
          rg.tg.set(ci, cj, Rel::Impure);
        else
          pending.add(af.parts[i], af.parts[j], region, ci, cj);
      }
    }
  }
  if (!pending.empty()) throw std::logic_error("unresolved pair relations after the last contraction");
  return regions;
}

RelevantRegion relevant_region_naive(const Graph& g, const ContractionSequence& cs, int s, int p) {
  PartForest forest(cs);
  const Step& step = cs.at(s + 1);
  auto quotient_at = [&](int t) {
    auto parts = forest.parts_at(t);
    std::vector<std::vector<int>> members;
    for (int q : parts) members.push_back(forest.members(q));
    auto tg = quotient_trigraph(g, members);
    tg.parts = parts;
    return tg;
  };
  Trigraph next = quotient_at(s + 1);
  Trigraph cur = quotient_at(s);
  std::vector<int> dist(next.parts.size(), kInf);
  std::vector<int> order;
  int src = next.index_of(step.b);
  dist[src] = 0;
  order.push_back(src);
  for (std::size_t i = 0; i < order.size(); ++i) {
    int x = order[i];
    if (dist[x] >= p) continue;
    for (int y = 0; y < next.size(); ++y)
      if (y != x && dist[y] == kInf && next.at(x, y) == Rel::Impure) {
        dist[y] = dist[x] + 1;
        order.push_back(y);
      }
  }
  RelevantRegion rg;
  rg.s = s;
  rg.a = step.a;
  rg.a2 = step.a2;
  rg.b = step.b;
  rg.radius = p;
  rg.tg.parts = {step.a, step.a2};
  rg.dist_next = {0, 0};
  for (int x : order)
    if (x != src) {
      rg.tg.parts.push_back(next.parts[x]);
      rg.dist_next.push_back(dist[x]);
    }
  const std::size_t k = rg.tg.parts.size();
  rg.tg.rel.assign(k * k, Rel::Anti);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      rg.tg.set(static_cast<int>(i), static_cast<int>(j),
                cur.at(cur.index_of(rg.tg.parts[i]), cur.index_of(rg.tg.parts[j])));
  return rg;
}

}  // namespace tww
