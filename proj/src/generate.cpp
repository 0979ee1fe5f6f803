#include "tww/generate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace tww {

namespace {

// Edge counts between live parts, shared by the sequence builders.
class PartCounts {
 public:
  explicit PartCounts(const Graph& g) : n_(g.n()) {
    const std::size_t ids = static_cast<std::size_t>(std::max(2 * n_, 2));
    cnt_.assign(ids, {});
    sz_.assign(ids, 0);
    for (int v = 1; v <= n_; ++v) {
      sz_[v] = 1;
      for (int u : g.neighbors(v)) cnt_[v][u] = 1;
    }
  }

  long long count(int p, int q) const {
    auto it = cnt_[p].find(q);
    return it == cnt_[p].end() ? 0 : it->second;
  }
  Rel rel(int p, int q) const {
    long long c = count(p, q);
    if (c == 0) return Rel::Anti;
    return c == sz_[p] * sz_[q] ? Rel::Complete : Rel::Impure;
  }
  const std::unordered_map<int, long long>& counts(int p) const { return cnt_[p]; }
  long long size(int p) const { return sz_[p]; }

  Step merge(int a, int a2, int b) {
    std::unordered_map<int, long long> merged;
    for (auto [c, x] : cnt_[a])
      if (c != a2) merged[c] += x;
    for (auto [c, x] : cnt_[a2])
      if (c != a) merged[c] += x;
    Step st{a, a2, b, {}};
    sz_[b] = sz_[a] + sz_[a2];
    std::vector<int> keys;
    for (auto [c, x] : merged) keys.push_back(c);
    std::sort(keys.begin(), keys.end());
    for (int c : keys) {
      long long x = merged[c];
      if (x > 0 && x < sz_[b] * sz_[c]) st.impure.push_back({c, rel(c, a), rel(c, a2)});
    }
    for (int c : keys) {
      cnt_[c].erase(a);
      cnt_[c].erase(a2);
      cnt_[c][b] = merged[c];
    }
    cnt_[b] = std::move(merged);
    cnt_[a].clear();
    cnt_[a2].clear();
    return st;
  }

 private:
  int n_;
  std::vector<std::unordered_map<int, long long>> cnt_;
  std::vector<long long> sz_;
};

}  // namespace

ContractionSequence build_sequence(const Graph& g, const std::vector<std::pair<int, int>>& merges) {
  const int n = g.n();
  if (static_cast<int>(merges.size()) != std::max(n - 1, 0))
    throw std::invalid_argument("a sequence needs exactly n-1 merges");
  PartCounts pc(g);
  ContractionSequence cs{n, {}};
  std::vector<char> alive(static_cast<std::size_t>(std::max(2 * n, 2)), 0);
  for (int v = 1; v <= n; ++v) alive[v] = 1;
  for (std::size_t i = 0; i < merges.size(); ++i) {
    auto [a, a2] = merges[i];
    const int b = n + static_cast<int>(i) + 1;
    if (a == a2 || a < 1 || a2 < 1 || a >= b || a2 >= b || !alive[a] || !alive[a2])
      throw std::invalid_argument("merge " + std::to_string(i) + " does not take two live parts");
    alive[a] = alive[a2] = 0;
    alive[b] = 1;
    cs.steps.push_back(pc.merge(a, a2, b));
  }
  return cs;
}

ContractionSequence greedy_contraction_sequence(const Graph& g) {
  const int n = g.n();
  PartCounts pc(g);
  std::vector<int> live;
  for (int v = 1; v <= n; ++v) live.push_back(v);
  std::vector<int> deg(static_cast<std::size_t>(std::max(2 * n, 2)), 0);
  std::vector<int> degcount(static_cast<std::size_t>(2 * n + 2), 0);
  degcount[0] = n;
  ContractionSequence cs{n, {}};
  for (int t = 2; t <= n; ++t) {
    int best_a = -1, best_a2 = -1, best = kInf;
    int top = 0;
    for (int d = static_cast<int>(degcount.size()) - 1; d >= 0; --d)
      if (degcount[d] > 0) {
        top = d;
        break;
      }
    for (std::size_t i = 0; i < live.size(); ++i)
      for (std::size_t j = i + 1; j < live.size(); ++j) {
        const int a = live[i], a2 = live[j];
        std::unordered_map<int, long long> merged;
        for (auto [c, x] : pc.counts(a))
          if (c != a2) merged[c] += x;
        for (auto [c, x] : pc.counts(a2))
          if (c != a) merged[c] += x;
        const long long sb = pc.size(a) + pc.size(a2);
        int result = 0, degb = 0;
        std::map<int, int> removed;
        ++removed[deg[a]];
        ++removed[deg[a2]];
        for (auto [c, x] : merged) {
          bool ib = x > 0 && x < sb * pc.size(c);
          degb += ib;
          int nd = deg[c] - (pc.rel(c, a) == Rel::Impure) - (pc.rel(c, a2) == Rel::Impure) + ib;
          result = std::max(result, nd);
          ++removed[deg[c]];
        }
        result = std::max(result, degb);
        for (int d = top; d >= 0 && d > result; --d) {
          auto it = removed.find(d);
          int left = degcount[d] - (it == removed.end() ? 0 : it->second);
          if (left > 0) {
            result = d;
            break;
          }
        }
        if (result < best) {
          best = result;
          best_a = a;
          best_a2 = a2;
        }
      }
    const int b = n + t - 1;
    std::vector<int> touched;
    for (auto [c, x] : pc.counts(best_a))
      if (c != best_a2) touched.push_back(c);
    for (auto [c, x] : pc.counts(best_a2))
      if (c != best_a) touched.push_back(c);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    std::vector<int> before;
    for (int c : touched) before.push_back(deg[c] - (pc.rel(c, best_a) == Rel::Impure) - (pc.rel(c, best_a2) == Rel::Impure));
    Step st = pc.merge(best_a, best_a2, b);
    --degcount[deg[best_a]];
    --degcount[deg[best_a2]];
    for (std::size_t i = 0; i < touched.size(); ++i) {
      const int c = touched[i];
      --degcount[deg[c]];
      deg[c] = before[i] + (pc.rel(c, b) == Rel::Impure);
      ++degcount[deg[c]];
    }
    deg[b] = static_cast<int>(st.impure.size());
    ++degcount[deg[b]];
    live.erase(std::find(live.begin(), live.end(), best_a));
    live.erase(std::find(live.begin(), live.end(), best_a2));
    live.push_back(b);
    std::sort(live.begin(), live.end());
    cs.steps.push_back(std::move(st));
  }
  return cs;
}

namespace {

std::vector<std::pair<int, int>> prefix_merges(int n) {
  std::vector<std::pair<int, int>> merges;
  int cur = 1;
  for (int t = 2; t <= n; ++t) {
    merges.emplace_back(cur, t);
    cur = n + t - 1;
  }
  return merges;
}

}  // namespace

Instance path_instance(int n) {
  Graph g(n);
  for (int v = 1; v < n; ++v) g.add_edge(v, v + 1);
  auto cs = build_sequence(g, prefix_merges(n));
  return {std::move(g), std::move(cs)};
}

Instance grid_instance(int rows, int cols) {
  const int n = rows * cols;
  Graph g(n);
  auto id = [&](int i, int j) { return i * cols + j + 1; };
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      if (j + 1 < cols) g.add_edge(id(i, j), id(i, j + 1));
      if (i + 1 < rows) g.add_edge(id(i, j), id(i + 1, j));
    }
  std::vector<std::pair<int, int>> merges;
  std::vector<int> row_part(rows);
  for (int i = 0; i < rows; ++i) row_part[i] = id(i, 0);
  int next = n + 1;
  for (int j = 1; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      merges.emplace_back(row_part[i], id(i, j));
      row_part[i] = next++;
    }
  int cur = row_part[0];
  for (int i = 1; i < rows; ++i) {
    merges.emplace_back(cur, row_part[i]);
    cur = next++;
  }
  auto cs = build_sequence(g, merges);
  return {std::move(g), std::move(cs)};
}

Instance random_instance(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  auto cs = greedy_contraction_sequence(g);
  return {std::move(g), std::move(cs)};
}

Instance edgeless_instance(int n) {
  Graph g(n);
  auto cs = build_sequence(g, prefix_merges(n));
  return {std::move(g), std::move(cs)};
}

Instance complete_instance(int n) {
  Graph g(n);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) g.add_edge(u, v);
  auto cs = build_sequence(g, prefix_merges(n));
  return {std::move(g), std::move(cs)};
}

Instance make_family(const std::string& family, int n, std::uint64_t seed, double p) {
  if (n < 1) throw std::invalid_argument("family size must be positive");
  if (family == "path") return path_instance(n);
  if (family == "grid") {
    int rows = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n))));
    int cols = std::max(1, n / rows);
    return grid_instance(rows, cols);
  }
  if (family == "random") return random_instance(n, p, seed);
  if (family == "edgeless") return edgeless_instance(n);
  if (family == "complete") return complete_instance(n);
  throw std::invalid_argument("unknown family '" + family + "'");
}

}  // namespace tww
