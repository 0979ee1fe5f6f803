#include "tww/vc_density.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "tww/generate.hpp"
#include "tww/types.hpp"

namespace tww {

BudgetExceeded::BudgetExceeded(std::uint64_t required, std::uint64_t budget)
    : std::runtime_error("work estimate " + std::to_string(required) + " exceeds the budget of " + std::to_string(budget)),
      required_(required) {}

namespace {

std::uint64_t saturating_pow(std::uint64_t base, int e) {
  std::uint64_t out = 1;
  for (int i = 0; i < e; ++i) out = out > UINT64_MAX / std::max<std::uint64_t>(base, 1) ? UINT64_MAX : out * base;
  return out;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  return b != 0 && a > UINT64_MAX / b ? UINT64_MAX : a * b;
}

// Calls f on every tuple of the given length over items, in lexicographic order.
template <class F>
void for_each_tuple(const std::vector<int>& items, int len, F&& f) {
  std::vector<int> t(len);
  if (items.empty() && len > 0) return;
  std::vector<std::size_t> pos(len, 0);
  while (true) {
    for (int i = 0; i < len; ++i) t[i] = items[pos[i]];
    f(t);
    int i = len;
    while (i > 0 && pos[i - 1] + 1 == items.size()) pos[--i] = 0;
    if (i == 0) return;
    ++pos[i - 1];
  }
}

}  // namespace

BipartiteSequence make_bipartite(const Graph& g, const ContractionSequence& cs, const std::vector<int>& a) {
  const int n = g.n();
  std::vector<char> in_a(n + 1, 0);
  for (int v : a) {
    if (v < 1 || v > n) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
    in_a[v] = 1;
  }
  const int a_count = static_cast<int>(std::count(in_a.begin() + 1, in_a.end(), 1));
  if (a_count == 0 || a_count == n) return {cs, in_a};
  // per original part: its A-side and complement-side part ids in the new sequence (0 = empty)
  std::vector<int> side_a(2 * n, 0), side_b(2 * n, 0);
  for (int v = 1; v <= n; ++v) (in_a[v] ? side_a : side_b)[v] = v;
  std::vector<std::pair<int, int>> merges;
  int next = n + 1;
  auto join = [&](int x, int y) {
    if (!x || !y) return x ? x : y;
    merges.emplace_back(x, y);
    return next++;
  };
  for (int t = 2; t <= n; ++t) {
    const Step& st = cs.at(t);
    side_a[st.b] = join(side_a[st.a], side_a[st.a2]);
    side_b[st.b] = join(side_b[st.a], side_b[st.a2]);
  }
  join(side_a[cs.root()], side_b[cs.root()]);
  return {build_sequence(g, merges), in_a};
}

bool parts_respect(const ContractionSequence& cs, const std::vector<char>& in_a) {
  PartForest forest(cs);
  for (int p = 1; p <= cs.max_id(); ++p) {
    if (forest.birth(p) >= cs.n) continue;
    auto mem = forest.members(p);
    const bool first = in_a[mem[0]];
    for (int v : mem)
      if (static_cast<bool>(in_a[v]) != first) return false;
  }
  return true;
}

DistanceColoring distance_coloring(const Graph& g, const BipartiteSequence& bs, int r) {
  const int n = g.n();
  DistanceColoring out;
  out.r = r;
  out.color.assign(n + 1, -1);
  PartForest forest(bs.cs);
  ImpurityState st(g, bs.cs);
  auto inside_a = [&](int part) { return static_cast<bool>(bs.in_a[forest.rep(part)]); };
  while (!st.done()) {
    st.advance();
    const Step& step = bs.cs.at(st.t());
    if (!inside_a(step.a) || !inside_a(step.a2)) continue;
    for (auto [q, d] : st.ball({step.b}, r)) {
      if (inside_a(q)) continue;
      bool fresh = false;
      for (int v : forest.members(q))
        if (out.color[v] < 0) {
          out.color[v] = out.palette;
          fresh = true;
        }
      if (fresh) ++out.palette;
    }
  }
  bool leftover = false;
  for (int v = 1; v <= n; ++v)
    if (!bs.in_a[v] && out.color[v] < 0) {
      out.color[v] = out.palette;
      leftover = true;
    }
  if (leftover) ++out.palette;
  return out;
}

int meeting_time(const ContractionSequence& cs, const std::vector<int>& x) {
  if (x.empty()) throw std::invalid_argument("meeting time of an empty set");
  PartForest forest(cs);
  const int root = cs.root();
  std::set<int> chain;
  for (int p = x[0]; p != root; p = forest.parent(p)) chain.insert(p);
  chain.insert(root);
  int t = 1;
  for (int v : x) {
    if (v < 1 || v > cs.n) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
    int p = v;
    while (!chain.count(p)) p = forest.parent(p);
    t = std::max(t, forest.birth(p));
  }
  return t;
}

std::vector<std::string> parameter_vars(const Formula& phi, const std::vector<std::string>& yvars) {
  auto vars = free_vars(phi);
  if (!yvars.empty()) {
    for (auto& y : yvars)
      if (std::find(vars.begin(), vars.end(), y) == vars.end())
        throw std::invalid_argument("parameter " + y + " is not a free variable of the formula");
    auto out = yvars;
    std::sort(out.begin(), out.end());
    return out;
  }
  std::vector<std::string> out;
  for (auto& v : vars)
    if (!v.empty() && v[0] == 'y') out.push_back(v);
  return out;
}

StoneSpace stone_space(const Graph& g, const std::vector<int>& a, const Formula& phi,
                       const std::vector<std::string>& yvars, std::uint64_t budget) {
  if (a.empty()) throw std::invalid_argument("A must be nonempty");
  StoneSpace out;
  out.a = a;
  std::sort(out.a.begin(), out.a.end());
  out.a.erase(std::unique(out.a.begin(), out.a.end()), out.a.end());
  for (int v : out.a)
    if (v < 1 || v > g.n()) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
  out.yvars = parameter_vars(phi, yvars);
  for (auto& v : free_vars(phi))
    if (std::find(out.yvars.begin(), out.yvars.end(), v) == out.yvars.end()) out.xvars.push_back(v);
  const int nx = static_cast<int>(out.xvars.size()), ny = static_cast<int>(out.yvars.size());
  std::uint64_t work = saturating_mul(saturating_pow(out.a.size(), nx), saturating_pow(g.n(), ny));
  if (work > budget) throw BudgetExceeded(work, budget);
  std::vector<int> all(g.n());
  for (int v = 1; v <= g.n(); ++v) all[v - 1] = v;
  std::map<std::vector<std::vector<int>>, std::vector<int>> seen;
  for_each_tuple(all, ny, [&](const std::vector<int>& b) {
    std::vector<std::vector<int>> trace;
    Assignment asg;
    for (int i = 0; i < ny; ++i) asg[out.yvars[i]] = b[i];
    for_each_tuple(out.a, nx, [&](const std::vector<int>& x) {
      for (int i = 0; i < nx; ++i) asg[out.xvars[i]] = x[i];
      if (naive_eval(g, phi, asg)) trace.push_back(x);
    });
    seen.emplace(std::move(trace), b);
  });
  for (auto& [trace, w] : seen) out.traces.emplace_back(trace, w);
  return out;
}

int count_type_classes(const Graph& g, const BipartiteSequence& bs, const DistanceColoring& col,
                       const std::vector<int>& colors, int x_arity, int t, int k, std::uint64_t budget) {
  std::vector<int> a;
  for (int v = 1; v <= g.n(); ++v)
    if (bs.in_a[v]) a.push_back(v);
  std::vector<std::vector<int>> classes(colors.size());
  for (std::size_t i = 0; i < colors.size(); ++i) {
    for (int v = 1; v <= g.n(); ++v)
      if (col.color[v] == colors[i]) classes[i].push_back(v);
    if (classes[i].empty()) throw std::invalid_argument("color " + std::to_string(colors[i]) + " is unused");
    if (t < meeting_time(bs.cs, classes[i]))
      throw std::invalid_argument("time " + std::to_string(t) + " precedes the meeting time of color " +
                                  std::to_string(colors[i]));
  }
  check_rank_cap(k, x_arity + static_cast<int>(colors.size()));
  std::uint64_t tuples = 1;
  for (auto& c : classes) tuples = saturating_mul(tuples, c.size());
  std::uint64_t work = saturating_mul(saturating_mul(tuples, saturating_pow(a.size(), x_arity)), saturating_pow(g.n(), k));
  if (work > budget) throw BudgetExceeded(work, budget);

  TypeArena arena;
  auto view = PartitionView::at_time(g, bs.cs, t);
  std::set<std::vector<TypeId>> keys;
  std::vector<int> b(colors.size());
  std::vector<std::size_t> pos(colors.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < colors.size(); ++i) b[i] = classes[i][pos[i]];
    std::vector<TypeId> key;
    for_each_tuple(a, x_arity, [&](const std::vector<int>& x) {
      auto tup = x;
      tup.insert(tup.end(), b.begin(), b.end());
      key.push_back(ltp_ref(arena, g, view, tup, k));
    });
    keys.insert(std::move(key));
    std::size_t i = colors.size();
    while (i > 0 && pos[i - 1] + 1 == classes[i - 1].size()) pos[--i] = 0;
    if (i == 0) break;
    ++pos[i - 1];
  }
  return static_cast<int>(keys.size());
}

int max_type_classes(const Graph& g, const BipartiteSequence& bs, const DistanceColoring& col, int x_arity, int k) {
  int best = 0;
  for (int c = 0; c < col.palette; ++c) {
    std::vector<int> cls;
    for (int v = 1; v <= g.n(); ++v)
      if (col.color[v] == c) cls.push_back(v);
    best = std::max(best, count_type_classes(g, bs, col, {c}, x_arity, meeting_time(bs.cs, cls), k));
  }
  return best;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("a slope needs at least two points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0) throw std::invalid_argument("a slope needs two distinct sizes");
  return sxy / sxx;
}

std::vector<int> odd_vertices(int n) {
  std::vector<int> out;
  for (int v = 1; v <= n; v += 2) out.push_back(v);
  return out;
}

VcReport vc_density_report(const std::string& family, const std::vector<int>& sizes, const Formula& phi,
                           const std::vector<std::string>& yvars, std::uint64_t seed) {
  VcReport rep;
  rep.y_arity = static_cast<int>(parameter_vars(phi, yvars).size());
  std::vector<double> xs, ys;
  for (int s : sizes) {
    if (s < 1) throw std::invalid_argument("sizes must be positive");
    auto inst = make_family(family, 2 * s, seed);
    auto a = odd_vertices(inst.graph.n());
    auto space = stone_space(inst.graph, a, phi, yvars);
    rep.rows.push_back({static_cast<int>(a.size()), inst.graph.n(), space.size()});
    xs.push_back(static_cast<double>(a.size()));
    ys.push_back(static_cast<double>(space.size()));
  }
  if (rep.rows.size() >= 2) rep.exponent = loglog_slope(xs, ys);
  rep.flagged = rep.exponent > rep.y_arity + 0.3;
  return rep;
}

}  // namespace tww
