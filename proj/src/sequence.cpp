#include "tww/sequence.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace tww {

char rel_token(Rel r) {
  switch (r) {
    case Rel::Anti: return 'N';
    case Rel::Complete: return 'C';
    case Rel::Impure: return 'I';
  }
  return '?';
}

namespace {

std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

long long to_int(int line, const std::string& tok) {
  long long v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError(line, "expected integer, got '" + tok + "'");
  return v;
}

Rel to_rel(int line, const std::string& tok) {
  if (tok == "C") return Rel::Complete;
  if (tok == "N") return Rel::Anti;
  if (tok == "I") return Rel::Impure;
  throw ParseError(line, "unknown relation token '" + tok + "'");
}

std::string pair_str(int a, int b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

ContractionSequence parse_contraction_sequence(std::string_view text, const Graph& g) {
  ContractionSequence cs;
  cs.n = g.n();
  const int n = g.n();
  auto lines = content_lines(text);
  std::vector<char> alive(static_cast<std::size_t>(std::max(2 * n, 2)), 0);
  for (int v = 1; v <= n; ++v) alive[v] = 1;
  std::size_t li = 0;
  for (int t = 2; t <= n; ++t) {
    if (li >= lines.size())
      throw ParseError(lines.empty() ? 1 : lines.back().first + 1,
                       "expected " + std::to_string(n - 1) + " steps, found " + std::to_string(t - 2));
    auto [ln, s] = lines[li++];
    auto tok = split_tokens(s);
    if (tok.size() != 4) throw ParseError(ln, "expected step header 'A A' B k'");
    long long a = to_int(ln, tok[0]), a2 = to_int(ln, tok[1]), b = to_int(ln, tok[2]),
              k = to_int(ln, tok[3]);
    auto live = [&](long long p) { return p >= 1 && p < 2 * n && alive[p]; };
    if (!live(a)) throw ParseError(ln, "part " + std::to_string(a) + " is not alive at time " + std::to_string(t));
    if (!live(a2)) throw ParseError(ln, "part " + std::to_string(a2) + " is not alive at time " + std::to_string(t));
    if (a == a2) throw ParseError(ln, "step merges a part with itself");
    if (b != n + t - 1)
      throw ParseError(ln, "new part id must be " + std::to_string(n + t - 1) + ", got " + std::to_string(b));
    if (k < 0) throw ParseError(ln, "negative impure list length");
    alive[a] = alive[a2] = 0;
    alive[b] = 1;
    Step st{static_cast<int>(a), static_cast<int>(a2), static_cast<int>(b), {}};
    std::unordered_set<long long> seen;
    for (long long i = 0; i < k; ++i) {
      if (li >= lines.size()) throw ParseError(ln, "impure list truncated");
      auto [el, es] = lines[li++];
      auto et = split_tokens(es);
      if (et.size() != 3) throw ParseError(el, "expected 'C ra ra2'");
      long long c = to_int(el, et[0]);
      if (!live(c) || c == b) throw ParseError(el, "part " + std::to_string(c) + " is not alive at time " + std::to_string(t));
      if (!seen.insert(c).second) throw ParseError(el, "duplicate impure entry " + std::to_string(c));
      st.impure.push_back({static_cast<int>(c), to_rel(el, et[1]), to_rel(el, et[2])});
    }
    cs.steps.push_back(std::move(st));
  }
  if (li != lines.size()) throw ParseError(lines[li].first, "trailing content after the last step");
  return cs;
}

std::string format_contraction_sequence(const ContractionSequence& cs) {
  std::ostringstream out;
  for (const auto& st : cs.steps) {
    out << st.a << ' ' << st.a2 << ' ' << st.b << ' ' << st.impure.size() << '\n';
    for (const auto& e : st.impure) out << e.c << ' ' << rel_token(e.ra) << ' ' << rel_token(e.ra2) << '\n';
  }
  return out.str();
}

int validate(const Graph& g, const ContractionSequence& cs) {
  const int n = g.n();
  if (cs.n != n) throw ValidationError("sequence length " + std::to_string(cs.n) + " does not match graph order " + std::to_string(n));
  if (static_cast<int>(cs.steps.size()) != std::max(n - 1, 0))
    throw ValidationError("expected " + std::to_string(n - 1) + " steps");
  const std::size_t ids = static_cast<std::size_t>(std::max(2 * n, 2));
  std::vector<std::unordered_map<int, long long>> cnt(ids);
  std::vector<long long> sz(ids, 0);
  std::vector<int> deg(ids, 0);
  std::vector<char> alive(ids, 0);
  for (int v = 1; v <= n; ++v) {
    sz[v] = 1;
    alive[v] = 1;
    for (int u : g.neighbors(v)) cnt[v][u] = 1;
  }
  auto rel = [&](int p, int q) {
    auto it = cnt[p].find(q);
    long long c = it == cnt[p].end() ? 0 : it->second;
    if (c == 0) return Rel::Anti;
    if (c == sz[p] * sz[q]) return Rel::Complete;
    return Rel::Impure;
  };
  int width = 0;
  for (int t = 2; t <= n; ++t) {
    const Step& st = cs.at(t);
    const int a = st.a, a2 = st.a2, b = st.b;
    auto live = [&](int p) { return p >= 1 && p < 2 * n && alive[p]; };
    if (!live(a) || !live(a2) || a == a2)
      throw ValidationError("time " + std::to_string(t) + ": merged parts " + pair_str(a, a2) + " are not two live parts");
    if (b != n + t - 1) throw ValidationError("time " + std::to_string(t) + ": unexpected new part id " + std::to_string(b));

    std::unordered_map<int, long long> merged;
    for (auto [c, x] : cnt[a])
      if (c != a2) merged[c] += x;
    for (auto [c, x] : cnt[a2])
      if (c != a) merged[c] += x;
    std::unordered_map<int, std::pair<Rel, Rel>> before;
    for (auto [c, x] : merged) before[c] = {rel(c, a), rel(c, a2)};
    if (rel(a, a2) == Rel::Impure) {
      --deg[a];
      --deg[a2];
    }
    sz[b] = sz[a] + sz[a2];
    for (auto [c, x] : merged) {
      deg[c] -= (before[c].first == Rel::Impure) + (before[c].second == Rel::Impure);
      cnt[c].erase(a);
      cnt[c].erase(a2);
      cnt[c][b] = x;
    }
    cnt[b] = std::move(merged);
    cnt[a].clear();
    cnt[a2].clear();
    alive[a] = alive[a2] = 0;
    alive[b] = 1;

    std::unordered_set<int> impset;
    for (auto [c, x] : cnt[b])
      if (rel(b, c) == Rel::Impure) impset.insert(c);
    std::unordered_set<int> listed;
    for (const auto& e : st.impure) {
      if (!live(e.c) || e.c == b)
        throw ValidationError("time " + std::to_string(t) + ": impure entry " + std::to_string(e.c) + " is not a live part");
      if (!listed.insert(e.c).second)
        throw ValidationError("time " + std::to_string(t) + ": duplicate impure entry " + std::to_string(e.c));
      if (!impset.count(e.c))
        throw ValidationError("time " + std::to_string(t) + ": pair " + pair_str(b, e.c) + " is listed impure but is pure");
      auto [ra, ra2] = before.at(e.c);
      if (ra != e.ra)
        throw ValidationError("time " + std::to_string(t) + ": pair " + pair_str(e.c, a) + " annotated " +
                              rel_token(e.ra) + " but is " + rel_token(ra));
      if (ra2 != e.ra2)
        throw ValidationError("time " + std::to_string(t) + ": pair " + pair_str(e.c, a2) + " annotated " +
                              rel_token(e.ra2) + " but is " + rel_token(ra2));
    }
    for (int c : impset)
      if (!listed.count(c))
        throw ValidationError("time " + std::to_string(t) + ": impure pair " + pair_str(b, c) + " missing from the list");
    for (int c : impset) {
      ++deg[c];
      width = std::max(width, deg[c]);
    }
    deg[b] = static_cast<int>(impset.size());
    width = std::max(width, deg[b]);
  }
  return width;
}

int Trigraph::index_of(int part) const {
  auto it = std::find(parts.begin(), parts.end(), part);
  return it == parts.end() ? -1 : static_cast<int>(it - parts.begin());
}

Trigraph quotient_trigraph(const Graph& g, const std::vector<std::vector<int>>& partition) {
  std::vector<int> owner(static_cast<std::size_t>(g.n()) + 1, -1);
  for (std::size_t i = 0; i < partition.size(); ++i) {
    if (partition[i].empty()) throw std::invalid_argument("empty part");
    for (int v : partition[i]) {
      if (v < 1 || v > g.n()) throw std::invalid_argument("vertex out of range");
      if (owner[v] != -1) throw std::invalid_argument("overlapping parts");
      owner[v] = static_cast<int>(i);
    }
  }
  for (int v = 1; v <= g.n(); ++v)
    if (owner[v] == -1) throw std::invalid_argument("partition does not cover vertex " + std::to_string(v));
  const std::size_t k = partition.size();
  Trigraph tg;
  for (std::size_t i = 0; i < k; ++i) tg.parts.push_back(static_cast<int>(i) + 1);
  tg.rel.assign(k * k, Rel::Anti);
  std::vector<long long> cnt(k * k, 0);
  for (auto [u, v] : g.edges()) {
    int i = owner[u], j = owner[v];
    if (i == j) continue;
    ++cnt[i * k + j];
    ++cnt[j * k + i];
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      long long full = static_cast<long long>(partition[i].size()) * static_cast<long long>(partition[j].size());
      long long c = cnt[i * k + j];
      tg.rel[i * k + j] = c == 0 ? Rel::Anti : (c == full ? Rel::Complete : Rel::Impure);
    }
  return tg;
}

PartForest::PartForest(const ContractionSequence& cs) : n_(cs.n) {
  const std::size_t ids = static_cast<std::size_t>(std::max(2 * n_, 2));
  birth_.assign(ids, 0);
  death_.assign(ids, n_ + 1);
  parent_.assign(ids, 0);
  size_.assign(ids, 0);
  rep_.assign(ids, 0);
  children_.assign(ids, {});
  for (int v = 1; v <= n_; ++v) {
    birth_[v] = 1;
    size_[v] = 1;
    rep_[v] = v;
  }
  for (int t = 2; t <= n_; ++t) {
    const Step& st = cs.at(t);
    birth_[st.b] = t;
    death_[st.a] = death_[st.a2] = t;
    parent_[st.a] = parent_[st.a2] = st.b;
    children_[st.b] = {st.a, st.a2};
    size_[st.b] = size_[st.a] + size_[st.a2];
    rep_[st.b] = rep_[st.a];
  }
}

std::vector<int> PartForest::members(int part) const {
  std::vector<int> out, stack{part};
  while (!stack.empty()) {
    int p = stack.back();
    stack.pop_back();
    if (p <= n_) {
      out.push_back(p);
      continue;
    }
    for (int c : children_[p]) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int PartForest::part_at(int v, int t) const {
  int p = v;
  while (death_[p] <= t) p = parent_[p];
  return p;
}

std::vector<int> PartForest::parts_at(int t) const {
  std::vector<int> out;
  for (int p = 1; p < static_cast<int>(birth_.size()); ++p)
    if (birth_[p] >= 1 && alive(p, t)) out.push_back(p);
  return out;
}

Reindexed reindex_convex(const Graph& g, const ContractionSequence& cs) {
  const int n = g.n();
  PartForest forest(cs);
  std::vector<int> eta(static_cast<std::size_t>(n) + 1, 0);
  int next = 1;
  if (n > 0) {
    std::vector<int> stack{cs.root()};
    while (!stack.empty()) {
      int p = stack.back();
      stack.pop_back();
      if (p <= n) {
        eta[p] = next++;
        continue;
      }
      const auto& ch = forest.children(p);
      stack.push_back(ch[1]);
      stack.push_back(ch[0]);
    }
  }
  auto map_id = [&](int p) { return p <= n ? eta[p] : p; };
  Reindexed out{Graph(n), ContractionSequence{n, {}}, eta};
  for (auto [u, v] : g.edges()) out.graph.add_edge(eta[u], eta[v]);
  for (const auto& st : cs.steps) {
    Step ns{map_id(st.a), map_id(st.a2), st.b, {}};
    for (const auto& e : st.impure) ns.impure.push_back({map_id(e.c), e.ra, e.ra2});
    out.cs.steps.push_back(std::move(ns));
  }
  return out;
}

std::vector<std::pair<int, int>> part_intervals(const ContractionSequence& cs) {
  const int n = cs.n;
  std::vector<std::pair<int, int>> iv(static_cast<std::size_t>(std::max(2 * n, 2)), {0, -1});
  std::vector<int> size(iv.size(), 0);
  for (int v = 1; v <= n; ++v) {
    iv[v] = {v, v};
    size[v] = 1;
  }
  for (int t = 2; t <= n; ++t) {
    const Step& st = cs.at(t);
    iv[st.b] = {std::min(iv[st.a].first, iv[st.a2].first), std::max(iv[st.a].second, iv[st.a2].second)};
    size[st.b] = size[st.a] + size[st.a2];
    if (iv[st.b].second - iv[st.b].first + 1 != size[st.b])
      throw ValidationError("part " + std::to_string(st.b) + " is not an interval");
  }
  return iv;
}

ImpurityState::ImpurityState(const Graph& g, const ContractionSequence& cs) : g_(&g), cs_(&cs) {
  const std::size_t ids = static_cast<std::size_t>(std::max(2 * cs.n, 2));
  imp_.assign(ids, {});
  rep_.assign(ids, 0);
  alive_.assign(ids, 0);
  for (int v = 1; v <= cs.n; ++v) {
    rep_[v] = v;
    alive_[v] = 1;
  }
}

void ImpurityState::advance() {
  if (done()) throw std::logic_error("sequence already finished");
  ++t_;
  const Step& st = cs_->at(t_);
  for (int dead : {st.a, st.a2}) {
    for (int c : imp_[dead]) {
      auto& l = imp_[c];
      l.erase(std::find(l.begin(), l.end(), dead));
    }
    imp_[dead].clear();
    alive_[dead] = 0;
  }
  alive_[st.b] = 1;
  rep_[st.b] = rep_[st.a];
  for (const auto& e : st.impure) {
    imp_[st.b].push_back(e.c);
    imp_[e.c].push_back(st.b);
  }
}

bool ImpurityState::impure(int p, int q) const {
  const auto& l = imp_[p].size() <= imp_[q].size() ? imp_[p] : imp_[q];
  int other = imp_[p].size() <= imp_[q].size() ? q : p;
  return std::find(l.begin(), l.end(), other) != l.end();
}

std::vector<int> ImpurityState::parts() const {
  std::vector<int> out;
  for (int p = 1; p < static_cast<int>(alive_.size()); ++p)
    if (alive_[p]) out.push_back(p);
  return out;
}

Rel ImpurityState::relation(int p, int q) const {
  if (impure(p, q)) return Rel::Impure;
  return g_->has_edge(rep_[p], rep_[q]) ? Rel::Complete : Rel::Anti;
}

std::vector<std::pair<int, int>> ImpurityState::ball(const std::vector<int>& f, int r) const {
  std::vector<std::pair<int, int>> out;
  std::unordered_map<int, int> dist;
  for (int p : f) {
    if (p < 1 || p >= static_cast<int>(alive_.size()) || !alive_[p])
      throw std::out_of_range("unknown part id " + std::to_string(p));
    if (dist.emplace(p, 0).second) out.emplace_back(p, 0);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto [p, d] = out[i];
    if (d >= r) continue;
    for (int q : imp_[p])
      if (dist.emplace(q, d + 1).second) out.emplace_back(q, d + 1);
  }
  return out;
}

int ImpurityState::dist(int p, int q, int limit) const {
  for (auto [x, d] : ball({p}, limit))
    if (x == q) return d;
  return kInf;
}

int ImpurityState::max_degree() const {
  std::size_t m = 0;
  for (std::size_t p = 0; p < imp_.size(); ++p)
    if (alive_[p]) m = std::max(m, imp_[p].size());
  return static_cast<int>(m);
}

Trigraph vicinity(const ImpurityState& st, const std::vector<int>& f, int r) {
  auto b = st.ball(f, r);
  Trigraph tg;
  for (auto [p, d] : b) tg.parts.push_back(p);
  const std::size_t k = tg.parts.size();
  tg.rel.assign(k * k, Rel::Anti);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) tg.set(static_cast<int>(i), static_cast<int>(j), st.relation(tg.parts[i], tg.parts[j]));
  return tg;
}

}  // namespace tww
