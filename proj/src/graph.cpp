#include "tww/graph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace tww {

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n) + 1) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
}

bool Graph::add_edge(int u, int v) {
  if (u < 1 || u > n_ || v < 1 || v > n_) throw std::out_of_range("vertex id out of range");
  if (u == v) throw std::invalid_argument("self-loop");
  auto& a = adj_[u];
  auto it = std::lower_bound(a.begin(), a.end(), v);
  if (it != a.end() && *it == v) return false;
  a.insert(it, v);
  auto& b = adj_[v];
  b.insert(std::lower_bound(b.begin(), b.end(), u), u);
  ++m_;
  return true;
}

bool Graph::has_edge(int u, int v) const {
  const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  int w = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::binary_search(a.begin(), a.end(), w);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(m_);
  for (int u = 1; u <= n_; ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::vector<std::pair<int, std::string>> content_lines(std::string_view text) {
  std::vector<std::pair<int, std::string>> out;
  int line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line;
    std::string_view l = text.substr(pos, end - pos);
    std::size_t first = l.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && l[first] != '#') out.emplace_back(line, std::string(l));
    pos = end + 1;
  }
  return out;
}

namespace {

std::vector<long long> read_ints(int line, const std::string& s) {
  std::vector<long long> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    long long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
      throw ParseError(line, "expected integer, got '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(1, "missing header 'n m'");
  auto head = read_ints(lines[0].first, lines[0].second);
  if (head.size() != 2 || head[0] < 0 || head[1] < 0)
    throw ParseError(lines[0].first, "malformed header, expected 'n m'");
  long long n = head[0], m = head[1];
  if (static_cast<long long>(lines.size()) - 1 != m)
    throw ParseError(lines.back().first, "expected " + std::to_string(m) + " edge lines, found " +
                                              std::to_string(lines.size() - 1));
  Graph g(static_cast<int>(n));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto [ln, s] = lines[i];
    auto e = read_ints(ln, s);
    if (e.size() != 2) throw ParseError(ln, "expected 'u v'");
    if (e[0] < 1 || e[0] > n || e[1] < 1 || e[1] > n) throw ParseError(ln, "vertex id out of range");
    if (e[0] == e[1]) throw ParseError(ln, "self-loop");
    g.add_edge(static_cast<int>(e[0]), static_cast<int>(e[1]));
  }
  return g;
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << g.n() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

}  // namespace tww
