#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tww {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Simple undirected graph on vertices 1..n with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int n() const { return n_; }
  std::size_t edge_count() const { return m_; }

  // Returns false if the edge was already present.
  bool add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  std::vector<std::pair<int, int>> edges() const;

  bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

 private:
  int n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::vector<int>> adj_;
};

Graph parse_graph(std::string_view text);
std::string format_graph(const Graph& g);

// Splits text into lines, dropping '#' comment lines; keeps 1-based line numbers.
std::vector<std::pair<int, std::string>> content_lines(std::string_view text);

}  // namespace tww
