#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tww/graph.hpp"

namespace tww {

enum class Rel : std::uint8_t { Anti = 0, Complete = 1, Impure = 2 };

char rel_token(Rel r);

struct ImpureEntry {
  int c;
  Rel ra;   // relation of c to the first merged part, before the merge
  Rel ra2;  // relation of c to the second merged part, before the merge
  bool operator==(const ImpureEntry&) const = default;
};

struct Step {
  int a;
  int a2;
  int b;
  std::vector<ImpureEntry> impure;
  bool operator==(const Step&) const = default;
};

// Part ids: 1..n are singletons, n+t-1 is created at time t (2 <= t <= n).
struct ContractionSequence {
  int n = 0;
  std::vector<Step> steps;  // steps[t-2] describes time t

  const Step& at(int t) const { return steps[static_cast<std::size_t>(t - 2)]; }
  int max_id() const { return n == 0 ? 0 : 2 * n - 1; }
  int root() const { return n == 0 ? 0 : 2 * n - 1; }
  bool operator==(const ContractionSequence&) const = default;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ContractionSequence parse_contraction_sequence(std::string_view text, const Graph& g);
std::string format_contraction_sequence(const ContractionSequence& cs);

// Replays the sequence against g and returns its width.
int validate(const Graph& g, const ContractionSequence& cs);

struct Trigraph {
  std::vector<int> parts;
  std::vector<Rel> rel;  // row-major |parts| x |parts|, diagonal unused

  int size() const { return static_cast<int>(parts.size()); }
  Rel at(int i, int j) const { return rel[static_cast<std::size_t>(i) * parts.size() + j]; }
  void set(int i, int j, Rel r) {
    rel[static_cast<std::size_t>(i) * parts.size() + j] = r;
    rel[static_cast<std::size_t>(j) * parts.size() + i] = r;
  }
  int index_of(int part) const;
};

// Parts are given as vertex lists; trigraph part ids are 1..|partition| in input order.
Trigraph quotient_trigraph(const Graph& g, const std::vector<std::vector<int>>& partition);

// Static view of the contraction tree.
class PartForest {
 public:
  explicit PartForest(const ContractionSequence& cs);

  int n() const { return n_; }
  int birth(int part) const { return birth_[part]; }
  // First time at which the part no longer exists; n+1 for the root.
  int death(int part) const { return death_[part]; }
  bool alive(int part, int t) const { return birth_[part] <= t && t < death_[part]; }
  int parent(int part) const { return parent_[part]; }
  const std::vector<int>& children(int part) const { return children_[part]; }
  std::vector<int> members(int part) const;
  int size(int part) const { return size_[part]; }
  int rep(int part) const { return rep_[part]; }
  // Part containing vertex v at time t; walks up the tree.
  int part_at(int v, int t) const;
  std::vector<int> parts_at(int t) const;

 private:
  int n_;
  std::vector<int> birth_, death_, parent_, size_, rep_;
  std::vector<std::vector<int>> children_;
};

struct Reindexed {
  Graph graph;
  ContractionSequence cs;
  std::vector<int> eta;  // eta[old vertex] = new vertex
};

Reindexed reindex_convex(const Graph& g, const ContractionSequence& cs);

// Interval [lo,hi] of each part id; throws if some part is not an interval.
std::vector<std::pair<int, int>> part_intervals(const ContractionSequence& cs);

constexpr int kInf = 1 << 29;

// Incremental impurity graph along the sequence.
class ImpurityState {
 public:
  ImpurityState(const Graph& g, const ContractionSequence& cs);

  int t() const { return t_; }
  bool done() const { return t_ >= cs_->n; }
  void advance();

  const std::vector<int>& imp(int part) const { return imp_[part]; }
  bool impure(int p, int q) const;
  int rep(int part) const { return rep_[part]; }
  bool alive(int part) const { return alive_[part]; }
  std::vector<int> parts() const;
  Rel relation(int p, int q) const;
  // Parts within distance r of the set f, with their distances, in BFS order.
  std::vector<std::pair<int, int>> ball(const std::vector<int>& f, int r) const;
  int dist(int p, int q, int limit = kInf) const;
  int max_degree() const;

 private:
  const Graph* g_;
  const ContractionSequence* cs_;
  int t_ = 1;
  std::vector<std::vector<int>> imp_;
  std::vector<int> rep_;
  std::vector<char> alive_;
};

Trigraph vicinity(const ImpurityState& st, const std::vector<int>& f, int r);

}  // namespace tww
