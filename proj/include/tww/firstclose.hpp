#pragma once

#include <vector>

#include "tww/graph.hpp"
#include "tww/sequence.hpp"

namespace tww {

// Part containing a vertex at a given time in O(log n), via skew-binary jump pointers.
class PartLocator {
 public:
  explicit PartLocator(const ContractionSequence& cs);
  int part_at(int v, int t) const;
  int n() const { return n_; }

 private:
  int n_;
  std::vector<int> parent_, death_, jump_;
};

struct Rect {
  int x1, x2, y1, y2;
  int t;
};

// Rectangles [x1,x2]x[y1,y2] tagged with firstClose_r; they partition [n]x[n].
// Requires a convex sequence (every part an interval).
std::vector<Rect> build_firstclose_rectangles(const Graph& g, const ContractionSequence& cs, int r);

// Point location among disjoint rectangles: a segment tree over x whose nodes
// keep the rectangles spanning them sorted by y. O(log^2 n) per query.
class RangeIndex {
 public:
  RangeIndex() = default;
  RangeIndex(int n, const std::vector<Rect>& rects);
  // Tag of the rectangle covering (u,v); throws std::out_of_range for bad input or an uncovered cell.
  int first_close(int u, int v) const;
  int n() const { return n_; }

 private:
  struct Entry {
    int y1, y2, t;
  };
  void insert(int node, int lo, int hi, const Rect& r);
  int n_ = 0;
  std::vector<std::vector<Entry>> tree_;
};

// firstClose_r for all pairs from quotient distances at every time; index [u][v], 1-based.
std::vector<std::vector<int>> first_close_bruteforce(const Graph& g, const ContractionSequence& cs, int r);

}  // namespace tww
