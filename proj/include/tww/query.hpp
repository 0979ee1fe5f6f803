#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tww/close_tree.hpp"
#include "tww/firstclose.hpp"
#include "tww/formula.hpp"

namespace tww {

struct QueryStats {
  std::size_t tree_nodes = 0;
  std::size_t rectangles = 0;
  std::size_t types = 0;
  int region_radius = 0;
};

// Index answering phi(w) for a fixed formula with free variables; immutable after construction,
// so answer() may run concurrently.
class QueryEngine {
 public:
  QueryEngine(const Graph& g, const ContractionSequence& cs, const Formula& phi);

  const std::vector<std::string>& variables() const { return vars_; }
  // Tuple in the order of variables(), original vertex ids.
  bool answer(const std::vector<int>& tuple) const;
  bool answer(const Assignment& w) const;
  const QueryStats& stats() const { return stats_; }

  // Universe index of ltp_s^k for each step of the procedure; exposed for instrumented tests.
  struct Trace {
    std::vector<int> positions;
    int node;
    int type_index;
  };
  bool answer_traced(const std::vector<int>& tuple, std::vector<Trace>* trace) const;
  const CloseForest& forest() const { return *forest_; }
  // Reindexed vertex id used internally.
  int internal_vertex(int v) const { return eta_[v]; }

 private:
  std::vector<std::string> vars_;
  int n_ = 0;
  std::vector<int> eta_;
  std::unique_ptr<PartLocator> locator_;
  RangeIndex proximity_;
  std::unique_ptr<CloseForest> forest_;
  std::vector<char> accept_;  // per root universe index
  QueryStats stats_;
};

}  // namespace tww
