#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tww/close_tree.hpp"
#include "tww/formula.hpp"

namespace tww {

using Tuple = std::vector<int>;

// Cyclic cursor over a fixed finite sequence: next() returns false once per cycle
// at the end of the sequence and then starts over.
class Enumerator {
 public:
  virtual ~Enumerator() = default;
  virtual bool next(Tuple& out) = 0;
};
using EnumeratorPtr = std::unique_ptr<Enumerator>;

// Source of member enumerators for a family union; returns nullptr once per cycle.
class EnumeratorFamily {
 public:
  virtual ~EnumeratorFamily() = default;
  virtual EnumeratorPtr next_member() = 0;
};

struct StepCounter {
  std::uint64_t steps = 0;
};

EnumeratorPtr enum_list(std::vector<Tuple> items, StepCounter* counter = nullptr);
// Concatenated pairs; both sides nonempty.
EnumeratorPtr enum_product(EnumeratorPtr a, EnumeratorPtr b, StepCounter* counter = nullptr);
// Sets must be pairwise disjoint.
EnumeratorPtr enum_disjoint_union(std::vector<EnumeratorPtr> parts, StepCounter* counter = nullptr);
// Members must be nonempty and pairwise disjoint; an empty member raises std::logic_error.
EnumeratorPtr enum_family_union(std::unique_ptr<EnumeratorFamily> family, StepCounter* counter = nullptr);

// Enumeration of phi(G) over the close trees.
class EnumerationIndex {
 public:
  EnumerationIndex(const Graph& g, const ContractionSequence& cs, const Formula& phi);

  const std::vector<std::string>& variables() const { return vars_; }
  // Tuples in variables() order with original vertex ids.
  EnumeratorPtr enumerator(StepCounter* counter = nullptr) const;
  // Tuples with ltp_s^k = the index-th type at the node (internal vertex ids).
  EnumeratorPtr s_enumerator(int node, const std::vector<int>& type_indices, StepCounter* counter = nullptr) const;
  // Tuples registering at the node with the given type (internal vertex ids).
  EnumeratorPtr r_enumerator(int node, int type_index, StepCounter* counter = nullptr) const;
  // Tuples born through one entry: a product over its components, placed by position.
  EnumeratorPtr birth_enumerator(const BirthEntry& entry, StepCounter* counter = nullptr) const;
  const CloseForest& forest() const { return *forest_; }
  int original_vertex(int internal) const { return eta_inv_[internal]; }
  std::size_t accepted_types() const;

 private:
  std::vector<std::string> vars_;
  std::vector<int> eta_inv_;
  std::unique_ptr<CloseForest> forest_;
  std::vector<int> accept_;  // accepted root universe indices
};

// All tuples of phi(G) in enumeration order, one full cycle.
std::vector<Tuple> enumerate_all(const Graph& g, const ContractionSequence& cs, const Formula& phi);

}  // namespace tww
