#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "tww/graph.hpp"
#include "tww/sequence.hpp"
#include "tww/types.hpp"

namespace tww {

// Sub-tuple of a tuple not yet close: the positions it occupies and its node one step earlier.
struct Component {
  std::vector<int> positions;
  int node;
};

// Tuples born at a node: those whose parts one step earlier were `pre`, split into
// components whose types (indices into the component nodes' universes) are `types`.
struct BirthEntry {
  std::vector<int> pre;
  std::vector<Component> comps;
  std::vector<int> types;
  int result;  // index into the born node's universe
};

struct CloseNode {
  int arity = 0;
  int time = 0;
  std::vector<int> parts;
  std::vector<TypeId> universe;  // sorted
  int parent = -1;
  std::vector<int> to_parent;  // universe index -> parent universe index
  std::vector<int> children;
  std::vector<BirthEntry> births;
  int depth = 0;
  int jump = -1;
  std::vector<int> to_jump;

  bool leaf() const { return time == 1; }
};

// Trees of r-close part tuples for arities 1..max_arity, r = 2^k, with local types of rank k.
// Immutable after construction.
class CloseForest {
 public:
  CloseForest(const Graph& g, const ContractionSequence& cs, int k, int max_arity);

  int k() const { return k_; }
  int r() const { return 1 << k_; }
  int max_arity() const { return max_arity_; }
  int radius() const { return radius_; }
  const TypeArena& arena() const { return *arena_; }
  TypeArena& arena() { return *arena_; }

  const CloseNode& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t size(int arity) const { return count_[arity]; }
  int root(int arity) const { return roots_[arity]; }
  // Node for a part tuple at a time, or -1.
  int find(const std::vector<int>& parts, int time) const;
  int leaf(int arity, int v) const;

  // Composition of edge functions from `from` up to its ancestor `to`, applied to a universe index.
  int warp(int from, int to, int type_index) const;
  // Universe index at the born node for the given preimage and component type indices, or -1.
  int birth(int node, const std::vector<int>& pre, const std::vector<int>& types) const;

 private:
  void build(const Graph& g, const ContractionSequence& cs);
  void build_jumps();
  int add_node(int arity, int time, std::vector<int> parts, std::vector<TypeId> universe);

  int k_, max_arity_, radius_ = 0;
  std::unique_ptr<TypeArena> arena_;
  std::vector<CloseNode> nodes_;
  std::vector<std::size_t> count_;
  std::vector<int> roots_;
  absl::flat_hash_map<std::vector<int>, int> index_;        // [time, parts...] -> node
  absl::flat_hash_map<std::vector<int>, int> birth_index_;  // [node, pre..., types...] -> result
};

}  // namespace tww
