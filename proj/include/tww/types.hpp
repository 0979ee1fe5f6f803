#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "tww/formula.hpp"
#include "tww/graph.hpp"
#include "tww/sequence.hpp"

namespace tww {

constexpr int kMaxPositions = 8;
constexpr int kMaxRank = 4;

inline int pair_index(int i, int j) { return j * (j - 1) / 2 + i; }  // requires i < j

// Atomic type of a tuple; bit pair_index(i,j) of eq/adj says x_i = x_j / E(x_i,x_j).
// Appending a position only adds higher bits, so dropping the last one is a mask.
struct Atom {
  std::uint8_t m = 0;
  std::uint32_t eq = 0;
  std::uint32_t adj = 0;

  bool equal(int i, int j) const;
  bool edge(int i, int j) const;
  Atom drop_last() const;
  // pi[i] = old position feeding new position i
  Atom permuted(const std::vector<std::uint8_t>& pi) const;
  bool operator==(const Atom&) const = default;
};

Atom atom_of(const Graph& g, const std::vector<int>& tuple);
// Atom of u.v where u and v are in distinct parts; cross edges given by adj(i,j).
template <class F>
Atom atom_concat(const Atom& a, const Atom& b, F&& cross_edge);

using TypeId = std::int32_t;

struct TypeNode {
  std::uint8_t k = 0;
  bool global = false;
  Atom atom;
  std::vector<int> parts;       // empty for global types
  std::vector<TypeId> members;  // sorted, unique; empty iff k == 0
};

class RankCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check_rank_cap(int k, int arity);

// Hash-consing arena: structurally equal types share one id.
class TypeArena {
 public:
  TypeId intern(TypeNode node);
  const TypeNode& node(TypeId id) const { return nodes_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return nodes_.size(); }

  TypeId local0(const Atom& a, std::vector<int> parts);
  TypeId local(std::uint8_t k, const Atom& a, std::vector<int> parts, std::vector<TypeId> members);
  TypeId global0(const Atom& a);
  TypeId global(std::uint8_t k, const Atom& a, std::vector<TypeId> members);

  TypeId permute(TypeId id, const std::vector<std::uint8_t>& pi);
  TypeId to_global(TypeId id);

  // Interned sorted sets of type ids.
  int universe(std::vector<TypeId> ids);
  const std::vector<TypeId>& universe_members(int u) const { return universes_[static_cast<std::size_t>(u)]; }
  std::size_t universe_count() const { return universes_.size(); }

 private:
  struct VecHash {
    std::size_t operator()(const std::vector<std::int32_t>& v) const;
  };
  std::deque<TypeNode> nodes_;  // stable references while interning
  absl::flat_hash_map<std::vector<std::int32_t>, TypeId> index_;
  std::unordered_map<std::vector<std::int32_t>, TypeId, VecHash> permute_memo_;
  std::unordered_map<TypeId, TypeId> global_memo_;
  std::vector<std::vector<TypeId>> universes_;
  absl::flat_hash_map<std::vector<std::int32_t>, int> universe_index_;
};

// Decides phi on a type; free variables of phi take positions in sorted order.
bool eval_on_type(const TypeArena& arena, TypeId t, const Formula& phi);

// Brute-force global type of a vertex tuple.
TypeId tp(TypeArena& arena, const Graph& g, const std::vector<int>& tuple, int k);

// Partition of V(G) with its impurity distances, for the reference local type.
struct PartitionView {
  std::vector<int> owner;     // vertex -> part id
  std::vector<int> part_ids;  // sorted
  std::vector<std::vector<int>> members;  // indexed by position in part_ids
  std::vector<std::vector<int>> dist;

  static PartitionView at_time(const Graph& g, const ContractionSequence& cs, int t);
  static PartitionView from_partition(const Graph& g, const std::vector<std::vector<int>>& parts);
  int index(int part) const;
  int distance(int p, int q) const { return dist[index(p)][index(q)]; }
};

// Reference local type: exhaustive recursion straight from the definition.
TypeId ltp_ref(TypeArena& arena, const Graph& g, const PartitionView& view, const std::vector<int>& tuple, int k);

// Local type at time 1 (singleton parts, no impurity).
TypeId ltp_time1(TypeArena& arena, const Graph& g, const std::vector<int>& tuple, int k);

template <class F>
Atom atom_concat(const Atom& a, const Atom& b, F&& cross_edge) {
  Atom out = a;
  const int m1 = a.m, m2 = b.m;
  out.m = static_cast<std::uint8_t>(m1 + m2);
  for (int j = 0; j < m2; ++j)
    for (int i = 0; i < j; ++i) {
      std::uint32_t bit = 1u << pair_index(i + m1, j + m1);
      if (b.eq & (1u << pair_index(i, j))) out.eq |= bit;
      if (b.adj & (1u << pair_index(i, j))) out.adj |= bit;
    }
  for (int j = 0; j < m2; ++j)
    for (int i = 0; i < m1; ++i)
      if (cross_edge(i, j)) out.adj |= 1u << pair_index(i, j + m1);
  return out;
}

}  // namespace tww
