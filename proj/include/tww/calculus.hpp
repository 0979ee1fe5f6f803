#pragma once

#include <functional>
#include <map>
#include <unordered_map>
#include <vector>

#include "tww/relevant.hpp"
#include "tww/types.hpp"

namespace tww {

class RegionTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Single-vertex realized universes at time s, by part id and rank.
using UniverseLookup = std::function<const std::vector<TypeId>&(int part, int rank)>;

// Local-type operations for the transition s -> s+1, restricted to one relevant region.
// trim and join act at time s; promote maps time-s types to time-s+1 types.
class StepContext {
 public:
  StepContext(TypeArena& arena, const RelevantRegion& region, UniverseLookup universes);

  int s() const { return region_->s; }
  const RelevantRegion& region() const { return *region_; }
  TypeArena& arena() { return *arena_; }

  TypeId trim(TypeId alpha);
  TypeId join(TypeId alpha, TypeId beta);
  TypeId promote(TypeId alpha);

  bool in_region(int part) const { return idx_.count(part) > 0; }
  // Distance to the new part at time s+1; kInf outside the region.
  int dist_next(int part) const;
  int next_part(int part) const { return part == region_->a || part == region_->a2 ? region_->b : part; }
  Rel relation(int p, int q) const;  // at time s

  // Impurity distances from a set of parts, capped at radius; kInf beyond.
  // next=false: time s, next=true: time s+1. Throws RegionTooSmall if the ball may leave the region.
  std::unordered_map<int, int> ball(const std::vector<int>& sources, int radius, bool next);
  int distance(const std::vector<int>& sources, int target, int radius, bool next);

  // Whether promotion of a type over these parts can change it.
  bool touched(const std::vector<int>& parts, int rank) const;

 private:
  const std::vector<int>& bfs(std::vector<int> sources, int radius, bool next);
  int index_s(int part) const;
  int index_n(int part) const;

  TypeArena* arena_;
  const RelevantRegion* region_;
  UniverseLookup universes_;
  std::unordered_map<int, int> idx_;
  std::vector<std::vector<int>> adj_s_, adj_n_;
  std::vector<char> interior_s_, interior_n_;
  std::unordered_map<TypeId, TypeId> trim_memo_, promote_memo_;
  std::unordered_map<std::uint64_t, TypeId> join_memo_;
  std::map<std::vector<int>, std::vector<int>> bfs_memo_;
};

// Realized single-vertex universes along the sequence, ranks 0..max_rank.
class UniverseScan {
 public:
  UniverseScan(TypeArena& arena, const Graph& g, const ContractionSequence& cs, int max_rank,
               const std::vector<RelevantRegion>& regions);

  int time() const { return t_; }
  int max_rank() const { return max_rank_; }
  const std::vector<TypeId>& single(int part, int rank) const;
  int universe_id(int part, int rank) const { return uni_[part][rank]; }

  // Moves from time t to t+1; the hook runs on the transition context before the update is committed.
  void advance(const std::function<void(StepContext&)>& hook = {});
  // (part, rank) universes recomputed by the last advance.
  std::size_t last_updates() const { return last_updates_; }

 private:
  TypeArena* arena_;
  const ContractionSequence* cs_;
  const std::vector<RelevantRegion>* regions_;
  int max_rank_;
  int t_ = 1;
  std::vector<std::vector<int>> uni_;  // part -> rank -> universe id
  std::size_t last_updates_ = 0;
};

// Region radius that keeps all operations of the single-vertex scan inside the region.
inline int scan_radius(int max_rank) { return 1 << (max_rank + 2); }

// log2 of the abstract bound on |Types^k| for tuples of the given arity in a sequence of width d.
double abstract_type_bound_log2(int k, int arity, int d);

// Realized universe of a part tuple at a time, by brute force over all tuples in it.
std::vector<TypeId> realized_universe_ref(TypeArena& arena, const Graph& g, const PartitionView& view,
                                          const std::vector<int>& parts, int k);

}  // namespace tww
