#include "tww/enumerate.hpp"

#include <algorithm>
#include <stdexcept>

namespace tww {

namespace {

void tick(StepCounter* c) {
  if (c) ++c->steps;
}

class ListEnumerator : public Enumerator {
 public:
  ListEnumerator(std::vector<Tuple> items, StepCounter* c) : items_(std::move(items)), c_(c) {}
  bool next(Tuple& out) override {
    tick(c_);
    if (i_ == items_.size()) {
      i_ = 0;
      return false;
    }
    out = items_[i_++];
    return true;
  }

 private:
  std::vector<Tuple> items_;
  std::size_t i_ = 0;
  StepCounter* c_;
};

class ProductEnumerator : public Enumerator {
 public:
  ProductEnumerator(EnumeratorPtr a, EnumeratorPtr b, StepCounter* c) : a_(std::move(a)), b_(std::move(b)), c_(c) {}
  bool next(Tuple& out) override {
    tick(c_);
    while (true) {
      if (!have_left_) {
        if (!a_->next(left_)) return false;
        have_left_ = true;
      }
      if (b_->next(right_)) {
        out = left_;
        out.insert(out.end(), right_.begin(), right_.end());
        return true;
      }
      have_left_ = false;
    }
  }

 private:
  EnumeratorPtr a_, b_;
  Tuple left_, right_;
  bool have_left_ = false;
  StepCounter* c_;
};

class UnionEnumerator : public Enumerator {
 public:
  UnionEnumerator(std::vector<EnumeratorPtr> parts, StepCounter* c) : parts_(std::move(parts)), c_(c) {}
  bool next(Tuple& out) override {
    tick(c_);
    while (i_ < parts_.size()) {
      if (parts_[i_]->next(out)) return true;
      ++i_;
    }
    i_ = 0;
    return false;
  }

 private:
  std::vector<EnumeratorPtr> parts_;
  std::size_t i_ = 0;
  StepCounter* c_;
};

class FamilyUnionEnumerator : public Enumerator {
 public:
  FamilyUnionEnumerator(std::unique_ptr<EnumeratorFamily> f, StepCounter* c) : family_(std::move(f)), c_(c) {}
  bool next(Tuple& out) override {
    tick(c_);
    while (true) {
      if (!member_) {
        member_ = family_->next_member();
        if (!member_) return false;
        if (!member_->next(out)) throw std::logic_error("family union met an empty member");
        return true;
      }
      if (member_->next(out)) return true;
      member_.reset();
    }
  }

 private:
  std::unique_ptr<EnumeratorFamily> family_;
  EnumeratorPtr member_;
  StepCounter* c_;
};

// Reorders the coordinates of every tuple: out[pos[i]] = in[i].
class PlacedEnumerator : public Enumerator {
 public:
  PlacedEnumerator(EnumeratorPtr e, std::vector<int> pos) : e_(std::move(e)), pos_(std::move(pos)) {}
  bool next(Tuple& out) override {
    if (!e_->next(buf_)) return false;
    out.assign(pos_.size(), 0);
    for (std::size_t i = 0; i < pos_.size(); ++i) out[pos_[i]] = buf_[i];
    return true;
  }

 private:
  EnumeratorPtr e_;
  std::vector<int> pos_;
  Tuple buf_;
};

}  // namespace

EnumeratorPtr enum_list(std::vector<Tuple> items, StepCounter* counter) {
  return std::make_unique<ListEnumerator>(std::move(items), counter);
}
EnumeratorPtr enum_product(EnumeratorPtr a, EnumeratorPtr b, StepCounter* counter) {
  return std::make_unique<ProductEnumerator>(std::move(a), std::move(b), counter);
}
EnumeratorPtr enum_disjoint_union(std::vector<EnumeratorPtr> parts, StepCounter* counter) {
  return std::make_unique<UnionEnumerator>(std::move(parts), counter);
}
EnumeratorPtr enum_family_union(std::unique_ptr<EnumeratorFamily> family, StepCounter* counter) {
  return std::make_unique<FamilyUnionEnumerator>(std::move(family), counter);
}

namespace {

// Depth-first walk over the descendants of a node, yielding one member per registration set
// whose types map into the wanted set. Subtrees whose pulled-back set is empty are skipped;
// every universe type is realized, so no visited subtree is empty.
class DescendantFamily : public EnumeratorFamily {
 public:
  DescendantFamily(const EnumerationIndex& idx, int node, std::vector<int> wanted, StepCounter* c)
      : idx_(idx), f_(idx.forest()), root_(node), c_(c) {
    root_mask_.assign(f_.node(node).universe.size(), 0);
    for (int t : wanted) root_mask_[t] = 1;
  }

  EnumeratorPtr next_member() override {
    if (!started_) {
      started_ = true;
      stack_.push_back({root_, root_mask_, 0, 0});
    }
    while (!stack_.empty()) {
      tick(c_);
      Frame& fr = stack_.back();
      const CloseNode& nd = f_.node(fr.node);
      if (nd.leaf()) {
        const int v = nd.parts[0];
        if (fr.next_birth++ == 0 && fr.mask[0]) return enum_list({Tuple(nd.arity, v)}, c_);
      } else {
        while (fr.next_birth < nd.births.size()) {
          const BirthEntry& e = nd.births[fr.next_birth++];
          if (fr.mask[e.result]) return idx_.birth_enumerator(e, c_);
        }
      }
      if (fr.next_child < nd.children.size()) {
        const int child = nd.children[fr.next_child++];
        const CloseNode& cn = f_.node(child);
        std::vector<char> mask(cn.universe.size(), 0);
        bool any = false;
        for (std::size_t t = 0; t < mask.size(); ++t)
          if (fr.mask[cn.to_parent[t]]) {
            mask[t] = 1;
            any = true;
          }
        if (any) stack_.push_back({child, std::move(mask), 0, 0});
        continue;
      }
      stack_.pop_back();
    }
    started_ = false;
    return nullptr;
  }

 private:
  struct Frame {
    int node;
    std::vector<char> mask;
    std::size_t next_birth;
    std::size_t next_child;
  };
  const EnumerationIndex& idx_;
  const CloseForest& f_;
  int root_;
  std::vector<char> root_mask_;
  std::vector<Frame> stack_;
  bool started_ = false;
  StepCounter* c_;
};

}  // namespace

EnumerationIndex::EnumerationIndex(const Graph& g, const ContractionSequence& cs, const Formula& phi)
    : vars_(free_vars(phi)) {
  if (vars_.empty()) throw std::invalid_argument("enumeration needs a free variable; use model checking for sentences");
  const int m = static_cast<int>(vars_.size());
  const int k = quantifier_rank(phi);
  check_rank_cap(k, m);
  validate(g, cs);
  if (g.n() < 1) throw std::invalid_argument("enumeration needs a nonempty graph");
  auto re = reindex_convex(g, cs);
  eta_inv_.assign(re.eta.size(), 0);
  for (std::size_t v = 1; v < re.eta.size(); ++v) eta_inv_[re.eta[v]] = static_cast<int>(v);
  forest_ = std::make_unique<CloseForest>(re.graph, re.cs, k, m);
  auto& arena = forest_->arena();
  const auto& root = forest_->node(forest_->root(m));
  for (std::size_t t = 0; t < root.universe.size(); ++t)
    if (eval_on_type(arena, arena.to_global(root.universe[t]), phi)) accept_.push_back(static_cast<int>(t));
}

std::size_t EnumerationIndex::accepted_types() const { return accept_.size(); }

EnumeratorPtr EnumerationIndex::s_enumerator(int node, const std::vector<int>& type_indices, StepCounter* counter) const {
  return enum_family_union(std::make_unique<DescendantFamily>(*this, node, type_indices, counter), counter);
}

EnumeratorPtr EnumerationIndex::r_enumerator(int node, int type_index, StepCounter* counter) const {
  const CloseNode& nd = forest_->node(node);
  if (nd.leaf()) {
    std::vector<Tuple> items;
    if (type_index == 0) items.push_back(Tuple(nd.arity, nd.parts[0]));
    return enum_list(std::move(items), counter);
  }
  std::vector<EnumeratorPtr> parts;
  for (const auto& e : nd.births)
    if (e.result == type_index) parts.push_back(birth_enumerator(e, counter));
  return enum_disjoint_union(std::move(parts), counter);
}

EnumeratorPtr EnumerationIndex::birth_enumerator(const BirthEntry& entry, StepCounter* counter) const {
  const BirthEntry* e = &entry;
  EnumeratorPtr prod;
  std::vector<int> pos;
  for (std::size_t c = 0; c < e->comps.size(); ++c) {
    auto sub = s_enumerator(e->comps[c].node, {e->types[c]}, counter);
    prod = prod ? enum_product(std::move(prod), std::move(sub), counter) : std::move(sub);
    pos.insert(pos.end(), e->comps[c].positions.begin(), e->comps[c].positions.end());
  }
  return std::make_unique<PlacedEnumerator>(std::move(prod), std::move(pos));
}

namespace {

class OutputEnumerator : public Enumerator {
 public:
  OutputEnumerator(EnumeratorPtr e, const EnumerationIndex& idx) : e_(std::move(e)), idx_(idx) {}
  bool next(Tuple& out) override {
    if (!e_->next(out)) return false;
    for (int& v : out) v = idx_.original_vertex(v);
    return true;
  }

 private:
  EnumeratorPtr e_;
  const EnumerationIndex& idx_;
};

}  // namespace

EnumeratorPtr EnumerationIndex::enumerator(StepCounter* counter) const {
  EnumeratorPtr inner = accept_.empty() ? enum_list({}, counter)
                                        : s_enumerator(forest_->root(static_cast<int>(vars_.size())), accept_, counter);
  return std::make_unique<OutputEnumerator>(std::move(inner), *this);
}

std::vector<Tuple> enumerate_all(const Graph& g, const ContractionSequence& cs, const Formula& phi) {
  EnumerationIndex idx(g, cs, phi);
  auto en = idx.enumerator();
  std::vector<Tuple> out;
  Tuple t;
  while (en->next(t)) out.push_back(t);
  return out;
}

}  // namespace tww
