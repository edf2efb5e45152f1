#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "plat/element_set.hpp"
#include "plat/group.hpp"

namespace plat {

using SubgroupId = std::uint32_t;

inline constexpr std::size_t kDefaultLatticeCap = 100000;

struct LatticeOptions {
  std::size_t node_cap = kDefaultLatticeCap;
};

/// All subgroups of a group, ordered by (order, canonical bit order).
///
/// Node 0 is the trivial subgroup and the last node is the whole group.
/// The lattice shares ownership of its group and is immutable once built.
class SubgroupLattice {
 public:
  const Group& group() const noexcept { return *group_; }
  std::shared_ptr<const Group> group_ptr() const noexcept { return group_; }

  std::size_t size() const noexcept { return nodes_.size(); }
  SubgroupId bottom() const noexcept { return 0; }
  SubgroupId top() const noexcept { return static_cast<SubgroupId>(nodes_.size() - 1); }

  const ElementSet& members(SubgroupId h) const { return nodes_.at(h); }
  std::size_t order(SubgroupId h) const { return nodes_.at(h).count(); }
  unsigned log_order(SubgroupId h) const { return log_order_.at(h); }
  std::span<const Elem> generators(SubgroupId h) const { return gens_.at(h); }

  bool leq(SubgroupId h, SubgroupId k) const { return nodes_.at(h).subset_of(nodes_.at(k)); }
  bool is_normal(SubgroupId h) const { return normal_.at(h); }
  std::uint32_t conj_class(SubgroupId h) const { return conj_class_.at(h); }
  std::size_t conj_class_count() const noexcept { return class_count_; }

  /// Minimal overgroups, ascending ids.
  std::span<const SubgroupId> hasse_up(SubgroupId h) const { return hasse_up_.at(h); }
  /// Maximal subgroups, ascending ids.
  std::span<const SubgroupId> hasse_down(SubgroupId h) const { return hasse_down_.at(h); }
  /// Every K with h <= K, ascending ids; the first entry is h.
  std::span<const SubgroupId> above(SubgroupId h) const { return above_.at(h); }

  std::optional<SubgroupId> find(const ElementSet& s) const;

  /// Subgroup counts indexed by log_p of the order.
  std::vector<std::size_t> level_counts() const;

  friend SubgroupLattice enumerate_lattice(std::shared_ptr<const Group> g, const LatticeOptions& opts);

 private:
  std::shared_ptr<const Group> group_;
  std::vector<ElementSet> nodes_;
  std::vector<unsigned> log_order_;
  std::vector<std::vector<Elem>> gens_;
  std::vector<std::vector<SubgroupId>> hasse_up_;
  std::vector<std::vector<SubgroupId>> hasse_down_;
  std::vector<std::vector<SubgroupId>> above_;
  std::vector<bool> normal_;
  std::vector<std::uint32_t> conj_class_;
  std::size_t class_count_ = 0;
  std::unordered_map<ElementSet, SubgroupId, ElementSetHash> index_;
};

/// Breadth-first closure: from each known subgroup S, adjoin one element per
/// coset gS and keep every new <S, g>. Throws LatticeCapExceeded.
SubgroupLattice enumerate_lattice(std::shared_ptr<const Group> g, const LatticeOptions& opts = {});
SubgroupLattice enumerate_lattice(Group g, const LatticeOptions& opts = {});

/// All K >= h with |K| = order_pk, ascending. Throws BadLevel.
std::vector<SubgroupId> subgroups_between(const SubgroupLattice& lat, SubgroupId h, std::size_t order_pk);

struct Interval {
  SubgroupId base;
  SubgroupId top;
  std::vector<SubgroupId> members;
};

/// [h, k] in the subgroup lattice. Throws NotComparable.
Interval interval(const SubgroupLattice& lat, SubgroupId h, SubgroupId k);

/// (-1)^r p^(r choose 2) when h is normal in k with k/h elementary abelian of
/// rank r, otherwise 0. Throws NotComparable.
std::int64_t mobius_formula(const SubgroupLattice& lat, SubgroupId h, SubgroupId k);

/// Poset Moebius value from mu(h,h) = 1, mu(h,k) = -sum_{h<=l<k} mu(h,l).
/// Throws NotComparable.
std::int64_t mobius_recursive(const SubgroupLattice& lat, SubgroupId h, SubgroupId k);

/// mu(h, K) for every K in lat.above(h), same order, by the recursion.
std::vector<std::int64_t> mobius_row_recursive(const SubgroupLattice& lat, SubgroupId h);

/// mu(h, K) for every K in lat.above(h), same order, by the closed formula.
std::vector<std::int64_t> mobius_row_formula(const SubgroupLattice& lat, SubgroupId h);

/// Conjugacy class of h under G, ascending ids.
std::vector<SubgroupId> conjugates(const SubgroupLattice& lat, SubgroupId h);

/// One node per line: id, order, bits (hex), normal flag, class id, hasse edges.
void export_lattice(std::ostream& out, const SubgroupLattice& lat);

}  // namespace plat
