#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plat/element_set.hpp"

namespace plat {

inline constexpr std::size_t kDefaultOrderCap = 256;

struct Permutation {
  std::vector<std::uint32_t> images;

  std::size_t degree() const noexcept { return images.size(); }
  bool is_bijection() const;
  static Permutation identity(std::size_t degree);
  /// Apply this, then `then` (right action: x^(ab) = (x^a)^b).
  Permutation then(const Permutation& next) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
};

/// Builds a permutation of `degree` points from disjoint cycles, e.g. {{0,1,2,3}}.
Permutation from_cycles(std::size_t degree, const std::vector<std::vector<std::uint32_t>>& cycles);

struct GroupSpec {
  std::string name;
  std::size_t degree = 0;
  std::vector<Permutation> generators;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

struct BuildOptions {
  std::size_t order_cap = kDefaultOrderCap;
  /// Prime reported for the trivial group, which carries no prime of its own.
  unsigned trivial_prime = 2;
};

/// A finite p-group as a Cayley table over dense indices. Identity is 0.
///
/// Elements are numbered by (element order, first-seen position in the
/// breadth-first closure of the generators), so a given GroupSpec always
/// produces the same table.
class Group {
 public:
  const std::string& name() const noexcept { return name_; }
  std::size_t order() const noexcept { return n_; }
  unsigned prime() const noexcept { return p_; }
  unsigned log_order() const noexcept { return log_order_; }
  unsigned exponent_exp() const noexcept { return exponent_exp_; }
  std::size_t exponent() const noexcept;

  Elem identity() const noexcept { return 0; }
  Elem mul(Elem x, Elem y) const noexcept { return table_[static_cast<std::size_t>(x) * n_ + y]; }
  Elem inv(Elem x) const noexcept { return inverse_[x]; }
  Elem pow(Elem x, std::uint64_t k) const noexcept;
  /// x^-1 y^-1 x y
  Elem commutator(Elem x, Elem y) const noexcept { return mul(mul(inv(x), inv(y)), mul(x, y)); }
  /// g^-1 x g
  Elem conj(Elem x, Elem g) const noexcept { return mul(mul(inv(g), x), g); }
  std::size_t element_order(Elem x) const noexcept { return element_order_[x]; }

  /// Element indices of the generating permutations from the spec (identity dropped, deduplicated).
  std::span<const Elem> generators() const noexcept { return generators_; }

  ElementSet empty_set() const { return ElementSet(n_); }
  ElementSet all() const { return ElementSet::full(n_); }

  /// p-adic logarithm of a p-power; throws BadParams if not a power of p.
  unsigned log_p(std::size_t value) const;

  friend Group build_group(const GroupSpec& spec, const BuildOptions& opts);

 private:
  std::string name_;
  std::size_t n_ = 0;
  unsigned p_ = 2;
  unsigned log_order_ = 0;
  unsigned exponent_exp_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<std::size_t> element_order_;
  std::vector<Elem> generators_;
};

/// Closure of the generators under composition, re-indexed and validated.
/// Throws InvalidPermutation, OrderCapExceeded, NotPGroup.
Group build_group(const GroupSpec& spec, const BuildOptions& opts = {});

/// <seed>: the smallest subgroup containing seed.
ElementSet closure(const Group& g, const ElementSet& seed);

/// <base, x> for a subgroup `base` with known generators `base_gens`.
ElementSet closure_with(const Group& g, const ElementSet& base, std::span<const Elem> base_gens, Elem x);

bool is_subgroup(const Group& g, const ElementSet& s);

/// Generating set for a subgroup, built greedily (not necessarily minimal).
std::vector<Elem> generators_of(const Group& g, const ElementSet& subgroup);

struct OmegaResult {
  ElementSet subgroup;
  /// True when {x : x^(p^i) = 1} was already a subgroup.
  bool raw_closed = false;
};

/// Omega_i(region). Throws NotASubgroup.
OmegaResult omega(const Group& g, const ElementSet& region, unsigned i);

struct CharacteristicData {
  ElementSet center;
  ElementSet frattini;
  ElementSet derived;
  unsigned rank_d = 0;
  unsigned exponent_exp = 0;
};

/// Z, Phi = G'G^p, G', d and exponent of a subgroup. Throws NotASubgroup.
CharacteristicData characteristic_data(const Group& g, const ElementSet& region);

ElementSet centralizer(const Group& g, const ElementSet& target);

/// Throws NotASubgroup.
ElementSet normalizer(const Group& g, const ElementSet& target);

/// [A, B] generated by commutators of the two sets.
ElementSet commutator_subgroup(const Group& g, const ElementSet& a, const ElementSet& b);

/// log_p of the largest element order inside `region`.
unsigned exponent_exp_of(const Group& g, const ElementSet& region);

}  // namespace plat
