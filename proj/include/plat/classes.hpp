#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plat/lattice.hpp"

namespace plat {

enum class ClassKind {
  Abelian,
  AbelianExpDiv,
  ElementaryAbelian,
  ExpDiv,
  Cyclic,
  NilpotencyClassAtMost,
  DerivedLengthAtMost,
  Custom,
};

/// Predicate on a subgroup, seen as an abstract group.
using SubgroupPredicate = std::function<bool(const Group&, const ElementSet&)>;

/// A subgroup-closed class of groups, evaluated node by node.
struct ClassSpec {
  ClassKind kind = ClassKind::Abelian;
  std::optional<int> param;
  std::string label;
  SubgroupPredicate custom;

  static ClassSpec abelian();
  static ClassSpec abelian_exp_div(int k);
  static ClassSpec elementary_abelian();
  static ClassSpec exp_div(int k);
  static ClassSpec cyclic();
  static ClassSpec nilpotency_class_at_most(int c);
  static ClassSpec derived_length_at_most(int d);
  static ClassSpec make_custom(std::string label, SubgroupPredicate pred);
};

/// Parses one suite token: "abelian", "abelian-exp:k", "elementary-abelian",
/// "exp:k", "cyclic", "nilclass:c", "derived:d", "custom:<name>". Exponent
/// parameters are k in p^k. Throws BadParam.
ClassSpec parse_class(std::string_view token);

/// Comma-separated list of tokens.
std::vector<ClassSpec> parse_class_suite(std::string_view text);

/// Names accepted after "custom:".
std::vector<std::string> custom_class_names();

struct ClassMembership {
  const SubgroupLattice* lattice = nullptr;
  std::string label;
  std::vector<bool> member;

  bool operator[](SubgroupId h) const { return member[h]; }
  std::size_t count() const;
};

/// member[H] = predicate(H). Throws BadParam.
ClassMembership evaluate_class(const ClassSpec& spec, const SubgroupLattice& lat);

/// Every pair (H, K) with H < K, K a member and H not. Empty exactly when
/// membership is downward closed.
std::vector<std::pair<SubgroupId, SubgroupId>> validate_subgroup_closed(const ClassMembership& m);

/// Nilpotency class of a p-group (0 for the trivial group).
unsigned nilpotency_class(const Group& g, const ElementSet& sub);
/// Derived length (0 for the trivial group).
unsigned derived_length(const Group& g, const ElementSet& sub);

}  // namespace plat
