#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plat/classes.hpp"
#include "plat/lattice.hpp"

namespace plat {

/// Per-lattice index of a class: membership plus which members are maximal
/// and which are maximal among the normal members.
class ClassIndex {
 public:
  ClassIndex(const SubgroupLattice& lat, ClassMembership m);

  const SubgroupLattice& lattice() const noexcept { return *lat_; }
  const ClassMembership& membership() const noexcept { return m_; }
  const std::string& label() const noexcept { return m_.label; }
  bool subgroup_closed() const noexcept { return closed_; }

  bool member(SubgroupId h) const { return m_.member[h]; }
  /// No strictly larger member.
  bool maximal(SubgroupId h) const { return maximal_[h]; }
  /// Normal member with no strictly larger normal member.
  bool maximal_normal(SubgroupId h) const { return maximal_normal_[h]; }
  /// Number of maximal members containing h (b_G(h)); defined for every node.
  std::uint64_t maximal_above(SubgroupId h) const { return b_[h]; }

  std::vector<SubgroupId> members() const;

 private:
  const SubgroupLattice* lat_;
  ClassMembership m_;
  bool closed_ = true;
  std::vector<bool> maximal_;
  std::vector<bool> maximal_normal_;
  std::vector<std::uint64_t> b_;
};

/// a, b, c_k, sup and nsup of one member subgroup. Orders are stored as
/// log_p values.
struct CensusValues {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::map<unsigned, std::uint64_t> c_by_level;
  unsigned sup_log = 0;
  std::optional<unsigned> nsup_log;

  std::uint64_t c(unsigned level) const {
    auto it = c_by_level.find(level);
    return it == c_by_level.end() ? 0 : it->second;
  }
};

/// Throws NotInClass.
CensusValues census(const ClassIndex& idx, SubgroupId h);

enum class Condition { A, B, C, T2a, T2b };
std::string_view condition_name(Condition c);

struct Witness {
  SubgroupId subgroup = 0;
  unsigned level = 0;
  std::uint64_t observed = 0;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct ConditionReport {
  Condition condition = Condition::A;
  bool holds = true;
  std::vector<Witness> witnesses;
};

/// Throws ClassNotSubgroupClosed.
ConditionReport check_condition(const ClassIndex& idx, Condition which);

struct TheoremAVerdict {
  ConditionReport a, b, c;
  bool equivalent = true;
};

/// Conditions A, B, C must agree.
TheoremAVerdict verify_theorem_A(const ClassIndex& idx);

struct TheoremBVerdict {
  TheoremAVerdict lhs;
  ConditionReport t2a, t2b;
  bool lhs_holds = true;
  bool rhs_holds = true;
  bool equivalent = true;
};

/// (A and B and C) iff (T2a and T2b).
TheoremBVerdict verify_theorem_B(const ClassIndex& idx);

struct MobiusIdentityFailure {
  SubgroupId h = 0;
  SubgroupId k = 0;  // equal to h for identity failures
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
};

struct MobiusIdentityVerdict {
  bool holds = true;
  std::size_t subgroups_checked = 0;
  std::size_t pairs_checked = 0;
  /// delta(H) != sum_K mu(H,K) b(K)
  std::vector<MobiusIdentityFailure> identity_failures;
  /// mu(H,K) not divisible by p with |K:H| >= p^2
  std::vector<MobiusIdentityFailure> congruence_failures;
};

/// Exact inversion delta(H) = sum_{H<=K} mu(H,K) b(K) over every member H,
/// and mu(H,K) = 0 mod p once |K:H| >= p^2.
MobiusIdentityVerdict check_mobius_inversion_identity(const ClassIndex& idx);

struct DoubleCountVerdict {
  /// sum over level-k members K >= h of b(K)
  std::uint64_t lhs = 0;
  /// sum over maximal members M >= h of #{level-k members K : K <= M}
  std::uint64_t rhs = 0;
  /// sum of b(K) over non-maximal level-k members K >= h, against the sum
  /// over maximal T of order > p^k of all order-p^k subgroups L, h <= L <= T.
  std::uint64_t variant_lhs = 0;
  std::uint64_t variant_rhs = 0;
  bool holds = true;
};

/// Throws NotInClass, IsMaximal, BadLevel.
DoubleCountVerdict check_double_counting(const ClassIndex& idx, SubgroupId h, unsigned level);

enum class RemarkKind { NormalizerLocal, LevelAboveIsA, SupBelowMaximal };
std::string_view remark_name(RemarkKind r);

struct RemarkFailure {
  RemarkKind remark = RemarkKind::NormalizerLocal;
  SubgroupId h = 0;
  std::uint64_t expected = 0;
  std::uint64_t observed = 0;
};

struct RemarkVerdict {
  bool holds = true;
  std::size_t subgroups_checked = 0;
  std::vector<RemarkFailure> failures;
};

/// a_G(H) = a_N(H) for N = N_G(H); a = c at level m+1; and for each maximal
/// member M >= H, sup_G(H) <= |M| = sup_M(H).
RemarkVerdict remark_invariants(const ClassIndex& idx);

}  // namespace plat
