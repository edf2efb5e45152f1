#include "plat/census.hpp"

#include <algorithm>
#include <limits>

#include "plat/error.hpp"

namespace plat {

ClassIndex::ClassIndex(const SubgroupLattice& lat, ClassMembership m) : lat_(&lat), m_(std::move(m)) {
  const std::size_t n = lat.size();
  closed_ = validate_subgroup_closed(m_).empty();
  maximal_.assign(n, false);
  maximal_normal_.assign(n, false);
  b_.assign(n, 0);
  for (SubgroupId h = 0; h < n; ++h) {
    if (!m_.member[h]) continue;
    const auto up = lat.above(h);
    maximal_[h] = std::none_of(up.begin() + 1, up.end(), [&](SubgroupId k) { return m_.member[k]; });
    if (lat.is_normal(h))
      maximal_normal_[h] = std::none_of(up.begin() + 1, up.end(),
                                        [&](SubgroupId k) { return m_.member[k] && lat.is_normal(k); });
  }
  for (SubgroupId h = 0; h < n; ++h)
    for (SubgroupId k : lat.above(h))
      if (maximal_[k]) ++b_[h];
}

std::vector<SubgroupId> ClassIndex::members() const {
  std::vector<SubgroupId> out;
  for (SubgroupId h = 0; h < lat_->size(); ++h)
    if (m_.member[h]) out.push_back(h);
  return out;
}

CensusValues census(const ClassIndex& idx, SubgroupId h) {
  const SubgroupLattice& lat = idx.lattice();
  if (h >= lat.size() || !idx.member(h))
    throw Error(Errc::NotInClass, "subgroup " + std::to_string(h) + " is not in class " + idx.label());
  const unsigned m = lat.log_order(h);
  const unsigned n = lat.group().log_order();
  CensusValues v;
  for (unsigned k = m; k <= n; ++k) v.c_by_level[k] = 0;
  unsigned sup = std::numeric_limits<unsigned>::max();
  for (SubgroupId k : lat.above(h)) {
    const unsigned lk = lat.log_order(k);
    if (idx.member(k)) {
      ++v.c_by_level[lk];
      if (lk == m + 1) ++v.a;
    }
    if (idx.maximal(k)) {
      ++v.b;
      sup = std::min(sup, lk);
    }
    if (idx.maximal_normal(k)) v.nsup_log = std::min(v.nsup_log.value_or(lk), lk);
  }
  v.sup_log = sup;
  return v;
}

std::string_view condition_name(Condition c) {
  switch (c) {
    case Condition::A: return "A";
    case Condition::B: return "B";
    case Condition::C: return "C";
    case Condition::T2a: return "T2a";
    case Condition::T2b: return "T2b";
  }
  return "?";
}

ConditionReport check_condition(const ClassIndex& idx, Condition which) {
  if (!idx.subgroup_closed())
    throw Error(Errc::ClassNotSubgroupClosed, "class " + idx.label() + " is not subgroup-closed on " +
                                                  idx.lattice().group().name());
  const SubgroupLattice& lat = idx.lattice();
  const unsigned p = lat.group().prime();
  const auto is_one = [p](std::uint64_t x) { return x % p == 1; };

  ConditionReport rep;
  rep.condition = which;
  for (SubgroupId h = 0; h < lat.size(); ++h) {
    if (!idx.member(h)) continue;
    const unsigned m = lat.log_order(h);
    switch (which) {
      case Condition::A: {
        const auto v = census(idx, h);
        if (v.a != 0 && !is_one(v.a)) rep.witnesses.push_back({h, m + 1, v.a});
        break;
      }
      case Condition::B: {
        const std::uint64_t b = idx.maximal_above(h);
        if (!is_one(b)) rep.witnesses.push_back({h, m, b});
        break;
      }
      case Condition::C: {
        const auto v = census(idx, h);
        for (unsigned k = m; k <= v.sup_log; ++k)
          if (!is_one(v.c(k))) rep.witnesses.push_back({h, k, v.c(k)});
        break;
      }
      case Condition::T2a: {
        if (idx.maximal_normal(h) && !idx.maximal(h)) rep.witnesses.push_back({h, m, census(idx, h).a});
        break;
      }
      case Condition::T2b: {
        if (!lat.is_normal(h)) break;
        const auto v = census(idx, h);
        for (unsigned k = m; k <= *v.nsup_log; ++k)
          if (!is_one(v.c(k))) rep.witnesses.push_back({h, k, v.c(k)});
        break;
      }
    }
  }
  rep.holds = rep.witnesses.empty();
  return rep;
}

TheoremAVerdict verify_theorem_A(const ClassIndex& idx) {
  TheoremAVerdict v;
  v.a = check_condition(idx, Condition::A);
  v.b = check_condition(idx, Condition::B);
  v.c = check_condition(idx, Condition::C);
  v.equivalent = v.a.holds == v.b.holds && v.b.holds == v.c.holds;
  return v;
}

TheoremBVerdict verify_theorem_B(const ClassIndex& idx) {
  TheoremBVerdict v;
  v.lhs = verify_theorem_A(idx);
  v.t2a = check_condition(idx, Condition::T2a);
  v.t2b = check_condition(idx, Condition::T2b);
  v.lhs_holds = v.lhs.a.holds && v.lhs.b.holds && v.lhs.c.holds;
  v.rhs_holds = v.t2a.holds && v.t2b.holds;
  v.equivalent = v.lhs_holds == v.rhs_holds;
  return v;
}

MobiusIdentityVerdict check_mobius_inversion_identity(const ClassIndex& idx) {
  const SubgroupLattice& lat = idx.lattice();
  const std::int64_t p = lat.group().prime();
  MobiusIdentityVerdict v;
  for (SubgroupId h = 0; h < lat.size(); ++h) {
    if (!idx.member(h)) continue;
    ++v.subgroups_checked;
    const auto up = lat.above(h);
    const auto mu = mobius_row_formula(lat, h);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < up.size(); ++i) {
      ++v.pairs_checked;
      sum += mu[i] * static_cast<std::int64_t>(idx.maximal_above(up[i]));
      if (lat.log_order(up[i]) >= lat.log_order(h) + 2 && mu[i] % p != 0)
        v.congruence_failures.push_back({h, up[i], mu[i], 0});
    }
    const std::int64_t delta = idx.maximal(h) ? 1 : 0;
    if (sum != delta) v.identity_failures.push_back({h, h, delta, sum});
  }
  v.holds = v.identity_failures.empty() && v.congruence_failures.empty();
  return v;
}

DoubleCountVerdict check_double_counting(const ClassIndex& idx, SubgroupId h, unsigned level) {
  const SubgroupLattice& lat = idx.lattice();
  if (h >= lat.size() || !idx.member(h))
    throw Error(Errc::NotInClass, "subgroup " + std::to_string(h) + " is not in class " + idx.label());
  if (idx.maximal(h)) throw Error(Errc::IsMaximal, "subgroup " + std::to_string(h) + " is a maximal member");
  if (level < lat.log_order(h) || level > lat.group().log_order())
    throw Error(Errc::BadLevel, "level " + std::to_string(level) + " outside the range above subgroup");

  std::vector<SubgroupId> level_members, maximals;
  for (SubgroupId k : lat.above(h)) {
    if (idx.member(k) && lat.log_order(k) == level) level_members.push_back(k);
    if (idx.maximal(k)) maximals.push_back(k);
  }

  DoubleCountVerdict v;
  for (SubgroupId k : level_members) v.lhs += idx.maximal_above(k);
  for (SubgroupId m : maximals)
    for (SubgroupId k : level_members)
      if (lat.leq(k, m)) ++v.rhs;

  // Proof form: b(K) over non-maximal level members K, against the number of
  // all level subgroups above h inside each maximal T of larger order.
  for (SubgroupId k : level_members)
    if (!idx.maximal(k)) v.variant_lhs += idx.maximal_above(k);
  for (SubgroupId t : maximals) {
    if (lat.log_order(t) <= level) continue;
    for (SubgroupId k : lat.above(h))
      if (lat.log_order(k) == level && lat.leq(k, t)) ++v.variant_rhs;
  }
  v.holds = v.lhs == v.rhs && v.variant_lhs == v.variant_rhs;
  return v;
}

std::string_view remark_name(RemarkKind r) {
  switch (r) {
    case RemarkKind::NormalizerLocal: return "a_G=a_N";
    case RemarkKind::LevelAboveIsA: return "a=c[m+1]";
    case RemarkKind::SupBelowMaximal: return "sup<=|M|=sup_M";
  }
  return "?";
}

RemarkVerdict remark_invariants(const ClassIndex& idx) {
  const SubgroupLattice& lat = idx.lattice();
  const Group& g = lat.group();
  RemarkVerdict v;
  for (SubgroupId h = 0; h < lat.size(); ++h) {
    if (!idx.member(h)) continue;
    ++v.subgroups_checked;
    const auto cv = census(idx, h);
    const unsigned m = lat.log_order(h);

    const ElementSet norm = normalizer(g, lat.members(h));
    std::uint64_t a_local = 0;
    for (SubgroupId k : lat.above(h))
      if (idx.member(k) && lat.log_order(k) == m + 1 && lat.members(k).subset_of(norm)) ++a_local;
    if (a_local != cv.a) v.failures.push_back({RemarkKind::NormalizerLocal, h, cv.a, a_local});

    if (cv.a != cv.c(m + 1)) v.failures.push_back({RemarkKind::LevelAboveIsA, h, cv.a, cv.c(m + 1)});

    for (SubgroupId mx : lat.above(h)) {
      if (!idx.maximal(mx)) continue;
      const unsigned lm = lat.log_order(mx);
      if (cv.sup_log > lm) v.failures.push_back({RemarkKind::SupBelowMaximal, h, lm, cv.sup_log});
      // sup inside M: lowest maximal member of the sublattice [H, M].
      unsigned sup_in_m = std::numeric_limits<unsigned>::max();
      for (SubgroupId k : lat.above(h)) {
        if (!idx.member(k) || !lat.leq(k, mx)) continue;
        const auto k_up = lat.above(k);
        const bool maximal_in_m = std::none_of(k_up.begin() + 1, k_up.end(), [&](SubgroupId l) {
          return idx.member(l) && lat.leq(l, mx);
        });
        if (maximal_in_m) sup_in_m = std::min(sup_in_m, lat.log_order(k));
      }
      if (sup_in_m != lm) v.failures.push_back({RemarkKind::SupBelowMaximal, h, lm, sup_in_m});
    }
  }
  v.holds = v.failures.empty();
  return v;
}

}  // namespace plat
