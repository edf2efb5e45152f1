#include "plat/bounds.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "plat/census.hpp"
#include "plat/error.hpp"

namespace plat {

namespace {

std::size_t ipow(std::size_t b, unsigned e) {
  std::size_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

template <class... Ts>
std::string cat(const Ts&... parts) {
  std::ostringstream ss;
  (ss << ... << parts);
  return ss.str();
}

unsigned resolve_exp_k(const SubgroupLattice& lat, const ClassSpec& spec, const BoundOptions& opts) {
  const Group& g = lat.group();
  unsigned k = 0;
  if (opts.exp_k) {
    k = *opts.exp_k;
  } else {
    switch (spec.kind) {
      case ClassKind::AbelianExpDiv: k = static_cast<unsigned>(spec.param.value_or(0)); break;
      case ClassKind::ElementaryAbelian: k = 1; break;
      case ClassKind::Abelian:
        // Abelian and abelian of exponent dividing p^k agree on G once p^k >= exp(G).
        k = std::max(g.exponent_exp(), g.prime() == 2 ? 2u : 1u);
        break;
      default:
        throw Error(Errc::BadBoundInput, "class " + spec.label + " carries no abelian exponent bound");
    }
  }
  if (ipow(g.prime(), k) <= 2)
    throw Error(Errc::BadBoundInput, cat("exponent bound p^k = ", ipow(g.prime(), k), " must exceed 2"));
  return k;
}

BoundVerdict burnside(const SubgroupLattice& lat) {
  BoundVerdict v;
  const ClassIndex ab(lat, evaluate_class(ClassSpec::abelian(), lat));
  const long long n = lat.group().log_order();
  for (SubgroupId a = 0; a < lat.size(); ++a) {
    if (!ab.maximal_normal(a)) continue;
    ++v.instances;
    const long long s = lat.log_order(a);
    if (2 * n > s * (s + 1)) v.witnesses.push_back({a, cat("n=", n, " > s(s+1)/2 with s=", s)});
  }
  return v;
}

BoundVerdict miller(const SubgroupLattice& lat) {
  BoundVerdict v;
  const ClassIndex ab(lat, evaluate_class(ClassSpec::abelian(), lat));
  const unsigned p = lat.group().prime();
  const long long n = lat.group().log_order();
  std::vector<std::uint64_t> per_level(static_cast<std::size_t>(n) + 1, 0);
  for (SubgroupId h = 0; h < lat.size(); ++h)
    if (ab.member(h)) ++per_level[lat.log_order(h)];
  for (long long k = 0; k <= n; ++k) {
    if (!(n > k * (k - 1) / 2)) continue;
    ++v.instances;
    if (per_level[static_cast<std::size_t>(k)] % p != 1)
      v.witnesses.push_back({std::nullopt, cat("k=", k, ": ", per_level[static_cast<std::size_t>(k)],
                                               " abelian subgroups of order p^k")});
  }
  return v;
}

BoundVerdict berkovich(const SubgroupLattice& lat, unsigned k) {
  BoundVerdict v;
  const ClassIndex x(lat, evaluate_class(ClassSpec::abelian_exp_div(static_cast<int>(k)), lat));
  const unsigned p = lat.group().prime();
  for (SubgroupId h = 0; h < lat.size(); ++h) {
    if (!x.member(h)) continue;
    const auto cv = census(x, h);
    if (cv.a == 0) continue;  // no abelian overgroup B of index p with exp(B) <= p^k
    ++v.instances;
    if (cv.a % p != 1) v.witnesses.push_back({h, cat("|A| = ", cv.a, " for k=", k)});
  }
  return v;
}

BoundVerdict isaacs_yanovski(const SubgroupLattice& lat, unsigned k) {
  BoundVerdict v;
  const ClassIndex x(lat, evaluate_class(ClassSpec::abelian_exp_div(static_cast<int>(k)), lat));
  const unsigned p = lat.group().prime();
  for (SubgroupId h = 0; h < lat.size(); ++h) {
    if (!x.member(h)) continue;
    ++v.instances;
    if (x.maximal_above(h) % p != 1)
      v.witnesses.push_back({h, cat("n = ", x.maximal_above(h), " maximal overgroups for k=", k)});
  }
  return v;
}

BoundVerdict theorem_c(const SubgroupLattice& lat, bool strict) {
  BoundVerdict v;
  const Group& g = lat.group();
  const long long n = g.log_order();
  const long long e = g.exponent_exp();
  const ClassIndex ab(lat, evaluate_class(ClassSpec::abelian(), lat));
  std::vector<unsigned> exp_of(lat.size());
  for (SubgroupId h = 0; h < lat.size(); ++h) exp_of[h] = exponent_exp_of(g, lat.members(h));

  for (long long s = 2; s <= e; ++s) {
    const auto in_family = [&](SubgroupId h) {
      if (!lat.is_normal(h) || !ab.member(h)) return false;
      return strict ? exp_of[h] == s : exp_of[h] <= s;
    };
    for (SubgroupId a = 0; a < lat.size(); ++a) {
      if (!in_family(a)) continue;
      const auto up = lat.above(a);
      if (std::any_of(up.begin() + 1, up.end(), in_family)) continue;
      ++v.instances;
      const long long r = lat.log_order(a);
      if (!theorem_c_inequality(n, e, s, r))
        v.witnesses.push_back({a, cat("s=", s, " r=", r, ": n=", n, " exceeds (r-s+1)(r-s+2e-2)/2+r")});
      if (!theorem_c_solved_form(n, e, s, r))
        v.witnesses.push_back({a, cat("s=", s, " r=", r, ": solved lower bound on r fails")});
      const long long d = characteristic_data(g, lat.members(a)).rank_d;
      if (d > r - s + 1) v.witnesses.push_back({a, cat("s=", s, " r=", r, ": d(A)=", d, " > r-s+1")});
    }
  }
  return v;
}

BoundVerdict laffey_lemma(const SubgroupLattice& lat) {
  BoundVerdict v;
  const Group& g = lat.group();
  std::vector<bool> done(lat.size(), false);
  for (SubgroupId a = 0; a < lat.size(); ++a) {
    const auto cid = lat.find(centralizer(g, lat.members(a)));
    if (!cid || done[*cid]) continue;
    done[*cid] = true;
    const ElementSet& c = lat.members(*cid);
    const unsigned e = exponent_exp_of(g, c);
    const ElementSet center = characteristic_data(g, c).center;
    const std::size_t omega1 = omega(g, c, 1).subgroup.count();
    for (unsigned s = 1; s <= e; ++s) {
      if (ipow(g.prime(), s) <= 2) continue;
      const ElementSet om = omega(g, c, s).subgroup;
      if (!om.subset_of(center)) continue;
      ++v.instances;
      // |C| / |Omega_s(C)| <= |Omega_1(C)|^(e-s), compared as logs.
      const unsigned lhs = g.log_p(c.count()) - g.log_p(om.count());
      const unsigned rhs = g.log_p(omega1) * (e - s);
      if (lhs > rhs)
        v.witnesses.push_back({*cid, cat("C=C_G(", a, ") s=", s, " e=", e, ": |C:Omega_s| = p^", lhs,
                                         " > |Omega_1|^(e-s) = p^", rhs)});
    }
  }
  return v;
}

BoundVerdict laffey_theorem(const SubgroupLattice& lat) {
  BoundVerdict v;
  const Group& g = lat.group();
  const ClassIndex y(lat, evaluate_class(ClassSpec::elementary_abelian(), lat));
  long long r = std::numeric_limits<long long>::max();
  std::optional<SubgroupId> argmin;
  for (SubgroupId a = 0; a < lat.size(); ++a)
    if (y.maximal_normal(a) && lat.log_order(a) < r) {
      r = lat.log_order(a);
      argmin = a;
    }
  const long long n = g.log_order();
  const long long e = g.exponent_exp();
  ++v.instances;
  const long long rhs2 = g.prime() == 2 ? r * (3 * r - 1) + 2 * e * r : r * (r - 1) + 2 * e * r;
  if (2 * n > rhs2) v.witnesses.push_back({argmin, cat("n=", n, " r=", r, " e=", e, ": bound exceeded")});
  return v;
}

BoundVerdict final_corollary(const SubgroupLattice& lat) {
  BoundVerdict v;
  const Group& g = lat.group();
  const ClassIndex y(lat, evaluate_class(ClassSpec::elementary_abelian(), lat));
  const long long n = g.log_order();
  const long long e = g.exponent_exp();
  for (long long k = 1; k <= n && final_corollary_in_range(g.prime(), n, e, k); ++k) {
    ++v.instances;
    std::uint64_t count = 0, normal_count = 0;
    for (SubgroupId h = 0; h < lat.size(); ++h)
      if (y.member(h) && lat.log_order(h) == k) {
        ++count;
        if (lat.is_normal(h)) ++normal_count;
      }
    if (count % g.prime() != 1)
      v.witnesses.push_back({std::nullopt, cat("k=", k, ": ", count, " elementary abelian subgroups of order p^k")});
    if (normal_count == 0)
      v.witnesses.push_back({std::nullopt, cat("k=", k, ": no normal elementary abelian subgroup of order p^k")});
  }
  return v;
}

}  // namespace

bool theorem_c_inequality(long long n, long long e, long long s, long long r) {
  return 2 * n <= (r - s + 1) * (r - s + 2 * e - 2) + 2 * r;
}

bool theorem_c_solved_form(long long n, long long e, long long s, long long r) {
  return r * r + r * (2 * e - 2 * s + 1) >= 2 * n;
}

bool final_corollary_in_range(unsigned p, long long n, long long e, long long k) {
  if (p == 2) return 3 * k * k + k * (2 * e - 1) <= 2 * n;
  return k * k + k * (2 * e - 1) <= 2 * n;
}

std::string_view bound_name(Bound b) {
  switch (b) {
    case Bound::Burnside: return "burnside";
    case Bound::Miller: return "miller";
    case Bound::Berkovich: return "berkovich";
    case Bound::IsaacsYanovski: return "isaacs_yanovski";
    case Bound::TheoremC: return "theorem_C";
    case Bound::LaffeyLemma: return "laffey_lemma";
    case Bound::LaffeyTheorem: return "laffey_theorem";
    case Bound::FinalCorollary: return "final_corollary";
  }
  return "?";
}

Bound bound_from_name(std::string_view name) {
  for (Bound b : all_bounds())
    if (bound_name(b) == name) return b;
  throw Error(Errc::BadParam, "unknown bound '" + std::string(name) + "'");
}

std::vector<Bound> all_bounds() {
  return {Bound::Burnside,   Bound::Miller,      Bound::Berkovich,     Bound::IsaacsYanovski,
          Bound::TheoremC,   Bound::LaffeyLemma, Bound::LaffeyTheorem, Bound::FinalCorollary};
}

BoundVerdict verify_bound(const SubgroupLattice& lat, const ClassSpec& spec, Bound bound, const BoundOptions& opts) {
  BoundVerdict v;
  switch (bound) {
    case Bound::Burnside: v = burnside(lat); break;
    case Bound::Miller: v = miller(lat); break;
    case Bound::Berkovich: v = berkovich(lat, resolve_exp_k(lat, spec, opts)); break;
    case Bound::IsaacsYanovski: v = isaacs_yanovski(lat, resolve_exp_k(lat, spec, opts)); break;
    case Bound::TheoremC: v = theorem_c(lat, opts.strict_exponent); break;
    case Bound::LaffeyLemma: v = laffey_lemma(lat); break;
    case Bound::LaffeyTheorem: v = laffey_theorem(lat); break;
    case Bound::FinalCorollary: v = final_corollary(lat); break;
  }
  v.bound = bound;
  v.holds = v.witnesses.empty();
  return v;
}

}  // namespace plat
