#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plat/classes.hpp"
#include "plat/lattice.hpp"

namespace plat {

enum class Bound {
  Burnside,
  Miller,
  Berkovich,
  IsaacsYanovski,
  TheoremC,
  LaffeyLemma,
  LaffeyTheorem,
  FinalCorollary,
};

std::string_view bound_name(Bound b);
/// Throws BadParam.
Bound bound_from_name(std::string_view name);
std::vector<Bound> all_bounds();

struct BoundOptions {
  /// Exponent bound k (exponent divides p^k) for berkovich / isaacs_yanovski.
  /// When absent it is taken from the class spec.
  std::optional<unsigned> exp_k;
  /// Theorem C family: exponent exactly p^s instead of dividing p^s.
  bool strict_exponent = false;
};

struct BoundWitness {
  std::optional<SubgroupId> subgroup;
  std::string detail;
};

struct BoundVerdict {
  Bound bound = Bound::Burnside;
  bool holds = true;
  /// Number of individual inequalities / congruences evaluated.
  std::size_t instances = 0;
  std::vector<BoundWitness> witnesses;
};

/// Evaluates one bound on a lattice. `spec` supplies the exponent bound for
/// berkovich and isaacs_yanovski and is ignored by the others.
/// Throws BadBoundInput (e.g. berkovich with p^k = 2).
BoundVerdict verify_bound(const SubgroupLattice& lat, const ClassSpec& spec, Bound bound,
                          const BoundOptions& opts = {});

/// Exact integer forms of the square-root inequalities.
///
/// r >= -(e-s+1/2) + sqrt((e-s+1/2)^2 + 2n)  <=>  r^2 + r(2e-2s+1) >= 2n
bool theorem_c_solved_form(long long n, long long e, long long s, long long r);
/// n <= (r-s+1)(r-s+2e-2)/2 + r
bool theorem_c_inequality(long long n, long long e, long long s, long long r);
/// k <= -y + sqrt(y^2 + 2n/3) (p = 2), k <= -y + sqrt(y^2 + 2n) (p > 2)
bool final_corollary_in_range(unsigned p, long long n, long long e, long long k);

}  // namespace plat
