#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plat/group.hpp"

namespace plat {

enum class Family {
  Cyclic,             // cyclic:p,k                 C_{p^k}
  Abelian,            // abelian:p,l1,l2,...        C_{p^l1} x C_{p^l2} x ...
  ElementaryAbelian,  // elementary_abelian:p,r     (C_p)^r
  Dihedral,           // dihedral:m                 D_{2^m}, m >= 3
  Quaternion,         // quaternion:m               Q_{2^m}, m >= 3
  Semidihedral,       // semidihedral:m             SD_{2^m}, m >= 4
  Modular,            // modular:p,m                M_{p^m}, m >= 3 (m >= 4 for p = 2)
  Extraspecial,       // extraspecial:p,t           order p^3; t = 1 exponent p, t = 2 exponent p^2
  Wreath,             // wreath:p                   C_p wr C_p
};

/// Throws UnknownFamily.
Family family_from_name(std::string_view name);
std::string_view family_name(Family f);

bool is_prime(long long n);

/// Permutation generators for a catalogue group. Throws BadParams.
///
/// For p = 2 the extraspecial groups of order 8 are D8 (t = 1) and Q8 (t = 2).
GroupSpec family(Family kind, std::span<const long long> params);
GroupSpec family(std::string_view kind, std::span<const long long> params);

/// Direct product acting on the disjoint union of the factors' points.
GroupSpec direct_product(std::span<const GroupSpec> factors);

/// Parses "dihedral:3", "cyclic:2,2" or a product "dihedral:3*cyclic:2,1".
GroupSpec parse_family(std::string_view text);

/// Regular representation of a group given by its multiplication on [0, n).
/// Generator g maps x to x*g.
template <class Mul>
GroupSpec regular_spec(std::string name, std::size_t n, std::span<const std::uint32_t> gens, Mul&& mul) {
  GroupSpec spec;
  spec.name = std::move(name);
  spec.degree = n;
  for (auto g : gens) {
    Permutation perm;
    perm.images.resize(n);
    for (std::uint32_t x = 0; x < n; ++x) perm.images[x] = static_cast<std::uint32_t>(mul(x, g));
    spec.generators.push_back(std::move(perm));
  }
  return spec;
}

}  // namespace plat
