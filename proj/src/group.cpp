#include "plat/group.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "plat/error.hpp"

namespace plat {

namespace {

struct ImagesHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// Smallest prime factor and whether n is a power of it.
std::pair<unsigned, bool> prime_power_base(std::size_t n) {
  for (std::size_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      while (n % q == 0) n /= q;
      return {static_cast<unsigned>(q), n == 1};
    }
  }
  return {static_cast<unsigned>(n), true};
}

}  // namespace

bool Permutation::is_bijection() const {
  std::vector<bool> seen(images.size(), false);
  for (auto x : images) {
    if (x >= images.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

Permutation Permutation::identity(std::size_t degree) {
  Permutation p;
  p.images.resize(degree);
  std::iota(p.images.begin(), p.images.end(), 0u);
  return p;
}

Permutation Permutation::then(const Permutation& next) const {
  Permutation out;
  out.images.resize(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) out.images[i] = next.images[images[i]];
  return out;
}

Permutation from_cycles(std::size_t degree, const std::vector<std::vector<std::uint32_t>>& cycles) {
  Permutation p = Permutation::identity(degree);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      if (cyc[i] >= degree) throw Error(Errc::InvalidPermutation, "cycle point out of range");
      p.images[cyc[i]] = cyc[(i + 1) % cyc.size()];
    }
  }
  if (!p.is_bijection()) throw Error(Errc::InvalidPermutation, "cycles are not disjoint");
  return p;
}

std::size_t Group::exponent() const noexcept {
  std::size_t e = 1;
  for (unsigned i = 0; i < exponent_exp_; ++i) e *= p_;
  return e;
}

Elem Group::pow(Elem x, std::uint64_t k) const noexcept {
  Elem result = 0;
  Elem base = x;
  while (k) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

unsigned Group::log_p(std::size_t value) const {
  unsigned k = 0;
  std::size_t v = 1;
  while (v < value) {
    v *= p_;
    ++k;
  }
  if (v != value) throw Error(Errc::BadParams, std::to_string(value) + " is not a power of " + std::to_string(p_));
  return k;
}

Group build_group(const GroupSpec& spec, const BuildOptions& opts) {
  for (const auto& gen : spec.generators) {
    if (gen.degree() != spec.degree)
      throw Error(Errc::InvalidPermutation, spec.name + ": generator degree differs from declared degree");
    if (!gen.is_bijection()) throw Error(Errc::InvalidPermutation, spec.name + ": generator is not a bijection");
  }

  // Breadth-first closure under right multiplication by the generators.
  std::vector<Permutation> perms{Permutation::identity(spec.degree)};
  std::unordered_map<std::vector<std::uint32_t>, Elem, ImagesHash> index;
  index.emplace(perms[0].images, 0);
  for (std::size_t head = 0; head < perms.size(); ++head) {
    for (const auto& gen : spec.generators) {
      Permutation next = perms[head].then(gen);
      if (index.contains(next.images)) continue;
      if (perms.size() >= opts.order_cap)
        throw Error(Errc::OrderCapExceeded,
                    spec.name + ": closure exceeds order cap " + std::to_string(opts.order_cap));
      index.emplace(next.images, static_cast<Elem>(perms.size()));
      perms.push_back(std::move(next));
    }
  }

  const std::size_t n = perms.size();
  unsigned p = opts.trivial_prime;
  if (n > 1) {
    auto [q, is_power] = prime_power_base(n);
    if (!is_power) throw Error(Errc::NotPGroup, spec.name + ": order " + std::to_string(n) + " is not a prime power");
    p = q;
  }

  // Raw table in first-seen numbering.
  std::vector<Elem> raw(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) raw[i * n + j] = index.at(perms[i].then(perms[j]).images);

  std::vector<std::size_t> raw_order(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    Elem x = static_cast<Elem>(i);
    while (x != 0) {
      x = raw[x * n + i];
      ++raw_order[i];
    }
    if (i == 0) raw_order[i] = 1;
  }

  // Renumber by (order, first-seen).
  std::vector<Elem> by_rank(n);
  std::iota(by_rank.begin(), by_rank.end(), 0u);
  std::stable_sort(by_rank.begin(), by_rank.end(),
                   [&](Elem a, Elem b) { return raw_order[a] < raw_order[b]; });
  std::vector<Elem> new_index(n);
  for (std::size_t r = 0; r < n; ++r) new_index[by_rank[r]] = static_cast<Elem>(r);

  Group g;
  g.name_ = spec.name;
  g.n_ = n;
  g.p_ = p;
  g.table_.resize(n * n);
  g.inverse_.resize(n);
  g.element_order_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      g.table_[new_index[i] * n + new_index[j]] = new_index[raw[i * n + j]];
    g.element_order_[new_index[i]] = raw_order[i];
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (g.table_[x * n + y] == 0) {
        g.inverse_[x] = static_cast<Elem>(y);
        break;
      }

  // Group axioms, checked once.
  for (std::size_t x = 0; x < n; ++x) {
    if (g.table_[x] != x || g.table_[x * n] != x)
      throw Error(Errc::InvalidPermutation, spec.name + ": identity law fails on table");
    if (g.table_[x * n + g.inverse_[x]] != 0 || g.table_[g.inverse_[x] * n + x] != 0)
      throw Error(Errc::InvalidPermutation, spec.name + ": inverse law fails on table");
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t xy = g.table_[x * n + y];
      for (std::size_t z = 0; z < n; ++z)
        if (g.table_[xy * n + z] != g.table_[x * n + g.table_[y * n + z]])
          throw Error(Errc::InvalidPermutation, spec.name + ": associativity fails on table");
    }

  g.log_order_ = g.log_p(n);
  std::size_t max_order = 1;
  for (auto o : g.element_order_) max_order = std::max(max_order, o);
  g.exponent_exp_ = g.log_p(max_order);

  for (const auto& gen : spec.generators) {
    const Elem e = new_index[index.at(gen.images)];
    if (e != 0 && std::find(g.generators_.begin(), g.generators_.end(), e) == g.generators_.end())
      g.generators_.push_back(e);
  }
  return g;
}

ElementSet closure_with(const Group& g, const ElementSet& base, std::span<const Elem> base_gens, Elem x) {
  if (base.test(x)) return base;
  ElementSet result = base;
  std::vector<Elem> gens(base_gens.begin(), base_gens.end());
  gens.push_back(x);
  const std::vector<Elem> base_elems = base.elements();
  // result is a union of right cosets base*r, closed under right multiplication by gens.
  std::vector<Elem> reps{g.identity()};
  for (std::size_t head = 0; head < reps.size(); ++head) {
    for (Elem gen : gens) {
      const Elem y = g.mul(reps[head], gen);
      if (result.test(y)) continue;
      for (Elem s : base_elems) result.set(g.mul(s, y));
      reps.push_back(y);
    }
  }
  return result;
}

ElementSet closure(const Group& g, const ElementSet& seed) {
  ElementSet current = ElementSet::singleton(g.order(), g.identity());
  std::vector<Elem> gens;
  seed.for_each([&](Elem x) {
    if (current.test(x)) return;
    current = closure_with(g, current, gens, x);
    gens.push_back(x);
  });
  return current;
}

bool is_subgroup(const Group& g, const ElementSet& s) {
  if (s.size() != g.order() || !s.test(g.identity())) return false;
  const auto elems = s.elements();
  for (Elem x : elems)
    for (Elem y : elems)
      if (!s.test(g.mul(x, y))) return false;
  return true;
}

std::vector<Elem> generators_of(const Group& g, const ElementSet& subgroup) {
  auto elems = subgroup.elements();
  // Largest element orders first tends to give short generating lists.
  std::stable_sort(elems.begin(), elems.end(),
                   [&](Elem a, Elem b) { return g.element_order(a) > g.element_order(b); });
  ElementSet current = ElementSet::singleton(g.order(), g.identity());
  std::vector<Elem> gens;
  for (Elem x : elems) {
    if (current.test(x)) continue;
    current = closure_with(g, current, gens, x);
    gens.push_back(x);
  }
  return gens;
}

namespace {

void require_subgroup(const Group& g, const ElementSet& s) {
  if (!is_subgroup(g, s)) throw Error(Errc::NotASubgroup, "element set is not a subgroup of " + g.name());
}

}  // namespace

OmegaResult omega(const Group& g, const ElementSet& region, unsigned i) {
  require_subgroup(g, region);
  std::size_t bound = 1;
  for (unsigned k = 0; k < i && bound <= g.order(); ++k) bound *= g.prime();
  ElementSet raw(g.order());
  region.for_each([&](Elem x) {
    if (bound % g.element_order(x) == 0) raw.set(x);
  });
  OmegaResult out;
  out.subgroup = closure(g, raw);
  out.raw_closed = out.subgroup == raw;
  return out;
}

ElementSet commutator_subgroup(const Group& g, const ElementSet& a, const ElementSet& b) {
  ElementSet comms(g.order());
  const auto bs = b.elements();
  a.for_each([&](Elem x) {
    for (Elem y : bs) comms.set(g.commutator(x, y));
  });
  return closure(g, comms);
}

unsigned exponent_exp_of(const Group& g, const ElementSet& region) {
  std::size_t max_order = 1;
  region.for_each([&](Elem x) { max_order = std::max(max_order, g.element_order(x)); });
  return g.log_p(max_order);
}

CharacteristicData characteristic_data(const Group& g, const ElementSet& region) {
  require_subgroup(g, region);
  CharacteristicData out;
  const auto gens = generators_of(g, region);
  out.center = ElementSet(g.order());
  region.for_each([&](Elem x) {
    for (Elem t : gens)
      if (g.mul(x, t) != g.mul(t, x)) return;
    out.center.set(x);
  });
  out.derived = commutator_subgroup(g, region, region);
  ElementSet seed = out.derived;
  region.for_each([&](Elem x) { seed.set(g.pow(x, g.prime())); });
  out.frattini = closure(g, seed);
  out.rank_d = g.log_p(region.count() / out.frattini.count());
  out.exponent_exp = exponent_exp_of(g, region);
  return out;
}

ElementSet centralizer(const Group& g, const ElementSet& target) {
  const auto ts = target.elements();
  ElementSet out(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) {
    const Elem x = static_cast<Elem>(i);
    bool central = true;
    for (Elem t : ts)
      if (g.mul(x, t) != g.mul(t, x)) {
        central = false;
        break;
      }
    if (central) out.set(x);
  }
  return out;
}

ElementSet normalizer(const Group& g, const ElementSet& target) {
  require_subgroup(g, target);
  const auto gens = generators_of(g, target);
  ElementSet out(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) {
    const Elem x = static_cast<Elem>(i);
    bool normalizes = true;
    for (Elem h : gens)
      if (!target.test(g.conj(h, x))) {
        normalizes = false;
        break;
      }
    if (normalizes) out.set(x);
  }
  return out;
}

}  // namespace plat
