#include "plat/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "plat/error.hpp"

namespace plat {

namespace {

struct RawNode {
  ElementSet set;
  std::vector<Elem> gens;
};

void require_leq(const SubgroupLattice& lat, SubgroupId h, SubgroupId k) {
  if (h >= lat.size() || k >= lat.size() || !lat.leq(h, k))
    throw Error(Errc::NotComparable, "subgroup " + std::to_string(h) + " is not contained in " + std::to_string(k));
}

std::int64_t signed_mobius_value(unsigned p, unsigned r) {
  std::int64_t v = 1;
  for (unsigned i = 0; i < r * (r - 1) / 2; ++i) v *= p;
  return (r % 2 == 0) ? v : -v;
}

}  // namespace

std::optional<SubgroupId> SubgroupLattice::find(const ElementSet& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> SubgroupLattice::level_counts() const {
  std::vector<std::size_t> counts(group_->log_order() + 1, 0);
  for (auto k : log_order_) ++counts[k];
  return counts;
}

SubgroupLattice enumerate_lattice(Group g, const LatticeOptions& opts) {
  return enumerate_lattice(std::make_shared<const Group>(std::move(g)), opts);
}

SubgroupLattice enumerate_lattice(std::shared_ptr<const Group> gp, const LatticeOptions& opts) {
  const Group& g = *gp;
  const std::size_t n = g.order();

  std::vector<RawNode> raw;
  std::unordered_map<ElementSet, SubgroupId, ElementSetHash> seen;
  raw.push_back({ElementSet::singleton(n, g.identity()), {}});
  seen.emplace(raw[0].set, 0);

  for (std::size_t head = 0; head < raw.size(); ++head) {
    // <S, x> depends only on the coset xS.
    ElementSet done = raw[head].set;
    const std::vector<Elem> s_elems = raw[head].set.elements();
    for (std::size_t xi = 0; xi < n; ++xi) {
      const Elem x = static_cast<Elem>(xi);
      if (done.test(x)) continue;
      for (Elem s : s_elems) done.set(g.mul(x, s));
      ElementSet t = closure_with(g, raw[head].set, raw[head].gens, x);
      if (seen.contains(t)) continue;
      if (raw.size() >= opts.node_cap)
        throw Error(Errc::LatticeCapExceeded,
                    g.name() + ": more than " + std::to_string(opts.node_cap) + " subgroups");
      std::vector<Elem> gens = raw[head].gens;
      gens.push_back(x);
      seen.emplace(t, static_cast<SubgroupId>(raw.size()));
      raw.push_back({std::move(t), std::move(gens)});
    }
  }

  std::vector<std::size_t> perm(raw.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::size_t> counts(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) counts[i] = raw[i].set.count();
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (counts[a] != counts[b]) return counts[a] < counts[b];
    return canonical_less(raw[a].set, raw[b].set);
  });

  SubgroupLattice lat;
  lat.group_ = gp;
  const std::size_t N = raw.size();
  lat.nodes_.reserve(N);
  lat.gens_.reserve(N);
  lat.log_order_.reserve(N);
  for (std::size_t i = 0; i < N; ++i) {
    lat.nodes_.push_back(std::move(raw[perm[i]].set));
    lat.gens_.push_back(std::move(raw[perm[i]].gens));
    lat.log_order_.push_back(g.log_p(lat.nodes_.back().count()));
    lat.index_.emplace(lat.nodes_.back(), static_cast<SubgroupId>(i));
  }

  // Containment: supersets of node i have order >= |i|, hence id >= i.
  lat.above_.assign(N, {});
  for (std::size_t i = 0; i < N; ++i) {
    lat.above_[i].push_back(static_cast<SubgroupId>(i));
    for (std::size_t j = i + 1; j < N; ++j)
      if (lat.log_order_[j] > lat.log_order_[i] && lat.nodes_[i].subset_of(lat.nodes_[j]))
        lat.above_[i].push_back(static_cast<SubgroupId>(j));
  }

  // Covers: K in above(H) is minimal iff it contains no cover found earlier.
  lat.hasse_up_.assign(N, {});
  lat.hasse_down_.assign(N, {});
  for (std::size_t i = 0; i < N; ++i) {
    auto& covers = lat.hasse_up_[i];
    for (std::size_t a = 1; a < lat.above_[i].size(); ++a) {
      const SubgroupId k = lat.above_[i][a];
      const bool dominated = std::any_of(covers.begin(), covers.end(),
                                         [&](SubgroupId c) { return lat.nodes_[c].subset_of(lat.nodes_[k]); });
      if (!dominated) covers.push_back(k);
    }
    for (SubgroupId k : covers) lat.hasse_down_[k].push_back(static_cast<SubgroupId>(i));
  }

  // Normality: conjugation by each group generator fixes H setwise.
  lat.normal_.assign(N, true);
  for (std::size_t i = 0; i < N; ++i) {
    for (Elem x : g.generators()) {
      for (Elem h : lat.gens_[i])
        if (!lat.nodes_[i].test(g.conj(h, x))) {
          lat.normal_[i] = false;
          break;
        }
      if (!lat.normal_[i]) break;
    }
  }

  // Conjugacy classes as orbits under the generators.
  constexpr std::uint32_t unset = ~std::uint32_t{0};
  lat.conj_class_.assign(N, unset);
  std::uint32_t next_class = 0;
  for (std::size_t i = 0; i < N; ++i) {
    if (lat.conj_class_[i] != unset) continue;
    std::vector<SubgroupId> orbit{static_cast<SubgroupId>(i)};
    lat.conj_class_[i] = next_class;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      const ElementSet& h = lat.nodes_[orbit[head]];
      for (Elem x : g.generators()) {
        ElementSet image(n);
        h.for_each([&](Elem y) { image.set(g.conj(y, x)); });
        const SubgroupId j = lat.index_.at(image);
        if (lat.conj_class_[j] == unset) {
          lat.conj_class_[j] = next_class;
          orbit.push_back(j);
        }
      }
    }
    ++next_class;
  }
  lat.class_count_ = next_class;
  return lat;
}

std::vector<SubgroupId> subgroups_between(const SubgroupLattice& lat, SubgroupId h, std::size_t order_pk) {
  const Group& g = lat.group();
  unsigned k = 0;
  try {
    k = g.log_p(order_pk);
  } catch (const Error&) {
    throw Error(Errc::BadLevel, std::to_string(order_pk) + " is not a power of " + std::to_string(g.prime()));
  }
  if (k < lat.log_order(h) || k > g.log_order())
    throw Error(Errc::BadLevel, "level " + std::to_string(order_pk) + " outside [|H|, |G|]");
  std::vector<SubgroupId> out;
  for (SubgroupId id : lat.above(h))
    if (lat.log_order(id) == k) out.push_back(id);
  return out;
}

Interval interval(const SubgroupLattice& lat, SubgroupId h, SubgroupId k) {
  require_leq(lat, h, k);
  Interval iv{h, k, {}};
  for (SubgroupId l : lat.above(h))
    if (lat.leq(l, k)) iv.members.push_back(l);
  return iv;
}

std::int64_t mobius_formula(const SubgroupLattice& lat, SubgroupId h, SubgroupId k) {
  require_leq(lat, h, k);
  if (h == k) return 1;
  const Group& g = lat.group();
  const ElementSet& hs = lat.members(h);
  const ElementSet& ks = lat.members(k);
  const auto k_gens = lat.generators(k);
  const auto h_gens = lat.generators(h);

  for (Elem x : k_gens)
    for (Elem y : h_gens)
      if (!hs.test(g.conj(y, x))) return 0;
  bool powers_in_h = true;
  ks.for_each([&](Elem x) {
    if (!hs.test(g.pow(x, g.prime()))) powers_in_h = false;
  });
  if (!powers_in_h) return 0;
  // With H normal in K, K/H is abelian iff generator commutators land in H.
  for (std::size_t a = 0; a < k_gens.size(); ++a)
    for (std::size_t b = a + 1; b < k_gens.size(); ++b)
      if (!hs.test(g.commutator(k_gens[a], k_gens[b]))) return 0;

  const unsigned r = lat.log_order(k) - lat.log_order(h);
  return signed_mobius_value(g.prime(), r);
}

std::vector<std::int64_t> mobius_row_recursive(const SubgroupLattice& lat, SubgroupId h) {
  const auto up = lat.above(h);
  std::vector<std::int64_t> acc(lat.size(), 0);
  std::vector<std::int64_t> row;
  row.reserve(up.size());
  for (SubgroupId k : up) {
    const std::int64_t mu = (k == h) ? 1 : -acc[k];
    row.push_back(mu);
    if (mu == 0) continue;
    const auto k_up = lat.above(k);
    for (std::size_t i = 1; i < k_up.size(); ++i) acc[k_up[i]] += mu;
  }
  return row;
}

std::vector<std::int64_t> mobius_row_formula(const SubgroupLattice& lat, SubgroupId h) {
  std::vector<std::int64_t> row;
  for (SubgroupId k : lat.above(h)) row.push_back(mobius_formula(lat, h, k));
  return row;
}

std::int64_t mobius_recursive(const SubgroupLattice& lat, SubgroupId h, SubgroupId k) {
  require_leq(lat, h, k);
  const auto up = lat.above(h);
  const auto row = mobius_row_recursive(lat, h);
  const auto pos = std::lower_bound(up.begin(), up.end(), k) - up.begin();
  return row[static_cast<std::size_t>(pos)];
}

std::vector<SubgroupId> conjugates(const SubgroupLattice& lat, SubgroupId h) {
  std::vector<SubgroupId> out;
  const auto c = lat.conj_class(h);
  for (SubgroupId i = 0; i < lat.size(); ++i)
    if (lat.conj_class(i) == c) out.push_back(i);
  return out;
}

void export_lattice(std::ostream& out, const SubgroupLattice& lat) {
  const Group& g = lat.group();
  out << "# lattice " << g.name() << " order=" << g.order() << " p=" << g.prime() << " nodes=" << lat.size()
      << " classes=" << lat.conj_class_count() << '\n';
  out << "# id order bits normal class hasse_up\n";
  for (SubgroupId i = 0; i < lat.size(); ++i) {
    out << i << ' ' << lat.order(i) << ' ' << lat.members(i).to_hex() << ' ' << (lat.is_normal(i) ? 1 : 0) << ' '
        << lat.conj_class(i) << ' ';
    const auto up = lat.hasse_up(i);
    if (up.empty()) out << '-';
    for (std::size_t j = 0; j < up.size(); ++j) out << (j ? "," : "") << up[j];
    out << '\n';
  }
  const auto levels = lat.level_counts();
  out << "# levels";
  for (auto c : levels) out << ' ' << c;
  out << '\n';
}

}  // namespace plat
