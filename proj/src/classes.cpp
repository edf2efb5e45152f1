#include "plat/classes.hpp"

#include <charconv>

#include "plat/error.hpp"

namespace plat {

namespace {

bool gens_commute(const Group& g, std::span<const Elem> gens) {
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a + 1; b < gens.size(); ++b)
      if (g.mul(gens[a], gens[b]) != g.mul(gens[b], gens[a])) return false;
  return true;
}

bool is_cyclic(const Group& g, const ElementSet& sub) {
  const std::size_t n = sub.count();
  bool found = false;
  sub.for_each([&](Elem x) { found = found || g.element_order(x) == n; });
  return found;
}

int parse_int(std::string_view s, std::string_view token) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(Errc::BadParam, "bad class parameter in '" + std::string(token) + "'");
  return v;
}

void need_nonnegative(int v, std::string_view what) {
  if (v < 0) throw Error(Errc::BadParam, std::string(what) + " parameter must be nonnegative");
}

SubgroupPredicate custom_predicate(std::string_view name) {
  if (name == "bad" || name == "order-p2")
    return [](const Group& g, const ElementSet& s) {
      return s.count() == static_cast<std::size_t>(g.prime()) * g.prime();
    };
  if (name == "order-at-most-p2")
    return [](const Group& g, const ElementSet& s) {
      return s.count() <= static_cast<std::size_t>(g.prime()) * g.prime();
    };
  if (name == "exp-div-p2")
    return [](const Group& g, const ElementSet& s) { return exponent_exp_of(g, s) <= 2; };
  throw Error(Errc::BadParam, "unknown custom class '" + std::string(name) + "'");
}

}  // namespace

ClassSpec ClassSpec::abelian() { return {ClassKind::Abelian, std::nullopt, "abelian", {}}; }
ClassSpec ClassSpec::abelian_exp_div(int k) {
  need_nonnegative(k, "abelian-exp");
  return {ClassKind::AbelianExpDiv, k, "abelian-exp:" + std::to_string(k), {}};
}
ClassSpec ClassSpec::elementary_abelian() {
  return {ClassKind::ElementaryAbelian, std::nullopt, "elementary-abelian", {}};
}
ClassSpec ClassSpec::exp_div(int k) {
  need_nonnegative(k, "exp");
  return {ClassKind::ExpDiv, k, "exp:" + std::to_string(k), {}};
}
ClassSpec ClassSpec::cyclic() { return {ClassKind::Cyclic, std::nullopt, "cyclic", {}}; }
ClassSpec ClassSpec::nilpotency_class_at_most(int c) {
  need_nonnegative(c, "nilclass");
  return {ClassKind::NilpotencyClassAtMost, c, "nilclass:" + std::to_string(c), {}};
}
ClassSpec ClassSpec::derived_length_at_most(int d) {
  need_nonnegative(d, "derived");
  return {ClassKind::DerivedLengthAtMost, d, "derived:" + std::to_string(d), {}};
}
ClassSpec ClassSpec::make_custom(std::string label, SubgroupPredicate pred) {
  return {ClassKind::Custom, std::nullopt, std::move(label), std::move(pred)};
}

ClassSpec parse_class(std::string_view token) {
  const std::size_t colon = token.find(':');
  const std::string_view head = token.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : token.substr(colon + 1);
  const auto need_arg = [&]() {
    if (arg.empty()) throw Error(Errc::BadParam, "class '" + std::string(head) + "' needs a parameter");
    return parse_int(arg, token);
  };
  const auto no_arg = [&]() {
    if (colon != std::string_view::npos)
      throw Error(Errc::BadParam, "class '" + std::string(head) + "' takes no parameter");
  };

  if (head == "abelian") return no_arg(), ClassSpec::abelian();
  if (head == "abelian-exp") return ClassSpec::abelian_exp_div(need_arg());
  if (head == "elementary-abelian" || head == "elementary_abelian") return no_arg(), ClassSpec::elementary_abelian();
  if (head == "exp") return ClassSpec::exp_div(need_arg());
  if (head == "cyclic") return no_arg(), ClassSpec::cyclic();
  if (head == "nilclass") return ClassSpec::nilpotency_class_at_most(need_arg());
  if (head == "derived") return ClassSpec::derived_length_at_most(need_arg());
  if (head == "custom") {
    if (arg.empty()) throw Error(Errc::BadParam, "custom class needs a name");
    return ClassSpec::make_custom("custom:" + std::string(arg), custom_predicate(arg));
  }
  throw Error(Errc::BadParam, "unknown class '" + std::string(token) + "'");
}

std::vector<ClassSpec> parse_class_suite(std::string_view text) {
  std::vector<ClassSpec> out;
  while (!text.empty()) {
    const std::size_t comma = text.find(',');
    const std::string_view tok = text.substr(0, comma);
    if (!tok.empty()) out.push_back(parse_class(tok));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

std::vector<std::string> custom_class_names() { return {"bad", "order-p2", "order-at-most-p2", "exp-div-p2"}; }

std::size_t ClassMembership::count() const {
  std::size_t c = 0;
  for (bool b : member) c += b ? 1 : 0;
  return c;
}

unsigned nilpotency_class(const Group& g, const ElementSet& sub) {
  unsigned c = 0;
  ElementSet term = sub;
  while (term.count() > 1) {
    term = commutator_subgroup(g, term, sub);
    ++c;
  }
  return c;
}

unsigned derived_length(const Group& g, const ElementSet& sub) {
  unsigned d = 0;
  ElementSet term = sub;
  while (term.count() > 1) {
    term = commutator_subgroup(g, term, term);
    ++d;
  }
  return d;
}

ClassMembership evaluate_class(const ClassSpec& spec, const SubgroupLattice& lat) {
  const Group& g = lat.group();
  if (spec.param && *spec.param < 0) throw Error(Errc::BadParam, spec.label + ": negative parameter");
  const auto param = [&]() -> unsigned {
    if (!spec.param) throw Error(Errc::BadParam, spec.label + ": missing parameter");
    return static_cast<unsigned>(*spec.param);
  };
  if (spec.kind == ClassKind::Custom && !spec.custom) throw Error(Errc::BadParam, spec.label + ": no predicate");

  ClassMembership m;
  m.lattice = &lat;
  m.label = spec.label;
  m.member.assign(lat.size(), false);
  for (SubgroupId h = 0; h < lat.size(); ++h) {
    const ElementSet& s = lat.members(h);
    const bool abelian = gens_commute(g, lat.generators(h));
    bool in = false;
    switch (spec.kind) {
      case ClassKind::Abelian: in = abelian; break;
      case ClassKind::AbelianExpDiv: in = abelian && exponent_exp_of(g, s) <= param(); break;
      case ClassKind::ElementaryAbelian: in = abelian && exponent_exp_of(g, s) <= 1; break;
      case ClassKind::ExpDiv: in = exponent_exp_of(g, s) <= param(); break;
      case ClassKind::Cyclic: in = is_cyclic(g, s); break;
      case ClassKind::NilpotencyClassAtMost: in = abelian ? param() >= (s.count() > 1 ? 1u : 0u)
                                                          : nilpotency_class(g, s) <= param();
        break;
      case ClassKind::DerivedLengthAtMost: in = abelian ? param() >= (s.count() > 1 ? 1u : 0u)
                                                        : derived_length(g, s) <= param();
        break;
      case ClassKind::Custom: in = spec.custom(g, s); break;
    }
    m.member[h] = in;
  }
  return m;
}

std::vector<std::pair<SubgroupId, SubgroupId>> validate_subgroup_closed(const ClassMembership& m) {
  std::vector<std::pair<SubgroupId, SubgroupId>> out;
  const SubgroupLattice& lat = *m.lattice;
  for (SubgroupId h = 0; h < lat.size(); ++h) {
    if (m.member[h]) continue;
    const auto up = lat.above(h);
    for (std::size_t i = 1; i < up.size(); ++i)
      if (m.member[up[i]]) out.emplace_back(h, up[i]);
  }
  return out;
}

}  // namespace plat
