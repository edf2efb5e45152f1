#include <doctest.h>

#include "oracle.hpp"
#include "plat/census.hpp"
#include "plat/classes.hpp"
#include "plat/corpus.hpp"
#include "plat/error.hpp"
#include "plat/families.hpp"

using namespace plat;

namespace {

struct Fixture {
  SubgroupLattice lat;
  explicit Fixture(std::string_view recipe) : lat(enumerate_lattice(build_group(parse_family(recipe)))) {}
  ClassIndex index(std::string_view cls) const { return ClassIndex(lat, evaluate_class(parse_class(cls), lat)); }
};

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::UsageError;
}

bool node_cyclic(const SubgroupLattice& lat, SubgroupId h) {
  for (Elem x : lat.members(h).elements())
    if (lat.group().element_order(x) == lat.order(h)) return true;
  return false;
}

SubgroupId center_of(const SubgroupLattice& lat) {
  return *lat.find(characteristic_data(lat.group(), lat.group().all()).center);
}

}  // namespace

TEST_CASE("class parsing") {
  CHECK(parse_class("abelian").kind == ClassKind::Abelian);
  CHECK(parse_class("abelian-exp:2").param == 2);
  CHECK(parse_class("abelian-exp:2").label == "abelian-exp:2");
  CHECK(parse_class("elementary-abelian").kind == ClassKind::ElementaryAbelian);
  CHECK(parse_class("exp:4").param == 4);
  CHECK(parse_class("cyclic").kind == ClassKind::Cyclic);
  CHECK(parse_class("nilclass:2").kind == ClassKind::NilpotencyClassAtMost);
  CHECK(parse_class("derived:1").kind == ClassKind::DerivedLengthAtMost);
  CHECK(parse_class("custom:bad").kind == ClassKind::Custom);
  const auto suite = parse_class_suite("abelian,abelian-exp:2,exp:4,cyclic,nilclass:2");
  REQUIRE(suite.size() == 5);
  CHECK(suite[2].label == "exp:4");
  for (auto bad : {"", "abelian:2", "exp", "exp:-1", "exp:x", "nilclass:-2", "custom:nope", "custom:", "foo"})
    CHECK_MESSAGE(code_of([&] { parse_class(bad); }) == Errc::BadParam, bad);
  CHECK(code_of([] { ClassSpec::exp_div(-1); }) == Errc::BadParam);
}

TEST_CASE("class membership on D8") {
  const Fixture d8("dihedral:3");
  CHECK(evaluate_class(ClassSpec::abelian(), d8.lat).count() == 9);
  CHECK(evaluate_class(ClassSpec::elementary_abelian(), d8.lat).count() == 8);
  CHECK(evaluate_class(ClassSpec::cyclic(), d8.lat).count() == 7);
  CHECK(evaluate_class(ClassSpec::exp_div(1), d8.lat).count() == 8);
  CHECK(evaluate_class(ClassSpec::nilpotency_class_at_most(1), d8.lat).count() == 9);
  CHECK(evaluate_class(ClassSpec::nilpotency_class_at_most(2), d8.lat).count() == 10);
  CHECK(evaluate_class(ClassSpec::derived_length_at_most(0), d8.lat).count() == 1);
  for (auto cls : {"abelian", "abelian-exp:0", "elementary-abelian", "exp:0", "cyclic", "nilclass:0", "derived:0"})
    CHECK(evaluate_class(parse_class(cls), d8.lat)[d8.lat.bottom()]);
  CHECK(nilpotency_class(d8.lat.group(), d8.lat.group().all()) == 2);
  CHECK(derived_length(d8.lat.group(), d8.lat.group().all()) == 2);
  CHECK(nilpotency_class(d8.lat.group(), d8.lat.members(0)) == 0);
  const Fixture w3("wreath:3");
  CHECK(nilpotency_class(w3.lat.group(), w3.lat.group().all()) == 3);
}

TEST_CASE("subgroup-closedness") {
  for (const auto& e : builtin_corpus(2, 16).entries) {
    const auto lat = enumerate_lattice(build_group(e.spec));
    for (auto cls : {"abelian", "abelian-exp:1", "abelian-exp:2", "elementary-abelian", "exp:2", "cyclic", "nilclass:1",
                     "derived:1", "custom:exp-div-p2", "custom:order-at-most-p2"})
      CHECK_MESSAGE(validate_subgroup_closed(evaluate_class(parse_class(cls), lat)).empty(), e.spec.name, " ", cls);
  }
  const Fixture c4("cyclic:2,2");
  const auto bad = validate_subgroup_closed(evaluate_class(parse_class("custom:bad"), c4.lat));
  CHECK(bad.size() == 2);  // both proper subgroups lie under the member C4
  for (auto [h, k] : bad) CHECK(k == c4.lat.top());

  const auto idx = c4.index("custom:order-p2");
  CHECK_FALSE(idx.subgroup_closed());
  CHECK(code_of([&] { check_condition(idx, Condition::A); }) == Errc::ClassNotSubgroupClosed);
}

TEST_CASE("class identities") {
  for (const auto& e : builtin_corpus(3, 81).entries) {
    const auto lat = enumerate_lattice(build_group(e.spec));
    const unsigned ex = lat.group().exponent_exp();
    CHECK(evaluate_class(ClassSpec::elementary_abelian(), lat).member ==
          evaluate_class(ClassSpec::abelian_exp_div(1), lat).member);
    CHECK(evaluate_class(ClassSpec::abelian(), lat).member ==
          evaluate_class(ClassSpec::abelian_exp_div(static_cast<int>(ex)), lat).member);
    CHECK(evaluate_class(ClassSpec::abelian(), lat).member ==
          evaluate_class(ClassSpec::nilpotency_class_at_most(1), lat).member);
  }
}

TEST_CASE("membership against naive predicates") {
  for (const auto& e : builtin_corpus(2, 16).entries) {
    CAPTURE(e.spec.name);
    const auto ng = oracle::naive_group(e.spec);
    const auto g = build_group(e.spec);
    const auto map = oracle::element_map(ng, g);
    const auto lat = enumerate_lattice(g);
    const auto ab = evaluate_class(ClassSpec::abelian(), lat);
    const auto cy = evaluate_class(ClassSpec::cyclic(), lat);
    const auto e2 = evaluate_class(ClassSpec::exp_div(2), lat);
    for (const auto& s : oracle::subgroups_by_subsets(ng)) {
      const auto id = *lat.find(oracle::to_library(s, map, g.order()));
      CHECK(ab[id] == oracle::is_abelian(ng, s));
      CHECK(cy[id] == oracle::is_cyclic(ng, s));
      CHECK(e2[id] == (oracle::exponent(ng, s) <= 4));
    }
  }
}

TEST_CASE("census values on D8") {
  const Fixture d8("dihedral:3");
  const auto ab = d8.index("abelian");
  auto cv = census(ab, d8.lat.bottom());
  CHECK(cv.a == 5);
  CHECK(cv.b == 3);
  CHECK(cv.c(2) == 3);
  CHECK(cv.c(0) == 1);
  CHECK(cv.sup_log == 2);
  REQUIRE(cv.nsup_log.has_value());
  CHECK(*cv.nsup_log == 2);

  const auto ea = d8.index("elementary-abelian");
  cv = census(ea, d8.lat.bottom());
  CHECK(cv.b == 2);
  CHECK(cv.a == 5);
  CHECK(code_of([&] { census(ab, d8.lat.top()); }) == Errc::NotInClass);

  const Fixture c8("cyclic:2,3");
  const auto top = census(c8.index("abelian"), c8.lat.top());
  CHECK(top.a == 0);
  CHECK(top.b == 1);
  CHECK(top.sup_log == 3);
}

TEST_CASE("census against the naive definitions") {
  std::vector<GroupSpec> specs;
  for (const auto& e : builtin_corpus(2, 16).entries) specs.push_back(e.spec);
  for (const auto& e : builtin_corpus(3, 27).entries) specs.push_back(e.spec);
  for (const auto& spec : specs) {
    CAPTURE(spec.name);
    const auto ng = oracle::naive_group(spec);
    const auto g = build_group(spec);
    const auto map = oracle::element_map(ng, g);
    const auto lat = enumerate_lattice(g);
    const auto subs = ng.order() <= 16 ? oracle::subgroups_by_subsets(ng) : oracle::subgroups_by_joins(ng);
    for (std::string_view cls : {"abelian", "elementary-abelian", "cyclic"}) {
      CAPTURE(cls);
      const auto idx = ClassIndex(lat, evaluate_class(parse_class(cls), lat));
      const bool t2a = check_condition(idx, Condition::T2a).holds;
      std::vector<oracle::Sub> members;
      for (const auto& s : subs) {
        const bool in = cls == "abelian"  ? oracle::is_abelian(ng, s)
                        : cls == "cyclic" ? oracle::is_cyclic(ng, s)
                                          : oracle::is_abelian(ng, s) && oracle::exponent(ng, s) <= g.prime();
        if (in) members.push_back(s);
      }
      REQUIRE(members.size() == idx.membership().count());
      for (const auto& h : members) {
        const auto id = *lat.find(oracle::to_library(h, map, g.order()));
        const auto want = oracle::naive_census(members, h);
        const auto got = census(idx, id);
        CHECK(got.a == want.a);
        CHECK(got.b == want.b);
        std::size_t sup = 1;
        for (unsigned i = 0; i < got.sup_log; ++i) sup *= g.prime();
        CHECK(sup == want.sup);
        for (const auto& [order, count] : want.c) CHECK(got.c(g.log_p(order)) == count);
        // internal invariants
        const unsigned m = lat.log_order(id);
        CHECK(got.c(m) == 1);
        CHECK(got.a == got.c(m + 1));
        // needs every maximal normal member to be maximal; see the D16 case below
        if (got.nsup_log && t2a) CHECK(got.sup_log <= *got.nsup_log);
      }
    }
  }
}

TEST_CASE("sup can exceed nsup when a maximal normal member is not maximal") {
  const Fixture d16("dihedral:4");
  const auto ea = d16.index("elementary-abelian");
  const auto z = center_of(d16.lat);
  CHECK(ea.maximal_normal(z));
  CHECK_FALSE(ea.maximal(z));
  const auto cv = census(ea, z);
  REQUIRE(cv.nsup_log.has_value());
  CHECK(*cv.nsup_log == 1);
  CHECK(cv.sup_log == 2);
  CHECK_FALSE(check_condition(ea, Condition::T2a).holds);
}

TEST_CASE("conditions on small groups") {
  const Fixture d8("dihedral:3");
  const auto ab = d8.index("abelian");
  CHECK(check_condition(ab, Condition::B).holds);

  const auto ea = d8.index("elementary-abelian");
  const auto b = check_condition(ea, Condition::B);
  CHECK_FALSE(b.holds);
  REQUIRE_FALSE(b.witnesses.empty());
  CHECK(b.witnesses.front().subgroup == d8.lat.bottom());
  CHECK(b.witnesses.front().observed == 2);

  const Fixture c4("cyclic:2,2");
  CHECK(check_condition(c4.index("elementary-abelian"), Condition::A).holds);

  for (auto c : {Condition::A, Condition::B, Condition::C, Condition::T2a, Condition::T2b}) {
    const auto r = check_condition(ab, c);
    CHECK(r.holds == r.witnesses.empty());
  }
}

TEST_CASE("theorem verdicts") {
  const Fixture d8("dihedral:3");
  auto a = verify_theorem_A(d8.index("abelian"));
  CHECK((a.a.holds && a.b.holds && a.c.holds));
  CHECK(a.equivalent);
  a = verify_theorem_A(d8.index("elementary-abelian"));
  CHECK((!a.a.holds && !a.b.holds && !a.c.holds));
  CHECK(a.equivalent);

  auto b = verify_theorem_B(d8.index("abelian"));
  CHECK(b.lhs_holds);
  CHECK(b.rhs_holds);
  CHECK(b.equivalent);
  b = verify_theorem_B(d8.index("elementary-abelian"));
  CHECK_FALSE(b.lhs_holds);
  CHECK_FALSE(b.rhs_holds);
  CHECK((!b.t2a.holds || !b.t2b.holds));
  CHECK(b.equivalent);

  const Fixture trivial("cyclic:2,0");
  for (auto cls : {"abelian", "cyclic", "elementary-abelian", "exp:1"}) {
    const auto v = verify_theorem_A(trivial.index(cls));
    CHECK((v.a.holds && v.b.holds && v.c.holds));
  }
  for (auto p : {"cyclic:2,1", "cyclic:3,1", "cyclic:5,1"}) {
    const Fixture cp(p);
    for (auto cls : {"abelian", "cyclic", "elementary-abelian", "exp:1", "nilclass:1"}) {
      const auto v = verify_theorem_B(cp.index(cls));
      CHECK(v.lhs_holds);
      CHECK(v.rhs_holds);
    }
  }
}

TEST_CASE("mobius inversion identity") {
  const Fixture c4("cyclic:2,2");
  const auto idx = c4.index("abelian");
  const auto v = check_mobius_inversion_identity(idx);
  CHECK(v.holds);
  CHECK(v.subgroups_checked == 3);
  // 1*b(1) - 1*b(C2) + 0*b(C4) = 0 = delta(1)
  CHECK(idx.maximal_above(0) == 1);
  CHECK_FALSE(idx.maximal(0));
  CHECK(idx.maximal(c4.lat.top()));

  const Fixture d8("dihedral:3");
  const auto dv = check_mobius_inversion_identity(d8.index("abelian"));
  CHECK(dv.holds);
  CHECK(dv.identity_failures.empty());
  CHECK(dv.congruence_failures.empty());
  // failing classes satisfy the identity too; only the congruences of b change
  CHECK(check_mobius_inversion_identity(d8.index("elementary-abelian")).holds);
}

TEST_CASE("double counting") {
  const Fixture d8("dihedral:3");
  const auto ab = d8.index("abelian");
  auto v = check_double_counting(ab, d8.lat.bottom(), 1);
  CHECK(v.holds);
  CHECK(v.lhs == v.rhs);
  v = check_double_counting(ab, d8.lat.bottom(), 0);
  CHECK(v.lhs == ab.maximal_above(0));
  CHECK(v.rhs == ab.maximal_above(0));

  const Fixture q8("quaternion:3");
  const auto qa = q8.index("abelian");
  v = check_double_counting(qa, center_of(q8.lat), 2);
  CHECK(v.lhs == 3);
  CHECK(v.rhs == 3);
  CHECK(v.holds);

  CHECK(code_of([&] { check_double_counting(ab, d8.lat.top(), 3); }) == Errc::NotInClass);
  SubgroupId c4 = 0;
  for (SubgroupId h = 0; h < d8.lat.size(); ++h)
    if (d8.lat.order(h) == 4 && node_cyclic(d8.lat, h)) c4 = h;
  CHECK(code_of([&] { check_double_counting(ab, c4, 2); }) == Errc::IsMaximal);
  CHECK(code_of([&] { check_double_counting(ab, 0, 4); }) == Errc::BadLevel);
  CHECK(code_of([&] { check_double_counting(ab, center_of(d8.lat), 0); }) == Errc::BadLevel);
}

TEST_CASE("remarks") {
  const Fixture d8("dihedral:3");
  const auto r = remark_invariants(d8.index("abelian"));
  CHECK(r.holds);
  CHECK(r.subgroups_checked == 9);

  const Fixture q8("quaternion:3");
  const auto cy = q8.index("cyclic");
  const auto cv = census(cy, center_of(q8.lat));
  CHECK(cv.a == 3);
  CHECK(cv.c(2) == 3);
  CHECK(remark_invariants(cy).holds);
}
