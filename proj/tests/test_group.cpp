#include <doctest.h>

#include <sstream>

#include "oracle.hpp"
#include "plat/error.hpp"
#include "plat/families.hpp"
#include "plat/group.hpp"
#include "plat/spec_io.hpp"

using namespace plat;

namespace {

Group make(std::string_view recipe) { return build_group(parse_family(recipe)); }

std::map<std::size_t, std::size_t> order_histogram(const Group& g) {
  std::map<std::size_t, std::size_t> h;
  for (Elem x = 0; x < g.order(); ++x) ++h[g.element_order(x)];
  return h;
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::UsageError;
}

ElementSet set_of(const Group& g, std::initializer_list<Elem> xs) {
  ElementSet s = g.empty_set();
  for (auto x : xs) s.set(x);
  return s;
}

}  // namespace

TEST_CASE("build_group from explicit generators") {
  SUBCASE("a 4-cycle gives C4") {
    const Group g = build_group({"C4", 4, {from_cycles(4, {{0, 1, 2, 3}})}});
    CHECK(g.order() == 4);
    CHECK(g.prime() == 2);
    CHECK(g.log_order() == 2);
    CHECK(g.exponent_exp() == 2);
  }
  SUBCASE("4-cycle and a reflection give D8 with exponent 4") {
    const Group g = build_group({"D8", 4, {from_cycles(4, {{0, 1, 2, 3}}), from_cycles(4, {{1, 3}})}});
    CHECK(g.order() == 8);
    CHECK(g.exponent() == 4);
    CHECK(g.exponent_exp() == 2);
    // independent closure agrees on the order
    CHECK(oracle::naive_group({"D8", 4, {from_cycles(4, {{0, 1, 2, 3}}), from_cycles(4, {{1, 3}})}}).order() == 8);
  }
  SUBCASE("mixed primes are rejected") {
    CHECK(code_of([] { build_group({"S3xC2", 5, {from_cycles(5, {{0, 1, 2}}), from_cycles(5, {{3, 4}})}}); }) ==
          Errc::NotPGroup);
  }
  SUBCASE("non-bijective images are rejected") {
    CHECK(code_of([] { build_group({"bad", 3, {Permutation{{0, 0, 1}}}}); }) == Errc::InvalidPermutation);
    CHECK(code_of([] { build_group({"bad", 3, {Permutation{{0, 1}}}}); }) == Errc::InvalidPermutation);
  }
  SUBCASE("order cap") {
    CHECK(code_of([] { build_group(parse_family("quaternion:9")); }) == Errc::OrderCapExceeded);
    CHECK(code_of([] { build_group(parse_family("cyclic:2,4"), {8, 2}); }) == Errc::OrderCapExceeded);
    CHECK(build_group(parse_family("cyclic:2,3"), {8, 2}).order() == 8);
  }
  SUBCASE("trivial group") {
    const Group g = build_group({"1", 1, {}});
    CHECK(g.order() == 1);
    CHECK(g.log_order() == 0);
  }
}

TEST_CASE("table axioms and element numbering") {
  for (auto recipe : {"dihedral:4", "quaternion:4", "semidihedral:4", "modular:2,4", "extraspecial:3,1",
                      "extraspecial:3,2", "wreath:2", "abelian:2,2,1"}) {
    CAPTURE(recipe);
    const Group g = make(recipe);
    const auto n = static_cast<Elem>(g.order());
    for (Elem x = 0; x < n; ++x) {
      REQUIRE(g.mul(0, x) == x);
      REQUIRE(g.mul(x, 0) == x);
      REQUIRE(g.mul(x, g.inv(x)) == 0);
      REQUIRE(g.exponent() % g.element_order(x) == 0);
      if (x > 0) REQUIRE(g.element_order(x - 1) <= g.element_order(x));
      for (Elem y = 0; y < n; ++y)
        for (Elem z = 0; z < n; z += 3) REQUIRE(g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)));
    }
    std::size_t emax = 1;
    for (Elem x = 0; x < n; ++x) emax = std::max(emax, g.element_order(x));
    CHECK(emax == g.exponent());
  }
}

TEST_CASE("same spec gives the same table") {
  const auto spec = parse_family("dihedral:3*quaternion:3");
  const Group a = build_group(spec), b = build_group(spec);
  for (Elem x = 0; x < a.order(); ++x)
    for (Elem y = 0; y < a.order(); ++y) REQUIRE(a.mul(x, y) == b.mul(x, y));
}

TEST_CASE("families") {
  CHECK(order_histogram(make("dihedral:3")) == std::map<std::size_t, std::size_t>{{1, 1}, {2, 5}, {4, 2}});
  CHECK(order_histogram(make("quaternion:3")) == std::map<std::size_t, std::size_t>{{1, 1}, {2, 1}, {4, 6}});
  const Group e9 = make("elementary_abelian:3,2");
  CHECK(e9.order() == 9);
  CHECK(e9.exponent() == 3);
  CHECK(make("elementary-abelian:2,3").order() == 8);

  const Group sd = make("semidihedral:4");
  CHECK(order_histogram(sd) == std::map<std::size_t, std::size_t>{{1, 1}, {2, 5}, {4, 6}, {8, 4}});
  const Group m16 = make("modular:2,4");
  CHECK(order_histogram(m16) == std::map<std::size_t, std::size_t>{{1, 1}, {2, 3}, {4, 4}, {8, 8}});
  const Group q16 = make("quaternion:4");
  CHECK(order_histogram(q16) == std::map<std::size_t, std::size_t>{{1, 1}, {2, 1}, {4, 10}, {8, 4}});

  // order 27: one of exponent 3, one of exponent 9
  CHECK(make("extraspecial:3,1").exponent() == 3);
  CHECK(make("extraspecial:3,2").exponent() == 9);
  CHECK(make("extraspecial:2,1").name() == "D8");
  CHECK(make("extraspecial:2,2").name() == "Q8");
  CHECK(make("wreath:3").order() == 81);
  CHECK(make("wreath:2").order() == 8);

  CHECK(make("cyclic:2,2").name() == "C4");
  CHECK(make("abelian:2,2,1").name() == "C4xC2");
  CHECK(make("elementary_abelian:2,3").name() == "C2^3");
  CHECK(make("dihedral:3*cyclic:2,1").name() == "D8xC2");
  CHECK(make("dihedral:3*cyclic:2,1").order() == 16);
  CHECK(make("cyclic:5,0").order() == 1);

  CHECK(code_of([] { make("tetrahedral:3"); }) == Errc::UnknownFamily);
  CHECK(code_of([] { make("cyclic:4,2"); }) == Errc::BadParams);
  CHECK(code_of([] { make("dihedral:2"); }) == Errc::BadParams);
  CHECK(code_of([] { make("semidihedral:3"); }) == Errc::BadParams);
  CHECK(code_of([] { make("modular:2,3"); }) == Errc::BadParams);
  CHECK(code_of([] { make("extraspecial:3,3"); }) == Errc::BadParams);
  CHECK(code_of([] { make("cyclic"); }) == Errc::BadParams);
}

TEST_CASE("closure") {
  const Group c4 = make("cyclic:2,2");
  Elem gen = 0;
  for (Elem x = 0; x < 4; ++x)
    if (c4.element_order(x) == 4) gen = x;
  CHECK(closure(c4, ElementSet::singleton(4, gen)).count() == 4);

  const Group d8 = make("dihedral:3");
  CHECK(closure(d8, d8.empty_set()) == ElementSet::singleton(8, 0));
  Elem rot = 0, refl = 0;
  for (Elem x = 0; x < 8; ++x)
    if (d8.element_order(x) == 4) rot = x;
  for (Elem x = 0; x < 8; ++x)
    if (d8.element_order(x) == 2 && d8.mul(rot, x) != d8.mul(x, rot)) refl = x;
  CHECK(closure(d8, set_of(d8, {rot, refl})).count() == 8);
}

TEST_CASE("omega") {
  const Group c8 = make("cyclic:2,3");
  const auto o1 = omega(c8, c8.all(), 1);
  CHECK(o1.subgroup.count() == 2);
  CHECK(o1.raw_closed);

  const Group d8 = make("dihedral:3");
  const auto d1 = omega(d8, d8.all(), 1);
  CHECK(d1.subgroup.count() == 8);
  CHECK_FALSE(d1.raw_closed);

  for (auto recipe : {"quaternion:4", "modular:3,3", "wreath:2", "abelian:3,2,1"}) {
    const Group g = make(recipe);
    CHECK(omega(g, g.all(), g.exponent_exp()).subgroup == g.all());
  }

  ElementSet not_sub = d8.empty_set();
  not_sub.set(0);
  not_sub.set(7);
  if (d8.element_order(7) == 4) CHECK(code_of([&] { omega(d8, not_sub, 1); }) == Errc::NotASubgroup);
}

TEST_CASE("characteristic data") {
  const Group d8 = make("dihedral:3");
  auto cd = characteristic_data(d8, d8.all());
  CHECK(cd.center.count() == 2);
  CHECK(cd.frattini.count() == 2);
  CHECK(cd.derived.count() == 2);
  CHECK(cd.rank_d == 2);
  CHECK(cd.exponent_exp == 2);

  for (unsigned r = 1; r <= 4; ++r) {
    const Group e = build_group(family(Family::ElementaryAbelian, std::vector<long long>{3, r}));
    const auto d = characteristic_data(e, e.all());
    CHECK(d.frattini.count() == 1);
    CHECK(d.rank_d == r);
  }
  const Group c4 = make("cyclic:2,2");
  cd = characteristic_data(c4, c4.all());
  CHECK(cd.center.count() == 4);
  CHECK(cd.rank_d == 1);
}

TEST_CASE("centralizer and normalizer") {
  const Group d8 = make("dihedral:3");
  const auto z = characteristic_data(d8, d8.all()).center;
  CHECK(centralizer(d8, z) == d8.all());

  ElementSet c4 = d8.empty_set();
  for (Elem x = 0; x < 8; ++x)
    if (d8.element_order(x) == 4) c4 = closure(d8, ElementSet::singleton(8, x));
  CHECK(c4.count() == 4);
  CHECK(centralizer(d8, c4) == c4);

  Elem refl = 0;
  for (Elem x = 1; x < 8; ++x)
    if (d8.element_order(x) == 2 && !z.test(x)) refl = x;
  const auto r = closure(d8, ElementSet::singleton(8, refl));
  const auto n = normalizer(d8, r);
  CHECK(n.count() == 4);
  CHECK(characteristic_data(d8, n).rank_d == 2);  // Klein four

  CHECK(normalizer(d8, c4) == d8.all());
  CHECK(normalizer(d8, d8.all()) == d8.all());

  const Group ab = make("abelian:2,2,1");
  for (Elem x = 0; x < ab.order(); ++x)
    CHECK(centralizer(ab, closure(ab, ElementSet::singleton(ab.order(), x))) == ab.all());

  ElementSet bad = d8.empty_set();
  bad.set(refl);
  CHECK(code_of([&] { normalizer(d8, bad); }) == Errc::NotASubgroup);
}

TEST_CASE("spec records round-trip") {
  SpecDocument doc;
  doc.header["prime"] = "2";
  doc.records.push_back({parse_family("dihedral:3"), "dihedral:3"});
  doc.records.push_back({parse_family("quaternion:3*cyclic:2,1"), ""});
  std::ostringstream out;
  write_spec_document(out, doc);
  std::istringstream in(out.str());
  const SpecDocument back = read_spec_document(in, "mem");
  REQUIRE(back.records.size() == 2);
  CHECK(back.records[0].spec == doc.records[0].spec);
  CHECK(back.records[0].provenance == "dihedral:3");
  CHECK(back.records[1].spec == doc.records[1].spec);
  CHECK(back.header.at("prime") == "2");

  std::ostringstream again;
  write_spec_document(again, back);
  CHECK(again.str() == out.str());
}

TEST_CASE("spec parse errors carry line and record") {
  const std::string text = "group X\ndegree 3\ngen 0 1 x\nend\n";
  std::istringstream in(text);
  try {
    read_spec_document(in, "f.txt");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
    const std::string msg = e.what();
    CHECK(msg.find("f.txt:3") != std::string::npos);
    CHECK(msg.find("'X'") != std::string::npos);
  }
  std::istringstream unterminated("group Y\ndegree 2\ngen 1 0\n");
  CHECK(code_of([&] { read_spec_document(unterminated, "g"); }) == Errc::ParseError);
  std::istringstream wrong_len("group Z\ndegree 3\ngen 1 0\nend\n");
  CHECK(code_of([&] { read_spec_document(wrong_len, "g"); }) == Errc::ParseError);
}
