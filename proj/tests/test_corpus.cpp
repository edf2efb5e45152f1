#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "plat/corpus.hpp"
#include "plat/error.hpp"
#include "plat/families.hpp"
#include "plat/report.hpp"
#include "plat/suite.hpp"

using namespace plat;
namespace fs = std::filesystem;

namespace {

std::set<std::string> names(const Corpus& c) {
  std::set<std::string> out;
  for (const auto& e : c.entries) out.insert(e.spec.name);
  return out;
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

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("plat_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string structured(const std::vector<VerificationReport>& reports) {
  std::ostringstream out;
  write_reports(out, reports, OutputFormat::Structured);
  return out.str();
}

const VerificationReport& find_report(const std::vector<VerificationReport>& rs, std::string_view group,
                                      std::string_view cls) {
  for (const auto& r : rs)
    if (r.group == group && r.class_label == cls) return r;
  FAIL("report not found");
  return rs.front();
}

}  // namespace

TEST_CASE("builtin corpus contents") {
  const auto c16 = names(builtin_corpus(2, 16));
  for (auto n : {"C16", "C8xC2", "C4xC4", "C4xC2xC2", "C2^4", "D16", "Q16", "SD16", "M16", "D8xC2", "Q8xC2"})
    CHECK_MESSAGE(c16.count(n), n);
  const auto c27 = names(builtin_corpus(3, 27));
  for (auto n : {"C27", "C9xC3", "C3^3", "E27+", "E27-"}) CHECK_MESSAGE(c27.count(n), n);
  const auto c2 = builtin_corpus(2, 2);
  REQUIRE(c2.entries.size() == 1);
  CHECK(c2.entries[0].spec.name == "C2");

  CHECK(code_of([] { builtin_corpus(2, 512); }) == Errc::CapExceeded);
  CHECK(code_of([] { builtin_corpus(4, 16); }) == Errc::BadParams);
}

TEST_CASE("corpus entries build into p-groups within the cap") {
  for (auto [p, max] : {std::pair{2u, 64u}, std::pair{3u, 81u}, std::pair{5u, 125u}}) {
    const auto c = builtin_corpus(p, max);
    CHECK(c.prime == p);
    std::set<Fingerprint> seen;
    for (const auto& e : c.entries) {
      const Group g = build_group(e.spec, {256, p});
      CHECK(g.prime() == p);
      CHECK(g.order() <= max);
      CHECK(build_group(parse_family(e.provenance), {256, p}).order() == g.order());
      CHECK(seen.insert(fingerprint(enumerate_lattice(g))).second);
    }
  }
}

TEST_CASE("fingerprints separate C4 from C2 x C2") {
  const auto a = fingerprint(enumerate_lattice(build_group(parse_family("cyclic:2,2"))));
  const auto b = fingerprint(enumerate_lattice(build_group(parse_family("elementary_abelian:2,2"))));
  CHECK_FALSE(a == b);
  CHECK(a.element_orders != b.element_orders);
  CHECK(a.to_string() != b.to_string());
}

TEST_CASE("save and load") {
  TempDir dir;
  const auto c = builtin_corpus(2, 16);
  const auto path = dir.path / "c16.txt";
  save_corpus(c, path);
  const auto back = load_corpus(path);
  CHECK(back.prime == 2);
  CHECK(back.max_order == 16);
  REQUIRE(back.entries.size() == c.entries.size());
  for (std::size_t i = 0; i < c.entries.size(); ++i) {
    CHECK(back.entries[i].spec == c.entries[i].spec);
    CHECK(back.entries[i].provenance == c.entries[i].provenance);
  }
  CHECK(corpus_text(back) == corpus_text(c));

  const auto empty = dir.path / "empty.txt";
  std::ofstream(empty).close();
  const auto e = load_corpus(empty);
  CHECK(e.entries.empty());
  REQUIRE(e.notes.size() == 1);
  CHECK(e.notes[0].starts_with("warning:"));

  CHECK(code_of([&] { load_corpus(dir.path / "missing.txt"); }) == Errc::IoError);
  CHECK(code_of([&] { save_corpus(c, dir.path / "no" / "such" / "dir.txt"); }) == Errc::IoError);
}

TEST_CASE("malformed corpus records") {
  const std::string bad_gen = "format pgroup-corpus-v1\nprime 2\nmax_order 4\ngroup Broken\ndegree 4\ngen 1 2 3 3\nend\n";
  try {
    corpus_from_text(bad_gen, "mem");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
    CHECK(std::string(e.what()).find("Broken") != std::string::npos);
  }
  const std::string wrong_prime = "prime 3\ngroup C2\ndegree 2\ngen 1 0\nend\n";
  try {
    corpus_from_text(wrong_prime, "mem");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
    CHECK(std::string(e.what()).find("'C2'") != std::string::npos);
  }
  CHECK(code_of([] { corpus_from_text("format other\n", "mem"); }) == Errc::ParseError);
  CHECK(code_of([] { corpus_from_text("prime x\ngroup C2\ndegree 2\ngen 1 0\nend\n", "mem"); }) ==
        Errc::ParseError);
}

TEST_CASE("run_suite") {
  CheckSelection sel = CheckSelection::parse("A,B,C,thmA");
  CHECK(run_suite(Corpus{}, {ClassSpec::abelian()}, sel).empty());

  const auto c16 = builtin_corpus(2, 16);
  const auto reports = run_suite(c16, {ClassSpec::elementary_abelian()}, sel);
  REQUIRE(reports.size() == c16.entries.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    CHECK(reports[i].group == c16.entries[i].spec.name);
    REQUIRE(reports[i].theorem_a.has_value());
    CHECK(reports[i].theorem_a->equivalent);
  }
  const auto& d8 = find_report(reports, "D8", "elementary-abelian");
  CHECK(d8.failure_count() == 3);
  const auto summary = summarize(reports);
  CHECK(summary.theorem_violations == 0);
  CHECK(summary.errors == 0);
  CHECK(summary.condition_failures > 0);
}

TEST_CASE("run_suite isolates per-entry errors") {
  auto c = builtin_corpus(2, 8);
  c.entries.push_back({parse_family("elementary_abelian:2,4"), "too many subgroups for the cap below"});
  const auto reports = run_suite(c, {ClassSpec::abelian(), ClassSpec::cyclic()}, CheckSelection::parse("A"),
                                 {2, 256, 40});
  REQUIRE(reports.size() == 2 * c.entries.size());
  for (std::size_t i = 0; i + 2 < reports.size(); ++i) CHECK_FALSE(reports[i].error.has_value());
  CHECK(reports[reports.size() - 1].error.has_value());
  CHECK(reports[reports.size() - 1].error->starts_with("LatticeCapExceeded"));
  CHECK(summarize(reports).errors == 2);

  auto bad = builtin_corpus(2, 4);
  const auto r = run_suite(bad, {parse_class("custom:bad")}, CheckSelection::parse("A"));
  bool any_not_closed = false;
  for (const auto& x : r) any_not_closed |= x.class_not_closed;
  CHECK(any_not_closed);
}

TEST_CASE("run_suite output is deterministic across runs and thread counts") {
  const auto c = builtin_corpus(2, 32);
  const auto classes = parse_class_suite("abelian,elementary-abelian,cyclic,exp:2");
  const auto sel = CheckSelection::parse("all");
  const auto one = structured(run_suite(c, classes, sel, {1}));
  CHECK(one == structured(run_suite(c, classes, sel, {1})));
  CHECK(one == structured(run_suite(c, classes, sel, {4})));
  CHECK(one.find("elapsed_ms") == std::string::npos);
  std::ostringstream timed;
  write_reports(timed, run_suite(builtin_corpus(2, 4), classes, sel), OutputFormat::Structured, true);
  CHECK(timed.str().find("elapsed_ms") != std::string::npos);
}

TEST_CASE("check selection parsing") {
  auto s = CheckSelection::parse("A,T2b,thmB,mobius,burnside");
  CHECK(s.conditions == std::vector{Condition::A, Condition::T2b});
  CHECK(s.theorem_b);
  CHECK_FALSE(s.theorem_a);
  CHECK(s.mobius_identity);
  CHECK(s.bounds == std::vector{Bound::Burnside});
  CHECK(s.to_string() == "A,T2b,thmB,mobius,burnside");
  s = CheckSelection::parse("all");
  CHECK(s.conditions.size() == 5);
  CHECK(s.bounds.size() == 8);
  CHECK(code_of([] { CheckSelection::parse("A,zzz"); }) == Errc::BadParam);
}

TEST_CASE("reports") {
  const auto c = builtin_corpus(2, 8);
  const auto reports = run_suite(c, {ClassSpec::elementary_abelian()}, CheckSelection::parse("A,B,thmA,burnside"));
  std::ostringstream csv;
  write_reports_csv(csv, reports);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "group,class,check,verdict,witness_count");
  CHECK(csv.str().find("D8,elementary-abelian,B,fail,") != std::string::npos);
  CHECK(csv.str().find("C8,elementary-abelian,B,pass,0") != std::string::npos);

  const auto j = report_to_json(find_report(reports, "D8", "elementary-abelian"));
  CHECK(j["group"] == "D8");
  CHECK(j["class"] == "elementary-abelian");
  CHECK(j["order"] == 8);
  CHECK(j["conditions"].size() == 2);
  CHECK(j["conditions"][1]["condition"] == "B");
  CHECK(j["conditions"][1]["holds"] == false);
  CHECK(j["conditions"][1]["witnesses"][0]["subgroup"] == 0);
  CHECK(j["conditions"][1]["witnesses"][0]["observed"] == 2);
  CHECK(j["theorem_A"]["equivalent"] == true);
  CHECK(j["bounds"][0]["bound"] == "burnside");
  CHECK_FALSE(j.contains("elapsed_ms"));

  std::ostringstream text;
  write_reports(text, reports, OutputFormat::Text);
  CHECK(text.str().find("== D8 [elementary-abelian]") != std::string::npos);
  CHECK(code_of([] { output_format_from_name("xml"); }) == Errc::BadParam);
}

TEST_CASE("expectations") {
  const auto ex = Expectations::parse(
      "# comment\n"
      "D8 elementary-abelian B\n"
      "* cyclic A,B p=2\n"
      "* exp:* C\n");
  CHECK(ex.size() == 3);
  CHECK(ex.expected("D8", "elementary-abelian", "B", 2));
  CHECK_FALSE(ex.expected("D8", "elementary-abelian", "A", 2));
  CHECK(ex.expected("Q8", "cyclic", "A", 2));
  CHECK_FALSE(ex.expected("E27+", "cyclic", "A", 3));
  CHECK(ex.expected("E27+", "exp:1", "C", 3));
  CHECK_FALSE(ex.expected("E27+", "expx", "C", 3));
  CHECK(code_of([] { Expectations::parse("only two"); }) == Errc::ParseError);
  CHECK(code_of([] { Expectations::parse("a b c q=2"); }) == Errc::ParseError);

  const auto reports =
      run_suite(builtin_corpus(2, 8), {ClassSpec::elementary_abelian()}, CheckSelection::parse("B,thmA"));
  const auto unexpected = unexpected_failures(reports, Expectations::parse("D8 elementary-abelian B"));
  CHECK(unexpected.empty());
  CHECK(unexpected_failures(reports, Expectations{}).size() == 1);
  CHECK(unexpected_failures(reports, Expectations::defaults()).empty());
}

TEST_CASE("search_problem") {
  const auto c16 = builtin_corpus(2, 16);
  const auto q2 = search_problem(c16, Problem::Question2, {ClassSpec::abelian()});
  REQUIRE(q2.findings.size() == c16.entries.size());
  for (const auto& f : q2.findings)
    if (f.group == "D8") {
      CHECK(f.sup_log == 2);
      REQUIRE(f.nsup_log.has_value());
      CHECK(*f.nsup_log == 2);
    }

  const auto p1 = search_problem(c16, Problem::Problem1, {ClassSpec::abelian(), ClassSpec::elementary_abelian()});
  const auto survivors = p1.surviving_classes();
  CHECK(survivors == std::vector<std::string>{"abelian"});

  const auto single = search_problem(builtin_corpus(3, 3), Problem::Question3, {ClassSpec::cyclic()});
  REQUIRE(single.findings.size() == 1);
  CHECK(single.findings[0].a);
  CHECK(single.findings[0].t2a);

  CHECK(problem_from_name("question3") == Problem::Question3);
  CHECK(code_of([] { problem_from_name("question9"); }) == Errc::BadParam);
}
