#include "plat/report.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "plat/error.hpp"

namespace plat {

using nlohmann::json;

namespace {

json witnesses_json(const std::vector<Witness>& ws) {
  json arr = json::array();
  for (const auto& w : ws) arr.push_back({{"subgroup", w.subgroup}, {"level", w.level}, {"observed", w.observed}});
  return arr;
}

json condition_json(const ConditionReport& c) {
  return {{"condition", condition_name(c.condition)}, {"holds", c.holds}, {"witnesses", witnesses_json(c.witnesses)}};
}

json bound_json(const BoundVerdict& b) {
  json ws = json::array();
  for (const auto& w : b.witnesses) {
    json item = {{"detail", w.detail}};
    item["subgroup"] = w.subgroup ? json(*w.subgroup) : json(nullptr);
    ws.push_back(std::move(item));
  }
  return {{"bound", bound_name(b.bound)}, {"holds", b.holds}, {"instances", b.instances}, {"witnesses", ws}};
}

json mobius_failures_json(const std::vector<MobiusIdentityFailure>& fs) {
  json arr = json::array();
  for (const auto& f : fs) arr.push_back({{"h", f.h}, {"k", f.k}, {"lhs", f.lhs}, {"rhs", f.rhs}});
  return arr;
}

struct Row {
  std::string check;
  bool holds;
  std::size_t witnesses;
};

std::vector<Row> rows_of(const VerificationReport& r) {
  std::vector<Row> rows;
  for (const auto& c : r.conditions)
    rows.push_back({std::string(condition_name(c.condition)), c.holds, c.witnesses.size()});
  if (r.theorem_a) rows.push_back({"thmA", r.theorem_a->equivalent, r.theorem_a->equivalent ? 0u : 1u});
  if (r.theorem_b) rows.push_back({"thmB", r.theorem_b->equivalent, r.theorem_b->equivalent ? 0u : 1u});
  if (r.mobius)
    rows.push_back({"mobius", r.mobius->holds,
                    r.mobius->identity_failures.size() + r.mobius->congruence_failures.size()});
  if (r.remarks) rows.push_back({"remarks", r.remarks->holds, r.remarks->failures.size()});
  if (r.double_counting)
    rows.push_back({"double", r.double_counting->failures == 0, r.double_counting->failures});
  for (const auto& b : r.bounds) rows.push_back({std::string(bound_name(b.bound)), b.holds, b.witnesses.size()});
  if (r.theorem_c_strict)
    rows.push_back({"theorem_C_strict", r.theorem_c_strict->holds, r.theorem_c_strict->witnesses.size()});
  return rows;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

}  // namespace

OutputFormat output_format_from_name(std::string_view name) {
  if (name == "text") return OutputFormat::Text;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "structured" || name == "json") return OutputFormat::Structured;
  throw Error(Errc::BadParam, "unknown output format '" + std::string(name) + "'");
}

json report_to_json(const VerificationReport& r, bool include_timing) {
  json j;
  j["group"] = r.group;
  j["class"] = r.class_label;
  j["order"] = r.order;
  j["prime"] = r.prime;
  j["lattice_size"] = r.lattice_size;
  j["class_members"] = r.class_members;
  j["error"] = r.error ? json(*r.error) : json(nullptr);
  json conds = json::array();
  for (const auto& c : r.conditions) conds.push_back(condition_json(c));
  j["conditions"] = conds;
  if (r.theorem_a) {
    j["theorem_A"] = {{"A", r.theorem_a->a.holds},
                      {"B", r.theorem_a->b.holds},
                      {"C", r.theorem_a->c.holds},
                      {"equivalent", r.theorem_a->equivalent}};
  }
  if (r.theorem_b) {
    j["theorem_B"] = {{"lhs", r.theorem_b->lhs_holds},
                      {"T2a", condition_json(r.theorem_b->t2a)},
                      {"T2b", condition_json(r.theorem_b->t2b)},
                      {"rhs", r.theorem_b->rhs_holds},
                      {"equivalent", r.theorem_b->equivalent}};
  }
  if (r.mobius) {
    j["mobius"] = {{"holds", r.mobius->holds},
                   {"subgroups", r.mobius->subgroups_checked},
                   {"pairs", r.mobius->pairs_checked},
                   {"identity_failures", mobius_failures_json(r.mobius->identity_failures)},
                   {"congruence_failures", mobius_failures_json(r.mobius->congruence_failures)}};
  }
  if (r.remarks) {
    json fs = json::array();
    for (const auto& f : r.remarks->failures)
      fs.push_back({{"remark", remark_name(f.remark)}, {"h", f.h}, {"expected", f.expected}, {"observed", f.observed}});
    j["remarks"] = {{"holds", r.remarks->holds}, {"subgroups", r.remarks->subgroups_checked}, {"failures", fs}};
  }
  if (r.double_counting)
    j["double_counting"] = {{"instances", r.double_counting->instances}, {"failures", r.double_counting->failures}};
  json bounds = json::array();
  for (const auto& b : r.bounds) bounds.push_back(bound_json(b));
  j["bounds"] = bounds;
  if (r.theorem_c_strict) j["theorem_C_strict"] = bound_json(*r.theorem_c_strict);
  j["skipped"] = r.skipped;
  if (include_timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

void write_reports_csv(std::ostream& out, const std::vector<VerificationReport>& reports) {
  out << "group,class,check,verdict,witness_count\n";
  for (const auto& r : reports) {
    const std::string prefix = csv_field(r.group) + "," + csv_field(r.class_label) + ",";
    if (r.error) {
      out << prefix << "error,error,0\n";
      continue;
    }
    for (const auto& row : rows_of(r))
      out << prefix << row.check << ',' << (row.holds ? "pass" : "fail") << ',' << row.witnesses << '\n';
  }
}

void write_reports(std::ostream& out, const std::vector<VerificationReport>& reports, OutputFormat fmt,
                   bool include_timing) {
  switch (fmt) {
    case OutputFormat::Structured:
      for (const auto& r : reports) out << report_to_json(r, include_timing).dump() << '\n';
      return;
    case OutputFormat::Csv:
      write_reports_csv(out, reports);
      return;
    case OutputFormat::Text:
      break;
  }
  for (const auto& r : reports) {
    out << "== " << r.group << " [" << r.class_label << "]";
    if (r.error) {
      out << " ERROR " << *r.error << '\n';
      continue;
    }
    out << " order=" << r.order << " subgroups=" << r.lattice_size << " members=" << r.class_members;
    if (include_timing) out << " elapsed_ms=" << std::fixed << std::setprecision(1) << r.elapsed_ms;
    out << '\n';
    for (const auto& row : rows_of(r)) {
      out << "  " << std::left << std::setw(18) << row.check << (row.holds ? "pass" : "FAIL");
      if (row.witnesses) out << "  witnesses=" << row.witnesses;
      out << '\n';
    }
    for (const auto& c : r.conditions)
      for (const auto& w : c.witnesses)
        out << "    " << condition_name(c.condition) << ": subgroup " << w.subgroup << " level " << w.level
            << " count " << w.observed << '\n';
    for (const auto& b : r.bounds)
      for (const auto& w : b.witnesses) out << "    " << bound_name(b.bound) << ": " << w.detail << '\n';
    if (r.theorem_a && !r.theorem_a->equivalent)
      out << "    THEOREM A VIOLATION: A=" << r.theorem_a->a.holds << " B=" << r.theorem_a->b.holds
          << " C=" << r.theorem_a->c.holds << '\n';
    if (r.theorem_b && !r.theorem_b->equivalent)
      out << "    THEOREM B VIOLATION: ABC=" << r.theorem_b->lhs_holds << " T2a=" << r.theorem_b->t2a.holds
          << " T2b=" << r.theorem_b->t2b.holds << '\n';
    for (const auto& s : r.skipped) out << "  skipped " << s << '\n';
  }
}

void write_summary(std::ostream& out, const SuiteSummary& s) {
  out << "summary reports=" << s.reports << " errors=" << s.errors << " theorem_violations=" << s.theorem_violations
      << " condition_failures=" << s.condition_failures << " bound_failures=" << s.bound_failures
      << " other_failures=" << s.other_failures << '\n';
}

void write_search(std::ostream& out, const SearchResult& result, OutputFormat fmt) {
  const auto yn = [](bool b) { return b ? "yes" : "no"; };
  if (fmt == OutputFormat::Structured) {
    for (const auto& f : result.findings) {
      json j = {{"problem", problem_name(result.problem)}, {"group", f.group}, {"class", f.class_label}};
      j["error"] = f.error ? json(*f.error) : json(nullptr);
      j["A"] = f.a;
      j["B"] = f.b;
      j["C"] = f.c;
      j["T2a"] = f.t2a;
      j["T2b"] = f.t2b;
      j["b_trivial"] = f.b_trivial;
      j["sup_log"] = f.sup_log;
      j["nsup_log"] = f.nsup_log ? json(*f.nsup_log) : json(nullptr);
      out << j.dump() << '\n';
    }
    return;
  }
  if (fmt == OutputFormat::Csv) {
    out << "problem,group,class,A,B,C,T2a,T2b,b_trivial,sup_log,nsup_log\n";
    for (const auto& f : result.findings) {
      out << problem_name(result.problem) << ',' << csv_field(f.group) << ',' << csv_field(f.class_label) << ',';
      if (f.error) {
        out << "error,error,error,error,error,,,\n";
        continue;
      }
      out << f.a << ',' << f.b << ',' << f.c << ',' << f.t2a << ',' << f.t2b << ',' << f.b_trivial << ','
          << f.sup_log << ',' << (f.nsup_log ? std::to_string(*f.nsup_log) : "") << '\n';
    }
    return;
  }

  out << "# " << problem_name(result.problem) << '\n';
  std::vector<std::string> labels;
  for (const auto& f : result.findings)
    if (std::find(labels.begin(), labels.end(), f.class_label) == labels.end()) labels.push_back(f.class_label);

  for (const auto& label : labels) {
    out << "== class " << label << '\n';
    std::size_t total = 0, hits = 0;
    for (const auto& f : result.findings) {
      if (f.class_label != label) continue;
      ++total;
      if (f.error) {
        out << "  " << f.group << " error " << *f.error << '\n';
        continue;
      }
      const bool abc = f.a && f.b && f.c;
      switch (result.problem) {
        case Problem::Problem1:
          if (!abc) {
            ++hits;
            out << "  " << f.group << " fails: A=" << yn(f.a) << " B=" << yn(f.b) << " C=" << yn(f.c) << '\n';
          }
          break;
        case Problem::Question2: {
          const bool equal = f.nsup_log && *f.nsup_log == f.sup_log;
          if (equal) ++hits;
          out << "  " << f.group << " sup=p^" << f.sup_log << " nsup="
              << (f.nsup_log ? "p^" + std::to_string(*f.nsup_log) : std::string("-"))
              << (equal ? " equal" : "") << " b(1)=" << f.b_trivial << " ABC=" << yn(abc) << '\n';
          break;
        }
        case Problem::Question3:
          if (f.t2a) ++hits;
          out << "  " << f.group << " hypothesis(T2a)=" << yn(f.t2a) << " conclusion(ABC)=" << yn(abc)
              << (f.t2a && !abc ? "  <-- hypothesis without conclusion" : "") << '\n';
          break;
      }
    }
    switch (result.problem) {
      case Problem::Problem1:
        out << "  " << (hits == 0 ? "SURVIVES" : "fails") << " on " << hits << " of " << total << " groups\n";
        break;
      case Problem::Question2:
        out << "  sup=nsup on " << hits << " of " << total << " groups\n";
        break;
      case Problem::Question3:
        out << "  hypothesis holds on " << hits << " of " << total << " groups\n";
        break;
    }
  }
}

namespace {

constexpr std::string_view kDefaultExpectations = R"(# p^k = 2: the census conditions are not claimed
* elementary-abelian A,B,C,T2a,T2b p=2
* abelian-exp:1 A,B,C,T2a,T2b p=2
# classes not contained in the abelian ones: data only
* cyclic A,B,C,T2a,T2b
* exp:* A,B,C,T2a,T2b
* nilclass:* A,B,C,T2a,T2b
* derived:* A,B,C,T2a,T2b
* custom:* A,B,C,T2a,T2b
)";

bool field_match(const std::string& pat, std::string_view v) {
  if (pat == "*") return true;
  if (!pat.empty() && pat.back() == '*') return v.starts_with(std::string_view(pat).substr(0, pat.size() - 1));
  return pat == v;
}

}  // namespace

Expectations Expectations::parse(std::string_view text) {
  Expectations ex;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> fields;
    for (std::string f; ls >> f;) fields.push_back(f);
    if (fields.empty()) continue;
    const auto fail = [&](const std::string& why) {
      return Error(Errc::ParseError, "expectations line " + std::to_string(line_no) + ": " + why);
    };
    if (fields.size() < 3 || fields.size() > 4) throw fail("need '<group> <class> <checks> [p=<prime>]'");
    Rule r;
    r.group = fields[0];
    r.class_label = fields[1];
    std::string_view checks = fields[2];
    while (!checks.empty()) {
      const auto comma = checks.find(',');
      if (comma != 0) r.checks.emplace_back(checks.substr(0, comma));
      if (comma == std::string_view::npos) break;
      checks.remove_prefix(comma + 1);
    }
    if (fields.size() == 4) {
      if (!fields[3].starts_with("p=")) throw fail("fourth field must be p=<prime>");
      try {
        r.prime = static_cast<unsigned>(std::stoul(fields[3].substr(2)));
      } catch (const std::exception&) {
        throw fail("bad prime '" + fields[3] + "'");
      }
    }
    ex.rules_.push_back(std::move(r));
  }
  return ex;
}

Expectations Expectations::defaults() { return parse(kDefaultExpectations); }

Expectations Expectations::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool Expectations::expected(std::string_view group, std::string_view class_label, std::string_view check,
                            unsigned prime) const {
  for (const auto& r : rules_) {
    if (r.prime && r.prime != prime) continue;
    if (!field_match(r.group, group) || !field_match(r.class_label, class_label)) continue;
    for (const auto& c : r.checks)
      if (field_match(c, check)) return true;
  }
  return false;
}

std::vector<std::string> unexpected_failures(const std::vector<VerificationReport>& reports,
                                             const Expectations& expectations) {
  std::vector<std::string> out;
  for (const auto& r : reports) {
    if (r.error) continue;
    for (const auto& row : rows_of(r)) {
      if (row.holds) continue;
      const bool theorem_level = row.check == "thmA" || row.check == "thmB";
      if (!theorem_level && expectations.expected(r.group, r.class_label, row.check, r.prime)) continue;
      out.push_back(r.group + " " + r.class_label + " " + row.check);
    }
  }
  return out;
}

}  // namespace plat
