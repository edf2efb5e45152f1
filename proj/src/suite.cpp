#include "plat/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <set>
#include <thread>

#include "plat/error.hpp"

namespace plat {

namespace {

// Runs fn(i) for i in [0, n) on up to `workers` threads. Each index is
// processed exactly once; results are written by the callee into slot i.
template <class Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

bool is_exponent_bounded_abelian(const ClassSpec& spec) {
  return spec.kind == ClassKind::Abelian || spec.kind == ClassKind::AbelianExpDiv ||
         spec.kind == ClassKind::ElementaryAbelian;
}

}  // namespace

CheckSelection CheckSelection::parse(std::string_view text) {
  CheckSelection sel;
  std::set<Condition> conds;
  std::set<Bound> bounds;
  while (!text.empty()) {
    const std::size_t comma = text.find(',');
    const std::string_view tok = text.substr(0, comma);
    if (tok == "A") conds.insert(Condition::A);
    else if (tok == "B") conds.insert(Condition::B);
    else if (tok == "C") conds.insert(Condition::C);
    else if (tok == "T2a") conds.insert(Condition::T2a);
    else if (tok == "T2b") conds.insert(Condition::T2b);
    else if (tok == "thmA") sel.theorem_a = true;
    else if (tok == "thmB") sel.theorem_b = true;
    else if (tok == "mobius") sel.mobius_identity = true;
    else if (tok == "remarks") sel.remarks = true;
    else if (tok == "double") sel.double_counting = true;
    else if (tok == "bounds") for (Bound b : all_bounds()) bounds.insert(b);
    else if (tok == "all") {
      for (Condition c : {Condition::A, Condition::B, Condition::C, Condition::T2a, Condition::T2b}) conds.insert(c);
      sel.theorem_a = sel.theorem_b = sel.mobius_identity = sel.remarks = sel.double_counting = true;
      for (Bound b : all_bounds()) bounds.insert(b);
    } else if (!tok.empty()) bounds.insert(bound_from_name(tok));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  sel.conditions.assign(conds.begin(), conds.end());
  sel.bounds.assign(bounds.begin(), bounds.end());
  return sel;
}

std::string CheckSelection::to_string() const {
  std::vector<std::string> parts;
  for (Condition c : conditions) parts.emplace_back(condition_name(c));
  if (theorem_a) parts.emplace_back("thmA");
  if (theorem_b) parts.emplace_back("thmB");
  if (mobius_identity) parts.emplace_back("mobius");
  if (remarks) parts.emplace_back("remarks");
  if (double_counting) parts.emplace_back("double");
  for (Bound b : bounds) parts.emplace_back(bound_name(b));
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : ",") + p;
  return out;
}

bool VerificationReport::theorem_violation() const {
  return (theorem_a && !theorem_a->equivalent) || (theorem_b && !theorem_b->equivalent);
}

std::size_t VerificationReport::failure_count() const {
  std::size_t n = 0;
  for (const auto& c : conditions) n += c.holds ? 0 : 1;
  if (mobius && !mobius->holds) ++n;
  if (remarks && !remarks->holds) ++n;
  if (double_counting && double_counting->failures) ++n;
  for (const auto& b : bounds) n += b.holds ? 0 : 1;
  if (theorem_c_strict && !theorem_c_strict->holds) ++n;
  return n;
}

VerificationReport verify_pair(const SubgroupLattice& lat, const ClassSpec& spec, const CheckSelection& checks) {
  const auto start = std::chrono::steady_clock::now();
  const Group& g = lat.group();
  VerificationReport r;
  r.group = g.name();
  r.class_label = spec.label;
  r.order = g.order();
  r.prime = g.prime();
  r.lattice_size = lat.size();

  const ClassIndex idx(lat, evaluate_class(spec, lat));
  r.class_members = idx.membership().count();
  if (!idx.subgroup_closed()) {
    r.class_not_closed = true;
    r.error = std::string(errc_name(Errc::ClassNotSubgroupClosed)) + ": " + spec.label + " on " + g.name();
    return r;
  }

  for (Condition c : checks.conditions) r.conditions.push_back(check_condition(idx, c));
  if (checks.theorem_a) r.theorem_a = verify_theorem_A(idx);
  if (checks.theorem_b) r.theorem_b = verify_theorem_B(idx);
  if (checks.mobius_identity) r.mobius = check_mobius_inversion_identity(idx);
  if (checks.remarks) r.remarks = remark_invariants(idx);
  if (checks.double_counting) {
    DoubleCountSummary s;
    for (SubgroupId h = 0; h < lat.size(); ++h) {
      if (!idx.member(h) || idx.maximal(h)) continue;
      for (unsigned level = lat.log_order(h); level <= g.log_order(); ++level) {
        ++s.instances;
        if (!check_double_counting(idx, h, level).holds) ++s.failures;
      }
    }
    r.double_counting = s;
  }
  for (Bound b : checks.bounds) {
    if ((b == Bound::Berkovich || b == Bound::IsaacsYanovski) && !is_exponent_bounded_abelian(spec)) {
      r.skipped.push_back(std::string(bound_name(b)) + ": class is not an abelian exponent-bounded class");
      continue;
    }
    try {
      r.bounds.push_back(verify_bound(lat, spec, b));
      if (b == Bound::TheoremC && checks.theorem_c_both)
        r.theorem_c_strict = verify_bound(lat, spec, b, {std::nullopt, true});
    } catch (const Error& e) {
      if (e.code() != Errc::BadBoundInput) throw;
      r.skipped.push_back(std::string(bound_name(b)) + ": " + e.what());
    }
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<VerificationReport> run_suite(const Corpus& corpus, const std::vector<ClassSpec>& classes,
                                          const CheckSelection& checks, const SuiteOptions& opts) {
  std::vector<std::vector<VerificationReport>> per_entry(corpus.entries.size());
  parallel_for(corpus.entries.size(), opts.parallelism, [&](std::size_t i) {
    const auto& entry = corpus.entries[i];
    auto& out = per_entry[i];
    try {
      auto group = std::make_shared<const Group>(build_group(entry.spec, {opts.order_cap, corpus.prime}));
      const SubgroupLattice lat = enumerate_lattice(group, {opts.lattice_cap});
      for (const auto& spec : classes) {
        try {
          out.push_back(verify_pair(lat, spec, checks));
        } catch (const Error& e) {
          VerificationReport r;
          r.group = entry.spec.name;
          r.class_label = spec.label;
          r.order = group->order();
          r.prime = group->prime();
          r.error = e.what();
          out.push_back(std::move(r));
        }
      }
    } catch (const Error& e) {
      for (const auto& spec : classes) {
        VerificationReport r;
        r.group = entry.spec.name;
        r.class_label = spec.label;
        r.prime = corpus.prime;
        r.error = e.what();
        out.push_back(std::move(r));
      }
    }
  });
  std::vector<VerificationReport> reports;
  for (auto& v : per_entry)
    for (auto& r : v) reports.push_back(std::move(r));
  return reports;
}

SuiteSummary summarize(const std::vector<VerificationReport>& reports) {
  SuiteSummary s;
  s.reports = reports.size();
  for (const auto& r : reports) {
    if (r.error) {
      ++s.errors;
      continue;
    }
    if (r.theorem_violation()) ++s.theorem_violations;
    for (const auto& c : r.conditions) s.condition_failures += c.holds ? 0 : 1;
    for (const auto& b : r.bounds) s.bound_failures += b.holds ? 0 : 1;
    if (r.theorem_c_strict && !r.theorem_c_strict->holds) ++s.bound_failures;
    if (r.mobius && !r.mobius->holds) ++s.other_failures;
    if (r.remarks && !r.remarks->holds) ++s.other_failures;
    if (r.double_counting && r.double_counting->failures) ++s.other_failures;
  }
  return s;
}

std::string_view problem_name(Problem p) {
  switch (p) {
    case Problem::Problem1: return "problem1";
    case Problem::Question2: return "question2";
    case Problem::Question3: return "question3";
  }
  return "?";
}

Problem problem_from_name(std::string_view name) {
  for (Problem p : {Problem::Problem1, Problem::Question2, Problem::Question3})
    if (problem_name(p) == name) return p;
  throw Error(Errc::BadParam, "unknown problem '" + std::string(name) + "'");
}

std::vector<std::string> SearchResult::surviving_classes() const {
  std::vector<std::string> labels;
  std::set<std::string> failed;
  for (const auto& f : findings) {
    if (std::find(labels.begin(), labels.end(), f.class_label) == labels.end()) labels.push_back(f.class_label);
    if (f.error || !(f.a && f.b && f.c)) failed.insert(f.class_label);
  }
  std::vector<std::string> out;
  for (const auto& l : labels)
    if (!failed.contains(l)) out.push_back(l);
  return out;
}

SearchResult search_problem(const Corpus& corpus, Problem problem, const std::vector<ClassSpec>& classes,
                            const SuiteOptions& opts) {
  std::vector<std::vector<Finding>> per_entry(corpus.entries.size());
  parallel_for(corpus.entries.size(), opts.parallelism, [&](std::size_t i) {
    const auto& entry = corpus.entries[i];
    auto& out = per_entry[i];
    std::optional<SubgroupLattice> lat;
    std::optional<std::string> entry_error;
    try {
      lat = enumerate_lattice(build_group(entry.spec, {opts.order_cap, corpus.prime}), {opts.lattice_cap});
    } catch (const Error& e) {
      entry_error = e.what();
    }
    for (const auto& spec : classes) {
      Finding f;
      f.group = entry.spec.name;
      f.class_label = spec.label;
      if (entry_error) {
        f.error = entry_error;
        out.push_back(std::move(f));
        continue;
      }
      const ClassIndex idx(*lat, evaluate_class(spec, *lat));
      if (!idx.subgroup_closed()) {
        f.error = "ClassNotSubgroupClosed";
        out.push_back(std::move(f));
        continue;
      }
      const auto thm_b = verify_theorem_B(idx);
      f.a = thm_b.lhs.a.holds;
      f.b = thm_b.lhs.b.holds;
      f.c = thm_b.lhs.c.holds;
      f.t2a = thm_b.t2a.holds;
      f.t2b = thm_b.t2b.holds;
      const auto cv = census(idx, lat->bottom());
      f.b_trivial = cv.b;
      f.sup_log = cv.sup_log;
      f.nsup_log = cv.nsup_log;
      out.push_back(std::move(f));
    }
  });
  SearchResult result;
  result.problem = problem;
  for (auto& v : per_entry)
    for (auto& f : v) result.findings.push_back(std::move(f));
  return result;
}

}  // namespace plat
