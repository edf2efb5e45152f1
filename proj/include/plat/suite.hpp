#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plat/bounds.hpp"
#include "plat/census.hpp"
#include "plat/classes.hpp"
#include "plat/corpus.hpp"

namespace plat {

/// Which verifiers run for each (group, class) pair.
struct CheckSelection {
  std::vector<Condition> conditions;
  bool theorem_a = false;
  bool theorem_b = false;
  bool mobius_identity = false;
  bool remarks = false;
  bool double_counting = false;
  std::vector<Bound> bounds;
  /// Theorem C is evaluated under both exponent readings when set.
  bool theorem_c_both = true;

  /// Comma-separated: A,B,C,T2a,T2b,thmA,thmB,mobius,remarks,double,bounds
  /// or any bound name. Throws BadParam.
  static CheckSelection parse(std::string_view text);
  std::string to_string() const;
};

struct DoubleCountSummary {
  std::size_t instances = 0;
  std::size_t failures = 0;
};

struct VerificationReport {
  std::string group;
  std::string class_label;
  std::size_t order = 0;
  unsigned prime = 0;
  std::size_t lattice_size = 0;
  std::size_t class_members = 0;
  /// Set when the entry could not be processed; all verdicts are then absent.
  std::optional<std::string> error;
  bool class_not_closed = false;

  std::vector<ConditionReport> conditions;
  std::optional<TheoremAVerdict> theorem_a;
  std::optional<TheoremBVerdict> theorem_b;
  std::optional<MobiusIdentityVerdict> mobius;
  std::optional<RemarkVerdict> remarks;
  std::optional<DoubleCountSummary> double_counting;
  std::vector<BoundVerdict> bounds;
  /// Bound verdicts for theorem C under the strict exponent reading.
  std::optional<BoundVerdict> theorem_c_strict;
  /// Checks that do not apply to this class (with reason).
  std::vector<std::string> skipped;
  double elapsed_ms = 0.0;

  /// A or B equivalence failed: a would-be counterexample to the theorems.
  bool theorem_violation() const;
  /// Number of failing verdicts other than theorem-level ones.
  std::size_t failure_count() const;
};

struct SuiteOptions {
  std::size_t parallelism = 1;
  std::size_t order_cap = kDefaultOrderCap;
  std::size_t lattice_cap = kDefaultLatticeCap;
};

struct SuiteSummary {
  std::size_t reports = 0;
  std::size_t errors = 0;
  std::size_t theorem_violations = 0;
  std::size_t condition_failures = 0;
  std::size_t bound_failures = 0;
  std::size_t other_failures = 0;
};

/// One report per (entry, class), in entry order then class order. An error
/// in one entry is recorded in its reports and never aborts the batch.
std::vector<VerificationReport> run_suite(const Corpus& corpus, const std::vector<ClassSpec>& classes,
                                          const CheckSelection& checks, const SuiteOptions& opts = {});

SuiteSummary summarize(const std::vector<VerificationReport>& reports);

/// Runs the selected checks for one lattice and class.
VerificationReport verify_pair(const SubgroupLattice& lat, const ClassSpec& spec, const CheckSelection& checks);

enum class Problem { Problem1, Question2, Question3 };
std::string_view problem_name(Problem p);
/// Throws BadParam.
Problem problem_from_name(std::string_view name);

struct Finding {
  std::string group;
  std::string class_label;
  std::optional<std::string> error;
  bool a = false, b = false, c = false, t2a = false, t2b = false;
  /// Census of the trivial subgroup (always a member).
  std::uint64_t b_trivial = 0;
  unsigned sup_log = 0;
  std::optional<unsigned> nsup_log;
};

struct SearchResult {
  Problem problem = Problem::Problem1;
  std::vector<Finding> findings;

  /// problem1: classes with no A/B/C failure over the corpus.
  std::vector<std::string> surviving_classes() const;
};

SearchResult search_problem(const Corpus& corpus, Problem problem, const std::vector<ClassSpec>& classes,
                            const SuiteOptions& opts = {});

}  // namespace plat
