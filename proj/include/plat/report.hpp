#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "plat/suite.hpp"

namespace plat {

enum class OutputFormat { Text, Csv, Structured };
/// Throws BadParam.
OutputFormat output_format_from_name(std::string_view name);

// Structured reports are JSON Lines: one object per (group, class) with the
// stable fields group, class, order, prime, lattice_size, class_members,
// error, conditions, theorem_A, theorem_B, mobius, remarks, double_counting,
// bounds, theorem_C_strict, skipped and, only on request, elapsed_ms.
nlohmann::json report_to_json(const VerificationReport& r, bool include_timing = false);

void write_reports(std::ostream& out, const std::vector<VerificationReport>& reports, OutputFormat fmt,
                   bool include_timing = false);

/// CSV header: group,class,check,verdict,witness_count
void write_reports_csv(std::ostream& out, const std::vector<VerificationReport>& reports);

void write_summary(std::ostream& out, const SuiteSummary& s);

void write_search(std::ostream& out, const SearchResult& result, OutputFormat fmt);

/// Documented condition failures. One rule per line:
///   <group> <class> <checks> [p=<prime>]
/// <checks> is a comma list. A field of '*' matches anything; a trailing '*'
/// matches by prefix. '#' starts a comment.
class Expectations {
 public:
  Expectations() = default;
  /// Throws IoError, ParseError.
  static Expectations load(const std::filesystem::path& path);
  static Expectations parse(std::string_view text);

  /// Rules used when no file is given.
  static Expectations defaults();

  bool expected(std::string_view group, std::string_view class_label, std::string_view check,
                unsigned prime = 0) const;
  bool empty() const noexcept { return rules_.empty(); }
  std::size_t size() const noexcept { return rules_.size(); }

 private:
  struct Rule {
    std::string group, class_label;
    std::vector<std::string> checks;
    unsigned prime = 0;
  };
  std::vector<Rule> rules_;
};

/// Failing (group, class, check) triples not covered by the expectations.
/// Theorem-level violations are never covered.
std::vector<std::string> unexpected_failures(const std::vector<VerificationReport>& reports,
                                             const Expectations& expectations);

}  // namespace plat
