#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "plat/group.hpp"

namespace plat {

// Text format, one record per group, UTF-8, zero-indexed images:
//
//   group <name>
//   degree <d>
//   gen <image of 0> <image of 1> ... <image of d-1>
//   provenance <free text>          (optional)
//   end
//
// Lines starting with '#' and blank lines are ignored. Before the first
// record, "<key> <value>" header lines are accepted.

struct SpecRecord {
  GroupSpec spec;
  std::string provenance;

  friend bool operator==(const SpecRecord&, const SpecRecord&) = default;
};

struct SpecDocument {
  std::map<std::string, std::string> header;
  std::vector<SpecRecord> records;
};

void write_spec_record(std::ostream& out, const SpecRecord& record);
void write_spec_document(std::ostream& out, const SpecDocument& doc);

/// Throws ParseError naming the line and record.
SpecDocument read_spec_document(std::istream& in, std::string_view source = "<input>");

}  // namespace plat
