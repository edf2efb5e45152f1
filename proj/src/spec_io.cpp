#include "plat/spec_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "plat/error.hpp"

namespace plat {

void write_spec_record(std::ostream& out, const SpecRecord& record) {
  out << "group " << record.spec.name << '\n';
  out << "degree " << record.spec.degree << '\n';
  for (const auto& gen : record.spec.generators) {
    out << "gen";
    for (auto x : gen.images) out << ' ' << x;
    out << '\n';
  }
  if (!record.provenance.empty()) out << "provenance " << record.provenance << '\n';
  out << "end\n";
}

void write_spec_document(std::ostream& out, const SpecDocument& doc) {
  for (const auto& [key, value] : doc.header) out << key << ' ' << value << '\n';
  for (const auto& rec : doc.records) write_spec_record(out, rec);
}

namespace {

std::pair<std::string_view, std::string_view> split_key(std::string_view line) {
  const std::size_t sp = line.find(' ');
  if (sp == std::string_view::npos) return {line, {}};
  return {line.substr(0, sp), line.substr(sp + 1)};
}

}  // namespace

SpecDocument read_spec_document(std::istream& in, std::string_view source) {
  SpecDocument doc;
  std::string line;
  std::size_t line_no = 0;
  bool in_record = false;
  SpecRecord current;

  const auto fail = [&](const std::string& msg) -> Error {
    std::string where = std::string(source) + ":" + std::to_string(line_no);
    if (in_record) where += " (record '" + current.spec.name + "')";
    return Error(Errc::ParseError, where + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto [key, rest] = split_key(line);

    if (!in_record) {
      if (key == "group") {
        if (rest.empty()) throw fail("group record without a name");
        in_record = true;
        current = SpecRecord{};
        current.spec.name = std::string(rest);
      } else if (doc.records.empty()) {
        doc.header[std::string(key)] = std::string(rest);
      } else {
        throw fail("unexpected '" + std::string(key) + "' outside a record");
      }
      continue;
    }

    if (key == "degree") {
      std::size_t d = 0;
      auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), d);
      if (ec != std::errc() || ptr != rest.data() + rest.size() || d == 0) throw fail("bad degree");
      current.spec.degree = d;
    } else if (key == "gen") {
      if (current.spec.degree == 0) throw fail("gen before degree");
      Permutation p;
      std::istringstream ss{std::string(rest)};
      std::string tok;
      while (ss >> tok) {
        std::uint32_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size()) throw fail("malformed generator entry '" + tok + "'");
        p.images.push_back(v);
      }
      if (p.images.size() != current.spec.degree) throw fail("generator length differs from degree");
      if (!p.is_bijection()) throw fail("generator is not a permutation");
      current.spec.generators.push_back(std::move(p));
    } else if (key == "provenance") {
      current.provenance = std::string(rest);
    } else if (key == "end") {
      if (current.spec.generators.empty()) throw fail("record has no generators");
      doc.records.push_back(std::move(current));
      in_record = false;
    } else {
      throw fail("unknown key '" + std::string(key) + "'");
    }
  }
  if (in_record) throw fail("unterminated record");
  return doc;
}

}  // namespace plat
