#include "plat/corpus.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "plat/error.hpp"
#include "plat/families.hpp"
#include "plat/spec_io.hpp"

namespace plat {

namespace {

constexpr std::string_view kFormatTag = "pgroup-corpus-v1";

using Partition = std::vector<long long>;

// Partitions of r into parts <= max_part, largest parts first.
void partitions_into(long long r, long long max_part, Partition& prefix, std::vector<Partition>& out) {
  if (r == 0) {
    out.push_back(prefix);
    return;
  }
  for (long long part = std::min(r, max_part); part >= 1; --part) {
    prefix.push_back(part);
    partitions_into(r - part, part, prefix, out);
    prefix.pop_back();
  }
}

std::vector<Partition> partitions(long long r) {
  std::vector<Partition> out;
  Partition prefix;
  partitions_into(r, r, prefix, out);
  return out;
}

std::string abelian_recipe(unsigned p, const Partition& parts) {
  const std::string ps = std::to_string(p);
  if (parts.empty()) return "cyclic:" + ps + ",0";
  if (parts.size() == 1) return "cyclic:" + ps + "," + std::to_string(parts[0]);
  if (parts.front() == 1) return "elementary_abelian:" + ps + "," + std::to_string(parts.size());
  std::string s = "abelian:" + ps;
  for (auto k : parts) s += "," + std::to_string(k);
  return s;
}

struct Atom {
  std::string recipe;
  unsigned log_order;
};

// Nonabelian catalogue groups of order p^n, n <= max_log.
std::vector<Atom> nonabelian_atoms(unsigned p, unsigned max_log) {
  std::vector<Atom> atoms;
  const std::string ps = std::to_string(p);
  for (unsigned n = 3; n <= max_log; ++n) {
    if (p == 2) {
      atoms.push_back({"dihedral:" + std::to_string(n), n});
      atoms.push_back({"quaternion:" + std::to_string(n), n});
      if (n >= 4) atoms.push_back({"semidihedral:" + std::to_string(n), n});
      if (n >= 4) atoms.push_back({"modular:2," + std::to_string(n), n});
    } else {
      if (n == 3) atoms.push_back({"extraspecial:" + ps + ",1", n});
      if (n == 3) atoms.push_back({"extraspecial:" + ps + ",2", n});
      atoms.push_back({"modular:" + ps + "," + std::to_string(n), n});
    }
    if (p == 2 && n == 3) {
      atoms.push_back({"extraspecial:2,1", n});
      atoms.push_back({"extraspecial:2,2", n});
    }
    if (n == p + 1) atoms.push_back({"wreath:" + ps, n});
  }
  return atoms;
}

void collect_products(const std::vector<Atom>& atoms, std::size_t from, unsigned used, unsigned target,
                      std::vector<std::size_t>& chosen, unsigned p, std::vector<std::string>& out) {
  if (!chosen.empty()) {
    const long long rest = static_cast<long long>(target) - used;
    if (rest >= 0) {
      for (const auto& parts : partitions(rest)) {
        if (chosen.size() == 1 && parts.empty()) continue;  // the atom on its own
        std::string recipe;
        for (auto i : chosen) recipe += (recipe.empty() ? "" : "*") + atoms[i].recipe;
        if (!parts.empty()) recipe += "*" + abelian_recipe(p, parts);
        out.push_back(recipe);
      }
    }
  }
  for (std::size_t i = from; i < atoms.size(); ++i) {
    if (used + atoms[i].log_order > target) continue;
    chosen.push_back(i);
    collect_products(atoms, i, used + atoms[i].log_order, target, chosen, p, out);
    chosen.pop_back();
  }
}

}  // namespace

std::string Fingerprint::to_string() const {
  std::ostringstream ss;
  ss << "order=" << order << " exp=" << exponent << " |Z|=" << center_order << " |G'|=" << derived_order
     << " d=" << rank_d << " orders={";
  bool first = true;
  for (const auto& [o, c] : element_orders) {
    ss << (first ? "" : ",") << o << ":" << c;
    first = false;
  }
  ss << "} levels=[";
  for (std::size_t i = 0; i < subgroups_per_level.size(); ++i) ss << (i ? "," : "") << subgroups_per_level[i];
  ss << "]";
  return ss.str();
}

Fingerprint fingerprint(const SubgroupLattice& lat) {
  const Group& g = lat.group();
  const auto cd = characteristic_data(g, g.all());
  Fingerprint f;
  f.order = g.order();
  f.exponent = g.exponent();
  f.center_order = cd.center.count();
  f.derived_order = cd.derived.count();
  f.rank_d = cd.rank_d;
  for (std::size_t x = 0; x < g.order(); ++x) ++f.element_orders[g.element_order(static_cast<Elem>(x))];
  f.subgroups_per_level = lat.level_counts();
  return f;
}

Corpus builtin_corpus(unsigned p, std::size_t max_order, const CorpusOptions& opts) {
  if (!is_prime(p)) throw Error(Errc::BadParams, std::to_string(p) + " is not prime");
  if (max_order > opts.order_cap)
    throw Error(Errc::CapExceeded,
                "max order " + std::to_string(max_order) + " exceeds order cap " + std::to_string(opts.order_cap));
  unsigned max_log = 0;
  for (std::size_t o = p; o <= max_order; o *= p) ++max_log;

  std::vector<std::string> recipes;
  const auto atoms = nonabelian_atoms(p, max_log);
  for (unsigned n = 1; n <= max_log; ++n) {
    for (const auto& parts : partitions(n)) recipes.push_back(abelian_recipe(p, parts));
    for (const auto& atom : atoms)
      if (atom.log_order == n) recipes.push_back(atom.recipe);
    std::vector<std::size_t> chosen;
    std::vector<std::string> products;
    collect_products(atoms, 0, 0, n, chosen, p, products);
    for (auto& r : products) recipes.push_back(std::move(r));
  }

  Corpus corpus;
  corpus.prime = p;
  corpus.max_order = max_order;
  std::map<Fingerprint, std::string> kept;
  for (const auto& recipe : recipes) {
    GroupSpec spec = parse_family(recipe);
    auto lat = enumerate_lattice(build_group(spec, {opts.order_cap, p}), {opts.lattice_cap});
    auto fp = fingerprint(lat);
    auto [it, inserted] = kept.emplace(std::move(fp), spec.name);
    if (!inserted) {
      corpus.notes.push_back("dropped " + spec.name + " (" + recipe + "): fingerprint equals " + it->second);
      continue;
    }
    corpus.entries.push_back({std::move(spec), recipe});
  }
  return corpus;
}

std::string corpus_text(const Corpus& corpus) {
  std::ostringstream out;
  out << "format " << kFormatTag << '\n';
  out << "prime " << corpus.prime << '\n';
  out << "max_order " << corpus.max_order << '\n';
  for (const auto& e : corpus.entries) write_spec_record(out, {e.spec, e.provenance});
  return out.str();
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out << corpus_text(corpus);
  if (!out) throw Error(Errc::IoError, "write failed for " + path.string());
}

Corpus corpus_from_text(const std::string& text, std::string_view source, const CorpusOptions& opts) {
  Corpus corpus;
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    corpus.notes.push_back("warning: " + std::string(source) + " is empty");
    return corpus;
  }
  std::istringstream in(text);
  SpecDocument doc = read_spec_document(in, source);
  const auto header_num = [&](const std::string& key, std::size_t fallback) -> std::size_t {
    auto it = doc.header.find(key);
    if (it == doc.header.end()) return fallback;
    try {
      return static_cast<std::size_t>(std::stoull(it->second));
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, std::string(source) + ": bad header value for '" + key + "'");
    }
  };
  if (auto it = doc.header.find("format"); it != doc.header.end() && it->second != kFormatTag)
    throw Error(Errc::ParseError, std::string(source) + ": unsupported format '" + it->second + "'");
  corpus.prime = static_cast<unsigned>(header_num("prime", 2));
  corpus.max_order = header_num("max_order", 0);
  for (auto& rec : doc.records) {
    try {
      const Group g = build_group(rec.spec, {opts.order_cap, corpus.prime});
      if (g.prime() != corpus.prime)
        throw Error(Errc::NotPGroup, "is a " + std::to_string(g.prime()) + "-group, corpus prime is " +
                                         std::to_string(corpus.prime));
      if (g.order() > corpus.max_order) corpus.max_order = g.order();
    } catch (const Error& err) {
      throw Error(Errc::ParseError, std::string(source) + ": record '" + rec.spec.name + "': " + err.what());
    }
    corpus.entries.push_back({std::move(rec.spec), std::move(rec.provenance)});
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, const CorpusOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return corpus_from_text(ss.str(), path.string(), opts);
}

}  // namespace plat
