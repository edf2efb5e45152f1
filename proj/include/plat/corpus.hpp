#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "plat/group.hpp"
#include "plat/lattice.hpp"

namespace plat {

struct CorpusEntry {
  GroupSpec spec;
  std::string provenance;

  friend bool operator==(const CorpusEntry&, const CorpusEntry&) = default;
};

struct Corpus {
  unsigned prime = 2;
  std::size_t max_order = 1;
  std::vector<CorpusEntry> entries;
  /// Dedup and load remarks; not persisted.
  std::vector<std::string> notes;
};

/// Isomorphism invariants. Equal for isomorphic groups; the converse is not claimed.
struct Fingerprint {
  std::size_t order = 0;
  std::size_t exponent = 0;
  std::size_t center_order = 0;
  std::size_t derived_order = 0;
  unsigned rank_d = 0;
  std::map<std::size_t, std::size_t> element_orders;
  std::vector<std::size_t> subgroups_per_level;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  friend auto operator<=>(const Fingerprint&, const Fingerprint&) = default;
  std::string to_string() const;
};

Fingerprint fingerprint(const SubgroupLattice& lat);

struct CorpusOptions {
  std::size_t order_cap = kDefaultOrderCap;
  std::size_t lattice_cap = kDefaultLatticeCap;
};

/// Every catalogue family of order <= max_order, every abelian type, and every
/// direct product of a nonabelian catalogue group with further catalogue
/// groups, deduplicated by fingerprint. Throws CapExceeded, BadParams.
Corpus builtin_corpus(unsigned p, std::size_t max_order, const CorpusOptions& opts = {});

/// Throws IoError.
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

/// Throws IoError, ParseError. An empty file yields an empty corpus with a note.
Corpus load_corpus(const std::filesystem::path& path, const CorpusOptions& opts = {});

/// Canonical file text for a corpus.
std::string corpus_text(const Corpus& corpus);
Corpus corpus_from_text(const std::string& text, std::string_view source, const CorpusOptions& opts = {});

}  // namespace plat
