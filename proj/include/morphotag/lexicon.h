#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "morphotag/corpus.h"

namespace morphotag {

class RuleCascade;
class TagSchema;

struct Reading {
  std::string tag;
  std::optional<std::string> lemma;

  friend bool operator==(const Reading&, const Reading&) = default;
};

struct LexiconEntry {
  std::string surface;
  std::vector<Reading> readings;  // sorted by tag, tags distinct

  std::vector<std::string> tags() const;
  const Reading* reading(std::string_view tag) const;
};

// Canonical tag set: tags sorted lexicographically, key joins them with ';'.
struct TagClass {
  std::vector<std::string> tags;
  std::string key;

  static TagClass of(std::vector<std::string> tags);
  friend bool operator==(const TagClass&, const TagClass&) = default;
};

// Sorted, duplicate-free tag set offered for one token. Empty means the
// token is unknown to the lexicon.
using CandidateSet = std::vector<std::string>;

class Lexicon {
 public:
  // Accumulates a reading. Throws DataError when (surface, tag) is already
  // present with a different lemma.
  void add(const std::string& surface, const std::string& tag, std::optional<std::string> lemma = std::nullopt);

  const LexiconEntry* find(std::string_view surface) const;
  // Like find(), but retries the lowercased surface for sentence-initial
  // tokens when the lowercase fallback is enabled.
  const LexiconEntry* find(std::string_view surface, bool sentence_initial) const;
  std::optional<TagClass> lookup(std::string_view surface) const;

  void set_lowercase_fallback(bool enabled) noexcept { lowercase_fallback_ = enabled; }
  bool lowercase_fallback() const noexcept { return lowercase_fallback_; }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t reading_count() const noexcept;
  std::set<std::string> all_tags() const;
  // Entries in surface order, for deterministic iteration.
  std::vector<const LexiconEntry*> sorted_entries() const;

 private:
  std::unordered_map<std::string, LexiconEntry> entries_;
  bool lowercase_fallback_ = false;
};

// Lines "surface<TAB>tag[<TAB>lemma]"; blank lines are skipped.
Lexicon load_lexicon(std::istream& in, const std::string& source = {});
Lexicon load_lexicon_file(const std::string& path);
void write_lexicon(const Lexicon& lexicon, std::ostream& out);

// Lexicon tag set per token (empty for unknown surfaces).
std::vector<CandidateSet> lexicon_sets(std::span<const std::string> surfaces, const Lexicon& lexicon);

struct AmbiguityStats {
  double ambiguous_fraction = 0.0;  // tokens with more than one candidate
  double mean_tags = 0.0;           // candidates per token
  std::size_t tokens = 0;           // non-punctuation tokens counted

  friend bool operator==(const AmbiguityStats&, const AmbiguityStats&) = default;
};

// Over non-punctuation tokens (punctuation per `schema`, when given). Unknown
// surfaces count as one tag. With a cascade, the rule-filtered sets are
// measured instead of the raw lexicon sets.
AmbiguityStats ambiguity_stats(const Lexicon& lexicon, const Corpus& corpus, const RuleCascade* cascade = nullptr,
                               const TagSchema* schema = nullptr);

}  // namespace morphotag
