#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "morphotag/corpus.h"
#include "morphotag/lexicon.h"

namespace morphotag {

// Placeholder emitted for tokens a baseline refuses to tag; never equal to a
// gold tag, so evaluation scores it as wrong.
inline constexpr std::string_view kUntaggable = "<UNTAGGABLE>";

using TagCounts = std::map<std::string, std::size_t>;

struct MftTable {
  std::unordered_map<std::string, TagCounts> by_surface;
  std::unordered_map<std::string, TagCounts> by_class;  // keyed by TagClass::key
  std::vector<std::string> inventory;                   // training and lexicon tags, sorted
  bool has_class_table = false;
};

// Class counts are gathered only for tokens whose surface is in the lexicon,
// and only for gold tags inside that surface's class.
MftTable build_mft(const Corpus& corpus, const Lexicon* lexicon = nullptr);

struct FailUnknown {};
struct DefaultTag {
  std::string tag;
};
// First listed suffix that ends the word wins; otherwise the default tag.
struct SuffixGuesser {
  std::vector<std::pair<std::string, std::string>> suffixes;
  std::string fallback;

  std::string guess(std::string_view surface) const;
};
using UnknownStrategy = std::variant<FailUnknown, DefaultTag, SuffixGuesser>;

// Lines "suffix<TAB>tag" in priority order, plus one "DEFAULT<TAB>tag" line.
SuffixGuesser load_guesser(std::istream& in, const std::string& source = {});
SuffixGuesser load_guesser_file(const std::string& path);

// Deterministic choice in [0, n) that depends only on (seed, key); keeps the
// baselines context-free and reproducible.
std::size_t seeded_pick(std::uint64_t seed, std::string_view key, std::size_t n);

// Unique most frequent tag, or a seeded pick among the tied ones; nullopt
// for empty counts.
std::optional<std::string> most_frequent(const TagCounts& counts, std::uint64_t seed, std::string_view key);
std::optional<std::string> unique_most_frequent(const TagCounts& counts);

std::vector<std::string> tag_mft(std::span<const std::string> surfaces, const MftTable& table,
                                 const UnknownStrategy& strategy, std::uint64_t seed);

struct MftLexiconReport {
  std::size_t by_surface = 0;        // step 1
  std::size_t by_class = 0;          // step 2
  std::size_t random_in_class = 0;   // step 3
  std::size_t random_unlisted = 0;   // surface missing from the lexicon
};

// (1) unique surface MFT; (2) unique MFT of the lexicon tag-class;
// (3) seeded pick from the tag-class, or from the whole inventory when the
// surface is not in the lexicon.
std::vector<std::string> tag_mft_lexicon(std::span<const std::string> surfaces, const MftTable& table,
                                         const Lexicon& lexicon, std::uint64_t seed,
                                         MftLexiconReport* report = nullptr);

}  // namespace morphotag
