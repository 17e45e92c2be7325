#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "morphotag/lexicon.h"
#include "morphotag/tagset.h"

namespace morphotag {

// Strip old_end from the wordform, then append new_end.
struct LemmaRule {
  std::string tag;
  std::string old_end;
  std::string new_end;
  std::size_t count = 0;  // wordforms of the source lexicon resolved by this rule

  std::string apply(std::string_view surface) const;
  friend bool operator==(const LemmaRule&, const LemmaRule&) = default;
};

// Per-tag trie over reversed old_end strings; lookup takes the rule with the
// longest old_end that ends the surface.
class LemmaRuleSet {
 public:
  // Throws DataError when (tag, old_end) is already present.
  void add(LemmaRule rule);

  const LemmaRule* match(std::string_view surface, std::string_view tag) const;
  const LemmaRule* find(std::string_view tag, std::string_view old_end) const;

  std::size_t size() const noexcept { return rules_.size(); }
  // Ordered by tag, then by old_end read right to left.
  std::vector<const LemmaRule*> rules() const;

 private:
  struct Node {
    std::map<char32_t, std::uint32_t> children;
    std::optional<std::size_t> rule;
  };
  std::map<std::string, std::vector<Node>, std::less<>> tries_;
  std::vector<LemmaRule> rules_;

  friend LemmaRuleSet generate_rules(const Lexicon& lexicon);
};

// Every reading must carry a lemma (DataError otherwise). A wordform's own
// rewrite is old_end = wordform minus its longest common prefix with the
// lemma, new_end = lemma minus that prefix. Rules shared by a whole suffix
// subtree are hoisted to the shortest old_end that still reproduces every
// lemma below it, so the set round-trips the lexicon exactly.
LemmaRuleSet generate_rules(const Lexicon& lexicon);

// Stored lemma when the lexicon has (surface, tag); otherwise the longest
// matching rule; otherwise the surface itself.
std::string lemmatize(std::string_view surface, std::string_view tag, const LemmaRuleSet& rules,
                      const Lexicon* lexicon = nullptr);

// Lines "tag<TAB>old_end<TAB>new_end<TAB>count".
void write_lemma_rules(const LemmaRuleSet& rules, std::ostream& out);
LemmaRuleSet read_lemma_rules(std::istream& in, const std::string& source = {});

struct LemmaImpact {
  std::size_t errors = 0;
  std::size_t non_problematic = 0;  // errors that keep every lemma-determining feature
  double fraction = 0.0;            // 0 when there are no errors
};

// Throws ArgumentError on a length mismatch, SchemaError on tags the schema
// rejects.
LemmaImpact lemma_impact(std::span<const std::string> gold, std::span<const std::string> predicted,
                         const TagSchema& schema);

}  // namespace morphotag
