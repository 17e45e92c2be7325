#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "morphotag/corpus.h"
#include "morphotag/lexicon.h"

namespace morphotag {

enum class ConditionKind {
  surface_in,        // SURFACE-IN w1,w2,...
  class_is,          // CLASS-IS t1;t2;...   candidate set equals the list
  class_has,         // CLASS-HAS t1;t2;...  candidate set contains the list
  has_prefix,        // HAS-PREFIX p         some candidate starts with p
  sentence_initial,  // SENT-INITIAL
  sentence_final,    // SENT-FINAL
  numeral,           // NUMERAL              digit string, or all candidates carry the numeral prefix
};

struct Condition {
  int offset = 0;  // -2..+2
  ConditionKind kind = ConditionKind::surface_in;
  std::vector<std::string> values;
};

// "Ncmt" matches exactly; "Vpitf-o*" matches by prefix.
struct TagPattern {
  std::string text;
  bool prefix = false;

  static TagPattern parse(std::string_view text);
  bool matches(std::string_view tag) const noexcept;
};

enum class RuleAction { retain, remove };

struct Rule {
  std::string id;
  std::vector<Condition> conditions;  // conjunctive; at least one at offset 0
  RuleAction action = RuleAction::retain;
  std::vector<TagPattern> patterns;   // non-empty
};

class RuleCascade {
 public:
  // Throws DataError on a duplicate id, ArgumentError on a rule that breaks
  // the predicate/pattern invariants.
  void add(Rule rule);

  const std::vector<Rule>& rules() const noexcept { return rules_; }
  std::size_t size() const noexcept { return rules_.size(); }
  bool empty() const noexcept { return rules_.empty(); }

  const std::string& numeral_prefix() const noexcept { return numeral_prefix_; }
  void set_numeral_prefix(std::string prefix) { numeral_prefix_ = std::move(prefix); }

 private:
  std::vector<Rule> rules_;
  std::string numeral_prefix_ = "M";
};

// Rule DSL. One block per rule, in cascade order:
//
//   RULE <id>
//   IF <offset> <SURFACE-IN w1,w2 | CLASS-IS t1;t2 | CLASS-HAS t1;t2 | HAS-PREFIX p
//               | SENT-INITIAL | SENT-FINAL | NUMERAL>
//   THEN <RETAIN|REMOVE> <p1,p2,...>
//   END
//
// Offsets are -2..+2. A lone "," or "\," inside a list is a literal comma.
// Outside blocks, "NUMERAL-PREFIX <p>" overrides the numeral tag prefix.
// Lines starting with '#' are comments.
RuleCascade parse_rules(std::istream& in, const std::string& source = {});
RuleCascade parse_rules_string(std::string_view text);
RuleCascade parse_rules_file(const std::string& path);

struct RuleFiring {
  std::size_t rule = 0;   // index into the cascade
  std::size_t token = 0;
  CandidateSet before;
  CandidateSet after;
};

bool condition_holds(const Condition& c, std::size_t position, std::span<const std::string> surfaces,
                     std::span<const CandidateSet> sets, std::string_view numeral_prefix);

// Applies every rule in order, each sweeping tokens left to right against the
// current (partially filtered) sets. A rule never empties a non-empty set;
// empty input sets (unknown tokens) stay empty.
std::vector<CandidateSet> apply_cascade(const RuleCascade& cascade, std::span<const std::string> surfaces,
                                        std::vector<CandidateSet> candidates,
                                        std::vector<RuleFiring>* firings = nullptr);

struct RuleAudit {
  std::string id;
  std::size_t fired = 0;
  std::size_t removed_gold = 0;
};

// Per rule, in cascade order. The cascade is safe on the corpus iff every
// removed_gold is zero.
std::vector<RuleAudit> audit_precision(const RuleCascade& cascade, const Corpus& corpus, const Lexicon& lexicon);
bool is_safe(std::span<const RuleAudit> report);

}  // namespace morphotag
