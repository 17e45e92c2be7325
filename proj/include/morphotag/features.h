#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "morphotag/lexicon.h"

namespace morphotag {

class RuleCascade;

enum class LexiconFilter { none, rules };

struct FeatureConfig {
  std::size_t max_affix_len = 9;
  bool use_lexicon_features = true;
  LexiconFilter lexicon_filter = LexiconFilter::none;

  // Template groups.
  bool words = true;         // w0, w-2..w+2
  bool affixes = true;       // prefixes and suffixes of w0
  bool orthography = true;   // digit, hyphen, initial uppercase
  bool tag_context = true;   // t-2, t-1, t+1, t+2 and their pairs
  bool bilexical = true;     // (w0,t-1), (w0,t+1)
  bool word_bigrams = true;  // (w-1,w0), (w0,w+1)

  void validate() const;  // throws ConfigError
  friend bool operator==(const FeatureConfig&, const FeatureConfig&) = default;
};

// Tags visible around the current token. t-2 is visible only together with
// t-1, and t+2 only together with t+1.
struct NeighborTags {
  std::optional<std::string_view> left2, left1, right1, right2;
};

// A token inside a partially tagged sentence.
struct PartialContext {
  std::span<const std::string> surfaces;
  std::size_t position = 0;
  // Empty, or one entry per token; the entry at `position` must be empty.
  std::vector<std::optional<std::string>> assigned;

  NeighborTags neighbors() const;
};

// Assignment-independent features of token i. `lexicon_tags` is null for a
// token unknown to the lexicon; ignored unless use_lexicon_features.
void word_features(std::span<const std::string> surfaces, std::size_t i, const CandidateSet* lexicon_tags,
                   const FeatureConfig& cfg, std::vector<std::string>& out);

// Features over assigned neighbor tags; emits nothing for absent neighbors.
void context_features(std::string_view word, const NeighborTags& tags, const FeatureConfig& cfg,
                      std::vector<std::string>& out);

// Lexicon sets for a sentence, rule-filtered when cfg asks for it and a
// cascade is given. Unknown tokens yield std::nullopt.
std::vector<std::optional<CandidateSet>> lexicon_feature_sets(std::span<const std::string> surfaces,
                                                              const Lexicon& lexicon, const RuleCascade* rules,
                                                              const FeatureConfig& cfg);

// All features of ctx, sorted and duplicate-free.
std::vector<std::string> extract(const PartialContext& ctx, const Lexicon& lexicon, const RuleCascade* rules,
                                 const FeatureConfig& cfg);

using FeatureId = std::uint32_t;

// Sorted, duplicate-free feature ids with implicit value 1.
struct FeatureVector {
  std::vector<FeatureId> ids;
};

// Grow-only interning table. find() is safe to call concurrently as long as
// nobody interns at the same time.
class SymbolTable {
 public:
  FeatureId intern(const std::string& feature);
  std::optional<FeatureId> find(const std::string& feature) const;
  const std::string& name(FeatureId id) const { return names_.at(id); }
  std::size_t size() const noexcept { return names_.size(); }

  FeatureVector intern_all(std::span<const std::string> features);
  // Unseen strings are dropped (they carry no weight).
  FeatureVector find_all(std::span<const std::string> features) const;

 private:
  std::unordered_map<std::string, FeatureId> index_;
  std::vector<std::string> names_;
};

}  // namespace morphotag
