#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "morphotag/corpus.h"
#include "morphotag/lexicon.h"

namespace morphotag {

struct ConfusionPair {
  std::string gold;
  std::string predicted;
  std::size_t count = 0;

  friend bool operator==(const ConfusionPair&, const ConfusionPair&) = default;
};

struct EvalReport {
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  std::size_t correct_tokens = 0;
  std::size_t correct_sentences = 0;
  std::size_t unknown_tokens = 0;  // surface never seen in training
  std::size_t correct_unknown = 0;

  double token_accuracy = 0.0;
  double sentence_accuracy = 0.0;
  double unknown_token_accuracy = 0.0;  // 0 when there are no unknown tokens
  std::map<std::size_t, double> projected_accuracy;  // by depth
  std::vector<ConfusionPair> confusions;             // count desc, then gold, then predicted
};

using TagSequences = std::vector<std::vector<std::string>>;

// Throws ArgumentError when `predicted` does not align with `gold`, or a
// depth is 0; DataError when a gold tag is missing.
EvalReport evaluate(const Corpus& gold, const TagSequences& predicted,
                    const std::unordered_set<std::string>& training_vocabulary,
                    std::span<const std::size_t> depths = {});

// Top-k confusions (k = 0 keeps all). Throws ArgumentError on misalignment.
std::vector<ConfusionPair> confusion_pairs(const TagSequences& gold, const TagSequences& predicted, std::size_t k = 0);

struct Contingency2x2 {
  double a = 0, b = 0;
  double c = 0, d = 0;
};

struct ChiSquared {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Pearson's test with one degree of freedom, no continuity correction.
// Throws ArgumentError on a negative cell or a zero row/column total.
ChiSquared chi_squared(const Contingency2x2& table);

// Errors/correct counts of two systems evaluated on the same number of tokens.
Contingency2x2 accuracy_table(double accuracy_a, double accuracy_b, std::size_t tokens);

struct LexiconViolation {
  std::size_t sentence = 0;
  std::size_t token = 0;
  std::string surface;
  std::string gold;
  bool unknown = false;  // surface absent from the lexicon

  friend bool operator==(const LexiconViolation&, const LexiconViolation&) = default;
};

std::vector<LexiconViolation> audit_lexicon_exhaustiveness(const Corpus& corpus, const Lexicon& lexicon);

// Human-readable block.
void write_report_text(const EvalReport& report, std::ostream& out, std::size_t top_confusions = 10);
// One "key=value" per line; confusions as confusion.<i>=gold,predicted,count.
void write_report_kv(const EvalReport& report, std::ostream& out);

}  // namespace morphotag
