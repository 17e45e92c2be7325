#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "morphotag/corpus.h"
#include "morphotag/lexicon.h"

namespace morphotag {

// Settings for the seeded corpus generator. Tags follow a sparse first-order
// grammar (each tag allows a few successors); words are drawn per tag from a
// Zipf-weighted list of word types whose lexicon readings include that tag.
struct SyntheticConfig {
  std::size_t tag_count = 50;
  std::size_t vocabulary = 2000;
  std::size_t sentences = 500;
  std::size_t min_length = 4;
  std::size_t max_length = 16;
  double ambiguity_rate = 0.3;         // fraction of word types with >= 2 readings
  std::size_t max_readings = 3;
  std::size_t successors_per_tag = 6;  // branching of the tag grammar
  double zipf_exponent = 1.0;
  double ending_noise = 0.3;           // chance a surface ending ignores its first tag

  // Throws ConfigError.
  void validate() const;
};

struct SyntheticData {
  Corpus corpus;
  Lexicon lexicon;  // exhaustive for the corpus, with lemmas
  // Rule DSL text for a cascade that is safe on every corpus drawn from the
  // same grammar: after a token whose candidates are exactly {x}, tags that
  // cannot follow x are removed.
  std::string rules;
};

SyntheticData generate_synthetic(const SyntheticConfig& config, std::uint64_t seed);

// First `count` sentences, rest.
std::pair<Corpus, Corpus> split_at(const Corpus& corpus, std::size_t count);

}  // namespace morphotag
