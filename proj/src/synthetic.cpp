#include "morphotag/synthetic.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <unordered_set>

#include "morphotag/error.h"
#include "morphotag/utf8.h"

namespace morphotag {

namespace {

// Portable draws on top of mt19937_64 (whose output sequence is fixed by the
// standard, unlike the std distributions).
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Index drawn proportionally to the cumulative weights.
  std::size_t weighted(const std::vector<double>& cumulative) {
    const double r = unit() * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
    return std::min(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

std::vector<double> cumulative(const std::vector<double>& weights) {
  std::vector<double> out(weights.size());
  double sum = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) out[i] = sum += weights[i];
  return out;
}

const char32_t kConsonants[] = U"бвгдзклмнпрстфхцчшж";
const char32_t kVowels[] = U"аеиоуъя";
const char kClassLetters[] = "NVAPMDCTR";

std::string tag_name(std::size_t i) {
  const std::size_t classes = sizeof(kClassLetters) - 1;
  std::string name(1, kClassLetters[i % classes]);
  std::size_t rest = i / classes;
  for (int k = 0; k < 3; ++k) {
    name += static_cast<char>('a' + rest % 26);
    rest /= 26;
  }
  return name;
}

std::string syllables(Draw& draw, std::size_t count) {
  std::u32string s;
  for (std::size_t k = 0; k < count; ++k) {
    s += kConsonants[draw.index(std::char_traits<char32_t>::length(kConsonants))];
    s += kVowels[draw.index(std::char_traits<char32_t>::length(kVowels))];
  }
  return utf8::encode(s);
}

std::string ending(Draw& draw) {
  std::u32string s;
  if (draw.index(2) == 0) s += kVowels[draw.index(std::char_traits<char32_t>::length(kVowels))];
  s += kConsonants[draw.index(std::char_traits<char32_t>::length(kConsonants))];
  s += kVowels[draw.index(std::char_traits<char32_t>::length(kVowels))];
  return utf8::encode(s);
}

}  // namespace

void SyntheticConfig::validate() const {
  if (tag_count < 2) throw ConfigError("synthetic: tag_count must be >= 2");
  if (vocabulary == 0) throw ConfigError("synthetic: vocabulary must be positive");
  if (vocabulary < tag_count) throw ConfigError("synthetic: vocabulary must cover every tag");
  if (!(ambiguity_rate >= 0.0 && ambiguity_rate <= 1.0)) throw ConfigError("synthetic: ambiguity_rate outside [0,1]");
  if (ambiguity_rate > 0.0 && max_readings < 2) throw ConfigError("synthetic: ambiguity needs max_readings >= 2");
  if (max_readings > tag_count) throw ConfigError("synthetic: max_readings exceeds tag_count");
  if (min_length == 0 || min_length > max_length) throw ConfigError("synthetic: bad sentence length range");
  if (successors_per_tag == 0 || successors_per_tag > tag_count)
    throw ConfigError("synthetic: successors_per_tag outside 1..tag_count");
  if (!(ending_noise >= 0.0 && ending_noise <= 1.0)) throw ConfigError("synthetic: ending_noise outside [0,1]");
  if (!(zipf_exponent >= 0.0)) throw ConfigError("synthetic: zipf_exponent must be >= 0");
}

SyntheticData generate_synthetic(const SyntheticConfig& config, std::uint64_t seed) {
  config.validate();
  Draw draw(seed);
  const std::size_t T = config.tag_count;

  std::vector<std::string> tags(T);
  for (std::size_t t = 0; t < T; ++t) tags[t] = tag_name(t);

  // Tag grammar.
  std::vector<double> start_weights(T);
  for (auto& w : start_weights) w = 0.05 + draw.unit();
  const auto start_cdf = cumulative(start_weights);
  std::vector<std::vector<std::size_t>> successors(T);
  std::vector<std::vector<double>> successor_cdf(T);
  for (std::size_t t = 0; t < T; ++t) {
    std::vector<std::size_t> all(T);
    for (std::size_t k = 0; k < T; ++k) all[k] = k;
    draw.shuffle(all);
    successors[t].assign(all.begin(), all.begin() + static_cast<long>(config.successors_per_tag));
    std::sort(successors[t].begin(), successors[t].end());
    std::vector<double> w(config.successors_per_tag);
    for (auto& x : w) x = 0.05 + draw.unit();
    successor_cdf[t] = cumulative(w);
  }

  // Word types: readings, surfaces and lemmas.
  std::vector<std::string> tag_endings(T);
  for (auto& e : tag_endings) e = ending(draw);
  std::map<char, std::string> lemma_endings;
  for (const char* c = kClassLetters; *c != '\0'; ++c) lemma_endings[*c] = ending(draw);

  const std::size_t V = config.vocabulary;
  std::vector<std::size_t> order(V);
  for (std::size_t w = 0; w < V; ++w) order[w] = w;
  draw.shuffle(order);
  const auto ambiguous_count = static_cast<std::size_t>(std::llround(config.ambiguity_rate * static_cast<double>(V)));

  std::vector<std::vector<std::size_t>> readings(V);
  for (std::size_t k = 0; k < V; ++k) {
    const std::size_t w = order[k];
    readings[w].push_back(k % T);
    if (k < ambiguous_count) {
      const std::size_t extra = 1 + draw.index(config.max_readings - 1);
      while (readings[w].size() < 1 + extra) {
        const std::size_t t = draw.index(T);
        if (std::find(readings[w].begin(), readings[w].end(), t) == readings[w].end()) readings[w].push_back(t);
      }
    }
  }
  // Ambiguous words are interleaved with unambiguous ones in each tag's list.
  draw.shuffle(order);

  std::vector<std::string> surfaces(V);
  std::vector<std::string> stems(V);
  std::unordered_set<std::string> used;
  for (std::size_t w = 0; w < V; ++w) {
    const std::string& end = draw.unit() < config.ending_noise ? tag_endings[draw.index(T)] : tag_endings[readings[w][0]];
    for (std::size_t attempt = 0;; ++attempt) {
      stems[w] = syllables(draw, 1 + draw.index(2) + attempt / 8);
      surfaces[w] = stems[w] + end;
      if (used.insert(surfaces[w]).second) break;
    }
  }

  SyntheticData out;
  for (std::size_t w = 0; w < V; ++w)
    for (std::size_t t : readings[w])
      out.lexicon.add(surfaces[w], tags[t], stems[w] + lemma_endings[tags[t][0]]);

  std::vector<std::vector<std::size_t>> words_for_tag(T);
  for (std::size_t w : order)
    for (std::size_t t : readings[w]) words_for_tag[t].push_back(w);
  std::vector<std::vector<double>> word_cdf(T);
  for (std::size_t t = 0; t < T; ++t) {
    std::vector<double> weights(words_for_tag[t].size());
    for (std::size_t r = 0; r < weights.size(); ++r)
      weights[r] = 1.0 / std::pow(static_cast<double>(r + 1), config.zipf_exponent);
    word_cdf[t] = cumulative(weights);
  }

  // Sentences.
  for (std::size_t s = 0; s < config.sentences; ++s) {
    const std::size_t length = config.min_length + draw.index(config.max_length - config.min_length + 1);
    Sentence sentence;
    std::size_t tag = draw.weighted(start_cdf);
    for (std::size_t i = 0; i < length; ++i) {
      if (i > 0) tag = successors[tag][draw.weighted(successor_cdf[tag])];
      const std::size_t w = words_for_tag[tag][draw.weighted(word_cdf[tag])];
      sentence.tokens.push_back(Token{surfaces[w], Tag(tags[tag])});
    }
    out.corpus.sentences.push_back(std::move(sentence));
  }

  // Successor-constraint cascade.
  for (std::size_t x = 0; x < T; ++x) {
    std::map<char, std::vector<std::string>> banned;
    for (std::size_t t = 0; t < T; ++t)
      if (!std::binary_search(successors[x].begin(), successors[x].end(), t)) banned[tags[t][0]].push_back(tags[t]);
    for (const auto& [letter, list] : banned) {
      out.rules += "RULE after-" + tags[x] + "-" + letter + "\n";
      out.rules += "IF -1 CLASS-IS " + tags[x] + "\n";
      out.rules += std::string("IF 0 HAS-PREFIX ") + letter + "\n";
      out.rules += "THEN REMOVE ";
      for (std::size_t k = 0; k < list.size(); ++k) out.rules += (k ? "," : "") + list[k];
      out.rules += "\nEND\n";
    }
  }
  return out;
}

std::pair<Corpus, Corpus> split_at(const Corpus& corpus, std::size_t count) {
  count = std::min(count, corpus.sentences.size());
  Corpus head, tail;
  head.sentences.assign(corpus.sentences.begin(), corpus.sentences.begin() + static_cast<long>(count));
  tail.sentences.assign(corpus.sentences.begin() + static_cast<long>(count), corpus.sentences.end());
  return {std::move(head), std::move(tail)};
}

}  // namespace morphotag
