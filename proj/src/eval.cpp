#include "morphotag/eval.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "morphotag/error.h"
#include "morphotag/tagset.h"

namespace morphotag {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

void check_aligned(const TagSequences& gold, const TagSequences& predicted) {
  if (gold.size() != predicted.size())
    throw ArgumentError("expected " + std::to_string(gold.size()) + " predicted sentences, got " +
                        std::to_string(predicted.size()));
  for (std::size_t s = 0; s < gold.size(); ++s)
    if (gold[s].size() != predicted[s].size())
      throw ArgumentError("sentence " + std::to_string(s + 1) + ": expected " + std::to_string(gold[s].size()) +
                          " predicted tags, got " + std::to_string(predicted[s].size()));
}

}  // namespace

std::vector<ConfusionPair> confusion_pairs(const TagSequences& gold, const TagSequences& predicted, std::size_t k) {
  check_aligned(gold, predicted);
  std::map<std::pair<std::string, std::string>, std::size_t> counts;
  for (std::size_t s = 0; s < gold.size(); ++s)
    for (std::size_t i = 0; i < gold[s].size(); ++i)
      if (gold[s][i] != predicted[s][i]) ++counts[{gold[s][i], predicted[s][i]}];
  std::vector<ConfusionPair> out;
  out.reserve(counts.size());
  for (const auto& [pair, count] : counts) out.push_back(ConfusionPair{pair.first, pair.second, count});
  std::stable_sort(out.begin(), out.end(), [](const ConfusionPair& x, const ConfusionPair& y) { return x.count > y.count; });
  if (k != 0 && out.size() > k) out.resize(k);
  return out;
}

EvalReport evaluate(const Corpus& gold, const TagSequences& predicted,
                    const std::unordered_set<std::string>& training_vocabulary, std::span<const std::size_t> depths) {
  const auto gold_seq = gold_tags(gold);
  check_aligned(gold_seq, predicted);
  for (auto d : depths)
    if (d == 0) throw ArgumentError("projection depth must be at least 1");

  EvalReport r;
  std::map<std::size_t, std::size_t> projected_correct;
  for (auto d : depths) projected_correct[d] = 0;
  r.sentences = gold_seq.size();
  for (std::size_t s = 0; s < gold_seq.size(); ++s) {
    bool all = true;
    for (std::size_t i = 0; i < gold_seq[s].size(); ++i) {
      const auto& g = gold_seq[s][i];
      const auto& p = predicted[s][i];
      const bool ok = g == p;
      ++r.tokens;
      r.correct_tokens += ok;
      all = all && ok;
      if (!training_vocabulary.contains(gold.sentences[s].tokens[i].surface)) {
        ++r.unknown_tokens;
        r.correct_unknown += ok;
      }
      for (auto& [depth, correct] : projected_correct)
        if (project(std::string_view(g), depth) == project(std::string_view(p), depth)) ++correct;
    }
    r.correct_sentences += all;
  }
  r.token_accuracy = ratio(r.correct_tokens, r.tokens);
  r.sentence_accuracy = ratio(r.correct_sentences, r.sentences);
  r.unknown_token_accuracy = ratio(r.correct_unknown, r.unknown_tokens);
  for (const auto& [depth, correct] : projected_correct) r.projected_accuracy[depth] = ratio(correct, r.tokens);
  r.confusions = confusion_pairs(gold_seq, predicted);
  return r;
}

ChiSquared chi_squared(const Contingency2x2& t) {
  const double cells[2][2] = {{t.a, t.b}, {t.c, t.d}};
  for (const auto& row : cells)
    for (double v : row)
      if (!(v >= 0.0) || !std::isfinite(v)) throw ArgumentError("contingency counts must be finite and non-negative");
  const double rows[2] = {t.a + t.b, t.c + t.d};
  const double cols[2] = {t.a + t.c, t.b + t.d};
  const double total = rows[0] + rows[1];
  if (rows[0] == 0 || rows[1] == 0 || cols[0] == 0 || cols[1] == 0)
    throw ArgumentError("contingency table has a zero row or column total");
  double stat = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double expected = rows[i] * cols[j] / total;
      const double diff = cells[i][j] - expected;
      stat += diff * diff / expected;
    }
  return ChiSquared{stat, std::erfc(std::sqrt(stat / 2.0))};
}

Contingency2x2 accuracy_table(double accuracy_a, double accuracy_b, std::size_t tokens) {
  for (double acc : {accuracy_a, accuracy_b})
    if (!(acc >= 0.0 && acc <= 1.0)) throw ArgumentError("accuracy must lie in [0, 1]");
  const double n = static_cast<double>(tokens);
  const double errors_a = std::round(n * (1.0 - accuracy_a));
  const double errors_b = std::round(n * (1.0 - accuracy_b));
  return Contingency2x2{errors_a, n - errors_a, errors_b, n - errors_b};
}

std::vector<LexiconViolation> audit_lexicon_exhaustiveness(const Corpus& corpus, const Lexicon& lexicon) {
  std::vector<LexiconViolation> out;
  for (std::size_t s = 0; s < corpus.sentences.size(); ++s) {
    const auto& tokens = corpus.sentences[s].tokens;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (!tokens[i].gold) throw DataError("token '" + tokens[i].surface + "' has no gold tag");
      const auto& gold = tokens[i].gold->str();
      const auto* entry = lexicon.find(tokens[i].surface);
      if (entry == nullptr) out.push_back(LexiconViolation{s, i, tokens[i].surface, gold, true});
      else if (entry->reading(gold) == nullptr) out.push_back(LexiconViolation{s, i, tokens[i].surface, gold, false});
    }
  }
  return out;
}

void write_report_text(const EvalReport& r, std::ostream& out, std::size_t top_confusions) {
  const auto pct = [](double v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(2) << 100.0 * v;
    return s.str();
  };
  out << "tokens           " << r.tokens << " (" << r.unknown_tokens << " unknown)\n";
  out << "sentences        " << r.sentences << '\n';
  out << "token accuracy   " << pct(r.token_accuracy) << "%\n";
  out << "sentence accuracy " << pct(r.sentence_accuracy) << "%\n";
  out << "unknown accuracy " << pct(r.unknown_token_accuracy) << "%\n";
  for (const auto& [depth, acc] : r.projected_accuracy) out << "depth-" << depth << " accuracy " << pct(acc) << "%\n";
  if (!r.confusions.empty()) {
    out << "confusions (count gold predicted)\n";
    for (std::size_t i = 0; i < r.confusions.size() && (top_confusions == 0 || i < top_confusions); ++i)
      out << "  " << r.confusions[i].count << ' ' << r.confusions[i].gold << ' ' << r.confusions[i].predicted << '\n';
  }
}

void write_report_kv(const EvalReport& r, std::ostream& out) {
  out << std::setprecision(17);
  out << "tokens=" << r.tokens << '\n';
  out << "sentences=" << r.sentences << '\n';
  out << "unknown_tokens=" << r.unknown_tokens << '\n';
  out << "correct_tokens=" << r.correct_tokens << '\n';
  out << "correct_sentences=" << r.correct_sentences << '\n';
  out << "token_accuracy=" << r.token_accuracy << '\n';
  out << "sentence_accuracy=" << r.sentence_accuracy << '\n';
  out << "unknown_token_accuracy=" << r.unknown_token_accuracy << '\n';
  for (const auto& [depth, acc] : r.projected_accuracy) out << "projected_accuracy." << depth << '=' << acc << '\n';
  for (std::size_t i = 0; i < r.confusions.size(); ++i)
    out << "confusion." << i << '=' << r.confusions[i].gold << ',' << r.confusions[i].predicted << ','
        << r.confusions[i].count << '\n';
}

}  // namespace morphotag
