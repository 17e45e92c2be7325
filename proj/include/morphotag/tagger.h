#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "morphotag/corpus.h"
#include "morphotag/features.h"
#include "morphotag/lexicon.h"
#include "morphotag/tagset.h"

namespace morphotag {

class RuleCascade;

enum class CandidateSource { all_tags, lexicon, lexicon_rule_filtered };

// Dense per-feature rows over the tag inventory, allocated on first write.
class WeightTable {
 public:
  WeightTable() = default;
  explicit WeightTable(std::size_t tag_count) : tag_count_(tag_count) {}

  std::size_t tag_count() const noexcept { return tag_count_; }
  std::size_t row_count() const noexcept { return rows_.size(); }

  double get(FeatureId f, TagId t) const noexcept {
    return f < rows_.size() && !rows_[f].empty() ? rows_[f][static_cast<std::size_t>(t)] : 0.0;
  }
  void add(FeatureId f, TagId t, double delta);
  void set(FeatureId f, TagId t, double value);
  double score(const FeatureVector& features, TagId t) const noexcept;

  // Calls fn(feature, tag, value) for every stored non-zero weight, ordered
  // by feature then tag.
  template <typename Fn>
  void for_each_nonzero(Fn&& fn) const {
    for (std::size_t f = 0; f < rows_.size(); ++f)
      for (std::size_t t = 0; t < rows_[f].size(); ++t)
        if (rows_[f][t] != 0.0) fn(static_cast<FeatureId>(f), static_cast<TagId>(t), rows_[f][t]);
  }

  friend bool operator==(const WeightTable&, const WeightTable&) = default;

 private:
  std::size_t tag_count_ = 0;
  std::vector<std::vector<double>> rows_;
};

struct TrainOptions {
  std::size_t epochs = 10;
  std::uint64_t seed = 1;       // sentence order is reshuffled from this every epoch
  double aggressiveness = 1.0;  // PA cap C on the step size
  double margin = 1.0;
  CandidateSource candidate_source = CandidateSource::all_tags;
  // Consecutive violations tolerated before the gold action is committed anyway.
  std::size_t max_updates_per_step = 20;

  void validate() const;  // throws ConfigError
};

struct TrainingMetadata {
  std::size_t epochs = 0;          // epochs actually kept (dev selection may stop early)
  std::uint64_t seed = 0;
  double aggressiveness = 0.0;
  double margin = 0.0;
  CandidateSource candidate_source = CandidateSource::all_tags;
  std::size_t steps = 0;            // learner invocations (commits plus updates)
  std::size_t updates = 0;
  std::vector<double> epoch_accuracy;  // share of steps whose selected action was correct

  friend bool operator==(const TrainingMetadata&, const TrainingMetadata&) = default;
};

struct Model {
  TagInventory tags;
  SymbolTable symbols;
  WeightTable weights;   // raw, as left by the last update
  WeightTable averaged;  // mean of the raw weights after every learner step
  FeatureConfig features;
  TrainingMetadata meta;
  std::size_t default_beam = 1;
  // Lexicon-feature filtering applied at decode time when it differs from
  // training ("test-only" rule filtering).
  std::optional<LexiconFilter> decode_lexicon_filter;
};

struct DecodeOptions {
  std::size_t beam_size = 1;
  CandidateSource candidate_source = CandidateSource::all_tags;
  // Hard constraints: tokens whose lexicon set this cascade reduces may only
  // take a tag from the reduced set.
  const RuleCascade* hard_output_rules = nullptr;
  std::optional<LexiconFilter> lexicon_filter;  // overrides the model's choice
  bool keep_trace = false;

  void validate() const;  // throws ConfigError
};

struct TraceStep {
  std::size_t position = 0;
  TagId tag = 0;
  double action_score = 0.0;
  // Best action score among the other positions available at this step.
  double best_other = -std::numeric_limits<double>::infinity();
  std::size_t hypotheses = 0;  // size of the span hypothesis set just formed
};

struct DecodeResult {
  std::vector<std::string> tags;
  double score = 0.0;
  std::vector<std::size_t> commit_order;
  std::vector<TraceStep> trace;  // filled when keep_trace
};

struct UpdateRecord {
  std::size_t step = 0;
  double tau = 0.0;
  bool capped = false;
  double loss = 0.0;          // margin + score(pred) - score(gold) before the update
  double norm_squared = 0.0;
  double gap_after = 0.0;     // score(gold) - score(pred) after the update
  double margin = 0.0;
  double aggressiveness = 0.0;
};

struct TrainHooks {
  std::function<void(const UpdateRecord&)> on_update;
  // Called after every learner step with the current raw weights.
  std::function<void(std::size_t step, const WeightTable& raw)> on_step;
  std::function<void(std::size_t epoch, double online_accuracy)> on_epoch;
};

// Guided learning: per sentence, repeatedly take the highest-scoring
// (position, tag) action over untagged positions; commit it when it is
// correct, otherwise run a passive-aggressive update that promotes the best
// gold action and demotes the chosen one, then re-score. With `dev`, the
// epoch with the best dev token accuracy is kept.
Model train(const Corpus& corpus, const Lexicon& lexicon, const RuleCascade* rules, const TrainOptions& options,
            const FeatureConfig& features, const TrainHooks& hooks = {}, const Corpus* dev = nullptr);

// Easiest-first bidirectional beam search with averaged weights.
DecodeResult decode(std::span<const std::string> surfaces, const Model& model, const Lexicon& lexicon,
                    const RuleCascade* rules, const DecodeOptions& options);

// Decodes every sentence, in parallel when threads != 1 (0 = hardware
// concurrency). Results come back in corpus order.
std::vector<DecodeResult> decode_corpus(const Corpus& corpus, const Model& model, const Lexicon& lexicon,
                                        const RuleCascade* rules, const DecodeOptions& options,
                                        std::size_t threads = 0);

// Sum of action scores obtained by committing `tags` in `commit_order`.
// Throws ArgumentError unless commit_order is a permutation of positions.
double rescore(std::span<const std::string> surfaces, std::span<const std::string> tags,
               std::span<const std::size_t> commit_order, const Model& model, const Lexicon& lexicon,
               const RuleCascade* rules, const DecodeOptions& options);

// Candidate tags per token as the decoder sees them.
std::vector<CandidateSet> decode_candidates(std::span<const std::string> surfaces, const Model& model,
                                            const Lexicon& lexicon, const RuleCascade* rules,
                                            const DecodeOptions& options);

// Versioned text container; doubles are written as hex floats so a reload
// decodes bit-identically. Throws FormatError on load.
void save_model(const Model& model, std::ostream& out);
Model load_model(std::istream& in, const std::string& source = {});
void save_model_file(const Model& model, const std::string& path);
Model load_model_file(const std::string& path);

const char* to_string(CandidateSource source) noexcept;
std::optional<CandidateSource> parse_candidate_source(std::string_view text);

}  // namespace morphotag
