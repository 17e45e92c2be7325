#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "morphotag/corpus.h"
#include "morphotag/eval.h"
#include "morphotag/features.h"
#include "morphotag/lexicon.h"
#include "morphotag/rules.h"

namespace morphotag {

enum class RuleFilterMode { off, train_and_test, test_only };

struct GridRow {
  std::string id;
  bool lexicon_features = false;
  RuleFilterMode filter = RuleFilterMode::off;
  bool hard_rules = false;
  std::size_t beam = 1;
};

struct ExperimentSpec {
  std::string train, dev, test;
  std::string lexicon, rules;
  std::string output_dir;  // empty: results only go to the caller
  std::uint64_t seed = 1;
  std::size_t epochs = 10;
  std::size_t threads = 0;
  std::vector<GridRow> rows;

  void validate() const;  // throws ConfigError
};

// key=value lines (train, dev, test, lexicon, rules, output, seed, epochs,
// threads) and one line per grid row:
//   row: id=<id> lexicon=on|off filter=off|train+test|test-only hard=on|off beam=<n>
// Relative paths are resolved against `base_dir`. Throws FormatError.
ExperimentSpec parse_experiment_spec(std::istream& in, const std::string& base_dir = {},
                                     const std::string& source = {});
ExperimentSpec parse_experiment_spec_file(const std::string& path);

struct ExperimentData {
  Corpus train;
  std::optional<Corpus> dev;
  Corpus test;
  Lexicon lexicon;
  std::optional<RuleCascade> rules;
};

struct RowResult {
  std::string id;
  EvalReport report;
};

ExperimentData load_experiment_data(const ExperimentSpec& spec);

// One model per distinct (lexicon features, training-time filter) pair;
// rows sharing a pair reuse it. Errors are rethrown prefixed with the row id.
std::vector<RowResult> run_experiment(const ExperimentData& data, const std::vector<GridRow>& rows,
                                      std::uint64_t seed, std::size_t epochs, std::size_t threads = 0,
                                      const FeatureConfig& base_features = {},
                                      const std::function<void(const RowResult&)>& on_row = {});

// "row_id<TAB>sentence_acc<TAB>token_acc" lines, no header.
void write_results_table(const std::vector<RowResult>& results, std::ostream& out);

const char* to_string(RuleFilterMode mode) noexcept;

}  // namespace morphotag
