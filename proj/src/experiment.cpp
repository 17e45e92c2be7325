#include "morphotag/experiment.h"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "morphotag/error.h"
#include "morphotag/tagger.h"

namespace morphotag {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string resolve(const std::string& base, const std::string& path) {
  if (path.empty() || base.empty() || std::filesystem::path(path).is_absolute()) return path;
  return (std::filesystem::path(base) / path).string();
}

}  // namespace

const char* to_string(RuleFilterMode mode) noexcept {
  switch (mode) {
    case RuleFilterMode::off: return "off";
    case RuleFilterMode::train_and_test: return "train+test";
    case RuleFilterMode::test_only: return "test-only";
  }
  return "?";
}

void ExperimentSpec::validate() const {
  if (train.empty()) throw ConfigError("experiment spec lacks a train corpus");
  if (test.empty()) throw ConfigError("experiment spec lacks a test corpus");
  if (lexicon.empty()) throw ConfigError("experiment spec lacks a lexicon");
  if (epochs == 0) throw ConfigError("epochs must be at least 1");
  std::map<std::string, int> ids;
  for (const auto& row : rows) {
    if (row.id.empty()) throw ConfigError("grid row without id");
    if (++ids[row.id] > 1) throw ConfigError("duplicate grid row id '" + row.id + "'");
    if (row.beam == 0) throw ConfigError("row " + row.id + ": beam must be at least 1");
    if ((row.filter != RuleFilterMode::off || row.hard_rules) && rules.empty())
      throw ConfigError("row " + row.id + " uses rules but the spec names no rules file");
  }
}

ExperimentSpec parse_experiment_spec(std::istream& in, const std::string& base_dir, const std::string& source) {
  ExperimentSpec spec;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) { throw FormatError(what, line_no, source); };
  auto number = [&](const std::string& key, const std::string& text) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(text, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != text.size() || text[0] == '-') fail(key + " expects a non-negative integer, got '" + text + "'");
    return static_cast<std::uint64_t>(v);
  };
  auto on_off = [&](const std::string& key, const std::string& v) {
    if (v == "on") return true;
    if (v == "off") return false;
    fail(key + " expects on or off, got '" + v + "'");
    return false;
  };

  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    if (text.starts_with("row:")) {
      GridRow row;
      bool has_id = false;
      std::istringstream words(text.substr(4));
      for (std::string kv; words >> kv;) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) fail("expected key=value in row, got '" + kv + "'");
        const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
        if (key == "id") {
          if (value.empty()) fail("empty row id");
          row.id = value;
          has_id = true;
        } else if (key == "lexicon") {
          row.lexicon_features = on_off(key, value);
        } else if (key == "filter") {
          if (value == "off") row.filter = RuleFilterMode::off;
          else if (value == "train+test") row.filter = RuleFilterMode::train_and_test;
          else if (value == "test-only") row.filter = RuleFilterMode::test_only;
          else fail("filter expects off, train+test or test-only, got '" + value + "'");
        } else if (key == "hard") {
          row.hard_rules = on_off(key, value);
        } else if (key == "beam") {
          row.beam = number(key, value);
          if (row.beam == 0) fail("beam must be at least 1");
        } else {
          fail("unknown row setting '" + key + "'");
        }
      }
      if (!has_id) fail("row lacks id=");
      spec.rows.push_back(std::move(row));
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail("expected key=value, got '" + text + "'");
    const std::string key = trim(text.substr(0, eq)), value = trim(text.substr(eq + 1));
    if (key == "train") spec.train = resolve(base_dir, value);
    else if (key == "dev") spec.dev = resolve(base_dir, value);
    else if (key == "test") spec.test = resolve(base_dir, value);
    else if (key == "lexicon") spec.lexicon = resolve(base_dir, value);
    else if (key == "rules") spec.rules = resolve(base_dir, value);
    else if (key == "output") spec.output_dir = resolve(base_dir, value);
    else if (key == "seed") spec.seed = number(key, value);
    else if (key == "epochs") spec.epochs = number(key, value);
    else if (key == "threads") spec.threads = number(key, value);
    else fail("unknown setting '" + key + "'");
  }
  return spec;
}

ExperimentSpec parse_experiment_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open experiment spec '" + path + "'");
  return parse_experiment_spec(in, std::filesystem::path(path).parent_path().string(), path);
}

ExperimentData load_experiment_data(const ExperimentSpec& spec) {
  ExperimentData data;
  data.train = read_vertical_file(spec.train);
  if (!spec.dev.empty()) data.dev = read_vertical_file(spec.dev);
  data.test = read_vertical_file(spec.test);
  data.lexicon = load_lexicon_file(spec.lexicon);
  if (!spec.rules.empty()) data.rules = parse_rules_file(spec.rules);
  return data;
}

std::vector<RowResult> run_experiment(const ExperimentData& data, const std::vector<GridRow>& rows, std::uint64_t seed,
                                      std::size_t epochs, std::size_t threads, const FeatureConfig& base_features,
                                      const std::function<void(const RowResult&)>& on_row) {
  const RuleCascade* rules = data.rules ? &*data.rules : nullptr;
  const auto vocabulary = morphotag::vocabulary(data.train);
  const std::size_t depths[] = {1, 2};
  std::map<std::pair<bool, bool>, std::unique_ptr<Model>> models;
  std::vector<RowResult> results;
  for (const auto& row : rows) {
    try {
      if (row.beam == 0) throw ConfigError("beam must be at least 1");
      if ((row.filter != RuleFilterMode::off || row.hard_rules) && rules == nullptr)
        throw ConfigError("row needs rules but none were loaded");
      const bool train_filter = row.filter == RuleFilterMode::train_and_test;
      auto& model = models[{row.lexicon_features, train_filter}];
      if (!model) {
        FeatureConfig features = base_features;
        features.use_lexicon_features = row.lexicon_features;
        features.lexicon_filter = train_filter ? LexiconFilter::rules : LexiconFilter::none;
        TrainOptions options;
        options.epochs = epochs;
        options.seed = seed;
        model = std::make_unique<Model>(
            train(data.train, data.lexicon, rules, options, features, {}, data.dev ? &*data.dev : nullptr));
      }
      DecodeOptions decode_options;
      decode_options.beam_size = row.beam;
      decode_options.hard_output_rules = row.hard_rules ? rules : nullptr;
      if (row.filter == RuleFilterMode::test_only) decode_options.lexicon_filter = LexiconFilter::rules;
      const auto decoded = decode_corpus(data.test, *model, data.lexicon, rules, decode_options, threads);
      TagSequences predicted;
      predicted.reserve(decoded.size());
      for (const auto& d : decoded) predicted.push_back(d.tags);
      RowResult result{row.id, evaluate(data.test, predicted, vocabulary, depths)};
      if (on_row) on_row(result);
      results.push_back(std::move(result));
    } catch (const Error& e) {
      const std::string what = "row " + row.id + ": " + e.what();
      switch (e.kind()) {
        case ErrorKind::format: throw FormatError(what, 0, {});
        case ErrorKind::data: throw DataError(what);
        case ErrorKind::config: throw ConfigError(what);
        case ErrorKind::argument: throw ArgumentError(what);
        case ErrorKind::schema: throw SchemaError(what);
        default: throw InternalError(what);
      }
    }
  }
  return results;
}

void write_results_table(const std::vector<RowResult>& results, std::ostream& out) {
  out << std::fixed << std::setprecision(6);
  for (const auto& r : results) out << r.id << '\t' << r.report.sentence_accuracy << '\t' << r.report.token_accuracy << '\n';
}

}  // namespace morphotag
