#include "morphotag/cli.h"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "morphotag/baselines.h"
#include "morphotag/corpus.h"
#include "morphotag/error.h"
#include "morphotag/eval.h"
#include "morphotag/experiment.h"
#include "morphotag/lemmatizer.h"
#include "morphotag/lexicon.h"
#include "morphotag/rules.h"
#include "morphotag/synthetic.h"
#include "morphotag/tagger.h"
#include "morphotag/tagset.h"

namespace morphotag {

namespace {

const std::map<std::string, bool> kOnOff{{"on", true}, {"off", false}};

std::string percent(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << 100.0 * v;
  return s.str();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  return out;
}

// Writes to `path`, or to `fallback` when the path is empty or "-".
template <typename Fn>
void with_output(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(fallback);
    return;
  }
  auto out = open_output(path);
  fn(out);
}

Corpus read_corpus(const std::string& path) {
  if (path == "-") return read_vertical(std::cin, "<stdin>");
  return read_vertical_file(path);
}

std::optional<RuleCascade> maybe_rules(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return parse_rules_file(path);
}

TagSchema read_schema(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open schema '" + path + "'");
  try {
    return TagSchema::parse(in);
  } catch (const FormatError& e) {
    throw e.with_source(path);
  }
}

Lexicon maybe_lexicon(const std::string& path) { return path.empty() ? Lexicon{} : load_lexicon_file(path); }

TagSequences tags_of(const std::vector<DecodeResult>& decoded) {
  TagSequences out;
  out.reserve(decoded.size());
  for (const auto& d : decoded) out.push_back(d.tags);
  return out;
}

Corpus with_tags(const Corpus& corpus, const TagSequences& tags) {
  Corpus out;
  out.sentences.reserve(corpus.sentences.size());
  for (std::size_t s = 0; s < corpus.sentences.size(); ++s) {
    Sentence sentence;
    for (std::size_t i = 0; i < corpus.sentences[s].tokens.size(); ++i) {
      const auto& tag = tags[s][i];
      Token token{corpus.sentences[s].tokens[i].surface, std::nullopt};
      if (Tag::is_well_formed(tag)) token.gold = Tag(tag);
      sentence.tokens.push_back(std::move(token));
    }
    out.sentences.push_back(std::move(sentence));
  }
  return out;
}

// ---- train ----------------------------------------------------------------

struct TrainArgs {
  std::string train, dev, lexicon, rules, model;
  std::string rules_mode = "off";
  bool lexicon_features = true;
  std::string candidates = "all";
  std::size_t beam = 1, epochs = 10, max_affix = 9;
  std::uint64_t seed = 1;
  double aggressiveness = 1.0, margin = 1.0;
};

void add_train(CLI::App& app, TrainArgs& a, std::function<void()>& action, std::ostream& out) {
  auto* cmd = app.add_subcommand("train", "Train a tagging model");
  cmd->add_option("--train", a.train, "Gold vertical training corpus")->required();
  cmd->add_option("--dev", a.dev, "Dev corpus for epoch selection");
  cmd->add_option("--lexicon", a.lexicon, "Lexicon (surface<TAB>tag[<TAB>lemma])");
  cmd->add_option("--rules", a.rules, "Rule cascade file");
  cmd->add_option("--rules-mode", a.rules_mode, "How rules filter lexicon features")
      ->check(CLI::IsMember({"off", "soft", "test-only"}));
  cmd->add_option("--lexicon-features", a.lexicon_features, "Lexicon tags as features (on|off)")
      ->transform(CLI::CheckedTransformer(kOnOff));
  cmd->add_option("--candidates", a.candidates, "Candidate tags during training")
      ->check(CLI::IsMember({"all", "lexicon", "lexicon-rules"}));
  cmd->add_option("--beam", a.beam, "Default decoding beam stored in the model")->check(CLI::PositiveNumber);
  cmd->add_option("--epochs", a.epochs, "Training epochs")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", a.seed, "Random seed");
  cmd->add_option("--aggressiveness", a.aggressiveness, "Cap on the update step size")->check(CLI::PositiveNumber);
  cmd->add_option("--margin", a.margin, "Required score margin")->check(CLI::PositiveNumber);
  cmd->add_option("--max-affix", a.max_affix, "Longest prefix/suffix feature");
  cmd->add_option("--model", a.model, "Output model file")->required();
  cmd->callback([&] {
    action = [&] {
      if (a.rules_mode != "off" && a.rules.empty())
        throw ConfigError("--rules-mode " + a.rules_mode + " needs --rules");
      if (a.rules_mode != "off" && !a.lexicon_features)
        throw ConfigError("--rules-mode " + a.rules_mode + " filters lexicon features, which are off");
      if (a.candidates != "all" && a.lexicon.empty()) throw ConfigError("--candidates " + a.candidates + " needs --lexicon");
      if (a.candidates == "lexicon-rules" && a.rules.empty()) throw ConfigError("--candidates lexicon-rules needs --rules");

      const Corpus corpus = read_corpus(a.train);
      const std::optional<Corpus> dev = a.dev.empty() ? std::nullopt : std::optional(read_vertical_file(a.dev));
      const Lexicon lexicon = maybe_lexicon(a.lexicon);
      const auto rules = maybe_rules(a.rules);

      FeatureConfig features;
      features.max_affix_len = a.max_affix;
      features.use_lexicon_features = a.lexicon_features;
      features.lexicon_filter = a.rules_mode == "soft" ? LexiconFilter::rules : LexiconFilter::none;
      TrainOptions options;
      options.epochs = a.epochs;
      options.seed = a.seed;
      options.aggressiveness = a.aggressiveness;
      options.margin = a.margin;
      options.candidate_source = *parse_candidate_source(a.candidates);
      TrainHooks hooks;
      hooks.on_epoch = [&](std::size_t epoch, double acc) {
        out << "epoch " << epoch << " training accuracy " << percent(acc) << "%\n";
      };
      Model model = train(corpus, lexicon, rules ? &*rules : nullptr, options, features, hooks, dev ? &*dev : nullptr);
      model.default_beam = a.beam;
      if (a.rules_mode == "test-only") model.decode_lexicon_filter = LexiconFilter::rules;
      save_model_file(model, a.model);
      out << "model " << a.model << ": " << model.tags.size() << " tags, " << model.symbols.size() << " features, "
          << model.meta.epochs << " epochs kept\n";
    };
  });
}

// ---- tag ------------------------------------------------------------------

struct TagArgs {
  std::string model, lexicon, rules, input, output;
  bool hard_rules = false;
  std::optional<std::size_t> beam;
  std::string candidates = "all";
  std::size_t threads = 0;
};

void add_tag(CLI::App& app, TagArgs& a, std::function<void()>& action, std::ostream& out) {
  auto* cmd = app.add_subcommand("tag", "Tag a vertical corpus");
  cmd->add_option("--model", a.model, "Model file")->required();
  cmd->add_option("--lexicon", a.lexicon, "Lexicon");
  cmd->add_option("--rules", a.rules, "Rule cascade file");
  cmd->add_option("--hard-rules", a.hard_rules, "Restrict outputs to rule-filtered sets (on|off)")
      ->transform(CLI::CheckedTransformer(kOnOff));
  cmd->add_option("--beam", a.beam, "Beam size (default: the model's)")->check(CLI::PositiveNumber);
  cmd->add_option("--candidates", a.candidates, "Candidate tags while decoding")
      ->check(CLI::IsMember({"all", "lexicon", "lexicon-rules"}));
  cmd->add_option("--threads", a.threads, "Decoding threads (0 = all cores)");
  cmd->add_option("input", a.input, "Input vertical file ('-' for stdin)")->required();
  cmd->add_option("output", a.output, "Output vertical file (default stdout)");
  cmd->callback([&] {
    action = [&] {
      if (a.hard_rules && a.rules.empty()) throw ConfigError("--hard-rules on needs --rules");
      if (a.candidates == "lexicon-rules" && a.rules.empty()) throw ConfigError("--candidates lexicon-rules needs --rules");
      const Model model = load_model_file(a.model);
      const bool filter_rules = model.features.lexicon_filter == LexiconFilter::rules ||
                                model.decode_lexicon_filter == LexiconFilter::rules;
      if (filter_rules && a.rules.empty()) throw ConfigError("this model filters lexicon features by rules; pass --rules");
      if (model.features.use_lexicon_features && a.lexicon.empty())
        throw ConfigError("this model uses lexicon features; pass --lexicon");
      const Lexicon lexicon = maybe_lexicon(a.lexicon);
      const auto rules = maybe_rules(a.rules);
      const Corpus input = read_corpus(a.input);
      DecodeOptions options;
      options.beam_size = a.beam.value_or(model.default_beam);
      options.candidate_source = *parse_candidate_source(a.candidates);
      options.hard_output_rules = a.hard_rules ? &*rules : nullptr;
      const auto decoded = decode_corpus(input, model, lexicon, rules ? &*rules : nullptr, options, a.threads);
      const Corpus tagged = with_tags(input, tags_of(decoded));
      with_output(a.output, out, [&](std::ostream& o) { write_vertical(tagged, o); });
    };
  });
}

// ---- evaluate -------------------------------------------------------------

struct EvaluateArgs {
  std::string gold, predicted, train, format = "text";
  std::vector<std::size_t> depths{1, 2};
  std::size_t top = 10;
};

void add_evaluate(CLI::App& app, EvaluateArgs& a, std::function<void()>& action, std::ostream& out) {
  auto* cmd = app.add_subcommand("evaluate", "Score a tagged corpus against gold");
  cmd->add_option("--gold", a.gold, "Gold vertical corpus")->required();
  cmd->add_option("--predicted", a.predicted, "Tagged vertical corpus")->required();
  cmd->add_option("--train", a.train, "Training corpus, defines unknown tokens");
  cmd->add_option("--depths", a.depths, "Projection depths")->delimiter(',')->check(CLI::PositiveNumber);
  cmd->add_option("--top", a.top, "Confusion pairs to list (0 = all)");
  cmd->add_option("--format", a.format, "Report format")->check(CLI::IsMember({"text", "kv"}));
  cmd->callback([&] {
    action = [&] {
      const Corpus gold = read_vertical_file(a.gold);
      const Corpus predicted = read_corpus(a.predicted);
      if (predicted.sentences.size() != gold.sentences.size())
        throw DataError("predicted corpus has " + std::to_string(predicted.sentences.size()) + " sentences, gold has " +
                        std::to_string(gold.sentences.size()));
      TagSequences tags;
      for (std::size_t s = 0; s < predicted.sentences.size(); ++s) {
        const auto& ps = predicted.sentences[s];
        if (ps.size() != gold.sentences[s].size())
          throw DataError("sentence " + std::to_string(s + 1) + " has a different token count in the predicted corpus");
        std::vector<std::string> row;
        for (const auto& t : ps.tokens) row.push_back(t.gold ? t.gold->str() : std::string(kUntaggable));
        tags.push_back(std::move(row));
      }
      const auto vocab = a.train.empty() ? std::unordered_set<std::string>{} : vocabulary(read_vertical_file(a.train));
      const auto report = evaluate(gold, tags, vocab, a.depths);
      if (a.format == "kv") write_report_kv(report, out);
      else write_report_text(report, out, a.top);
    };
  });
}

// ---- baseline -------------------------------------------------------------

struct BaselineArgs {
  std::string train, test, lexicon, guesser, output;
  std::string default_tag = "Ncmsi";
  std::uint64_t seed = 1;
};

void add_baseline(CLI::App& app, BaselineArgs& a, std::function<void()>& action, std::ostream& out) {
  auto* cmd = app.add_subcommand("baseline", "Most-frequent-tag baselines");
  cmd->require_subcommand(1);
  for (const char* name : {"mft-fail", "mft-default", "mft-guesser", "mft-lexicon"}) {
    auto* sub = cmd->add_subcommand(name, "");
    sub->add_option("--train", a.train, "Gold training corpus")->required();
    sub->add_option("--test", a.test, "Gold test corpus")->required();
    sub->add_option("--seed", a.seed, "Tie-break seed");
    sub->add_option("--output", a.output, "Write the tagged test corpus here");
    const std::string kind = name;
    if (kind == "mft-default") sub->add_option("--default-tag", a.default_tag, "Tag for unseen words");
    if (kind == "mft-guesser") sub->add_option("--guesser", a.guesser, "Suffix table")->required();
    if (kind == "mft-lexicon") sub->add_option("--lexicon", a.lexicon, "Lexicon");
    sub->callback([&, kind] {
      action = [&, kind] {
        if (kind == "mft-lexicon" && a.lexicon.empty()) throw ConfigError("mft-lexicon needs --lexicon");
        if (kind == "mft-default" && !Tag::is_well_formed(a.default_tag))
          throw ConfigError("malformed --default-tag '" + a.default_tag + "'");
        const Corpus train_corpus = read_vertical_file(a.train);
        const Corpus test = read_vertical_file(a.test);
        std::optional<Lexicon> lexicon;
        if (kind == "mft-lexicon") lexicon = load_lexicon_file(a.lexicon);
        const MftTable table = build_mft(train_corpus, lexicon ? &*lexicon : nullptr);
        UnknownStrategy strategy = FailUnknown{};
        if (kind == "mft-default") strategy = DefaultTag{a.default_tag};
        if (kind == "mft-guesser") strategy = load_guesser_file(a.guesser);
        TagSequences predicted;
        MftLexiconReport report;
        for (const auto& sentence : test.sentences) {
          const auto surfaces = sentence.surfaces();
          predicted.push_back(lexicon ? tag_mft_lexicon(surfaces, table, *lexicon, a.seed, &report)
                                      : tag_mft(surfaces, table, strategy, a.seed));
        }
        const auto eval = evaluate(test, predicted, vocabulary(train_corpus));
        out << "baseline\ttoken_acc\n" << kind << '\t' << percent(eval.token_accuracy) << '\n';
        if (lexicon)
          out << "# surface " << report.by_surface << ", class " << report.by_class << ", random in class "
              << report.random_in_class << ", random (not in lexicon) " << report.random_unlisted << '\n';
        if (!a.output.empty()) {
          auto o = open_output(a.output);
          write_vertical(with_tags(test, predicted), o);
        }
      };
    });
  }
}

// ---- experiment -----------------------------------------------------------

struct ExperimentArgs {
  std::string spec, output;
};

void add_experiment(CLI::App& app, ExperimentArgs& a, std::function<void()>& action, std::ostream& out) {
  auto* cmd = app.add_subcommand("experiment", "Run a configuration grid");
  cmd->add_option("--spec", a.spec, "Experiment spec file")->required();
  cmd->add_option("--output", a.output, "Results table (default: <output dir>/results.tsv, else stdout)");
  cmd->callback([&] {
    action = [&] {
      const ExperimentSpec spec = parse_experiment_spec_file(a.spec);
      spec.validate();
      std::vector<RowResult> results;
      if (!spec.rows.empty()) {
        const ExperimentData data = load_experiment_data(spec);
        results = run_experiment(data, spec.rows, spec.seed, spec.epochs, spec.threads);
      }
      std::string path = a.output;
      if (path.empty() && !spec.output_dir.empty()) {
        std::filesystem::create_directories(spec.output_dir);
        path = (std::filesystem::path(spec.output_dir) / "results.tsv").string();
      }
      with_output(path, out, [&](std::ostream& o) { write_results_table(results, o); });
      if (!path.empty() && path != "-") write_results_table(results, out);
    };
  });
}

// ---- lemmatize ------------------------------------------------------------

struct LemmatizeArgs {
  std::string lexicon, input, output, dump_rules, rules_in;
  bool roundtrip = false;
  bool use_lexicon = true;
};

void add_lemmatize(CLI::App& app, LemmatizeArgs& a, std::function<void()>& action, std::ostream& out) {
  auto* cmd = app.add_subcommand("lemmatize", "Suffix-rewrite lemmatization");
  cmd->add_option("--lexicon", a.lexicon, "Lexicon with lemmas");
  cmd->add_option("--rules-file", a.rules_in, "Load lemma rules instead of generating them");
  cmd->add_option("--dump-rules", a.dump_rules, "Write the rule set here");
  cmd->add_flag("--roundtrip", a.roundtrip, "Check every lexicon entry lemmatizes to its lemma");
  cmd->add_option("--lexicon-lookup", a.use_lexicon, "Return stored lemmas for known pairs (on|off)")
      ->transform(CLI::CheckedTransformer(kOnOff));
  cmd->add_option("--input", a.input, "Tagged vertical corpus to lemmatize");
  cmd->add_option("--output", a.output, "surface<TAB>tag<TAB>lemma output (default stdout)");
  cmd->callback([&] {
    action = [&] {
      if (a.lexicon.empty() && a.rules_in.empty()) throw ConfigError("lemmatize needs --lexicon or --rules-file");
      if (a.roundtrip && a.lexicon.empty()) throw ConfigError("--roundtrip needs --lexicon");
      std::optional<Lexicon> lexicon;
      if (!a.lexicon.empty()) lexicon = load_lexicon_file(a.lexicon);
      LemmaRuleSet rules;
      if (!a.rules_in.empty()) {
        std::ifstream in(a.rules_in, std::ios::binary);
        if (!in) throw ConfigError("cannot open '" + a.rules_in + "'");
        rules = read_lemma_rules(in, a.rules_in);
      } else {
        rules = generate_rules(*lexicon);
      }
      if (!a.dump_rules.empty()) {
        auto o = open_output(a.dump_rules);
        write_lemma_rules(rules, o);
      }
      if (a.roundtrip) {
        std::size_t total = 0, ok = 0;
        for (const auto* entry : lexicon->sorted_entries())
          for (const auto& r : entry->readings) {
            ++total;
            ok += r.lemma && lemmatize(entry->surface, r.tag, rules) == *r.lemma;
          }
        out << "rules " << rules.size() << "\nroundtrip " << ok << '/' << total << '\n';
        if (ok != total) throw DataError("lemma rules fail to reproduce " + std::to_string(total - ok) + " entries");
      }
      if (!a.input.empty()) {
        const Corpus corpus = read_corpus(a.input);
        const Lexicon* lookup = a.use_lexicon && lexicon ? &*lexicon : nullptr;
        with_output(a.output, out, [&](std::ostream& o) {
          for (const auto& sentence : corpus.sentences) {
            for (const auto& t : sentence.tokens) {
              if (!t.gold) throw DataError("token '" + t.surface + "' has no tag to lemmatize with");
              o << t.surface << '\t' << t.gold->str() << '\t' << lemmatize(t.surface, t.gold->str(), rules, lookup)
                << '\n';
            }
            o << '\n';
          }
        });
      }
      if (!a.roundtrip && a.input.empty() && a.dump_rules.empty()) out << "rules " << rules.size() << '\n';
    };
  });
}

// ---- stats ----------------------------------------------------------------

struct StatsArgs {
  std::string corpus, lexicon, rules, schema;
  bool ambiguity = false, audit = false, exhaustiveness = false;
};

void add_stats(CLI::App& app, StatsArgs& a, std::function<void()>& action, std::ostream& out) {
  auto* cmd = app.add_subcommand("stats", "Corpus, ambiguity and rule statistics");
  cmd->add_option("--corpus", a.corpus, "Gold vertical corpus")->required();
  cmd->add_option("--lexicon", a.lexicon, "Lexicon");
  cmd->add_option("--rules", a.rules, "Rule cascade file");
  cmd->add_option("--schema", a.schema, "Tag schema (punctuation is excluded from ambiguity counts)");
  cmd->add_flag("--ambiguity", a.ambiguity, "Ambiguity before/after rules");
  cmd->add_flag("--audit-rules", a.audit, "Per-rule precision audit");
  cmd->add_flag("--exhaustiveness", a.exhaustiveness, "Gold tags missing from the lexicon");
  cmd->callback([&] {
    action = [&] {
      if ((a.ambiguity || a.audit || a.exhaustiveness) && a.lexicon.empty())
        throw ConfigError("lexicon statistics need --lexicon");
      if (a.audit && a.rules.empty()) throw ConfigError("--audit-rules needs --rules");
      const Corpus corpus = read_corpus(a.corpus);
      const auto s = stats(corpus);
      out << "sentences " << s.sentences << "\ntokens " << s.tokens << "\ntypes " << s.types << "\ntags " << s.tag_types
          << '\n';
      if (a.lexicon.empty()) return;
      const Lexicon lexicon = load_lexicon_file(a.lexicon);
      const auto rules = maybe_rules(a.rules);
      const std::optional<TagSchema> schema =
          a.schema.empty() ? std::nullopt : std::optional(read_schema(a.schema));
      const TagSchema* sp = schema ? &*schema : nullptr;
      const bool all = !a.ambiguity && !a.audit && !a.exhaustiveness;
      if (a.ambiguity || all) {
        const auto before = ambiguity_stats(lexicon, corpus, nullptr, sp);
        out << "ambiguous_tokens " << percent(before.ambiguous_fraction) << "%\nmean_tags " << std::fixed
            << std::setprecision(3) << before.mean_tags << '\n';
        if (rules) {
          const auto after = ambiguity_stats(lexicon, corpus, &*rules, sp);
          out << "ambiguous_tokens_after_rules " << percent(after.ambiguous_fraction) << "%\nmean_tags_after_rules "
              << after.mean_tags << '\n';
        }
        out.unsetf(std::ios::floatfield);
      }
      if ((a.audit || all) && rules) {
        const auto report = audit_precision(*rules, corpus, lexicon);
        for (const auto& r : report) out << "rule " << r.id << " fired " << r.fired << " removed_gold " << r.removed_gold << '\n';
        out << "cascade " << (is_safe(report) ? "safe" : "unsafe") << '\n';
      }
      if (a.exhaustiveness || all) {
        const auto violations = audit_lexicon_exhaustiveness(corpus, lexicon);
        out << "exhaustiveness_violations " << violations.size() << '\n';
        for (const auto& v : violations)
          out << "  " << v.sentence + 1 << ':' << v.token + 1 << ' ' << v.surface << ' ' << v.gold
              << (v.unknown ? " (not in lexicon)" : "") << '\n';
      }
    };
  });
}

// ---- gen-synthetic --------------------------------------------------------

struct SyntheticArgs {
  SyntheticConfig config;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::size_t test_sentences = 0;
};

void add_synthetic(CLI::App& app, SyntheticArgs& a, std::function<void()>& action, std::ostream& out) {
  auto* cmd = app.add_subcommand("gen-synthetic", "Generate a seeded synthetic corpus, lexicon and rules");
  auto& c = a.config;
  cmd->add_option("--seed", a.seed, "Random seed");
  cmd->add_option("--out-dir", a.out_dir, "Output directory");
  cmd->add_option("--sentences", c.sentences, "Sentences in total");
  cmd->add_option("--test-sentences", a.test_sentences, "Hold out this many trailing sentences as test.vert");
  cmd->add_option("--tags", c.tag_count, "Tag inventory size");
  cmd->add_option("--vocabulary", c.vocabulary, "Word types");
  cmd->add_option("--ambiguity", c.ambiguity_rate, "Fraction of ambiguous word types");
  cmd->add_option("--min-length", c.min_length, "Shortest sentence");
  cmd->add_option("--max-length", c.max_length, "Longest sentence");
  cmd->callback([&] {
    action = [&] {
      a.config.validate();
      if (a.test_sentences > a.config.sentences) throw ConfigError("--test-sentences exceeds --sentences");
      const auto data = generate_synthetic(a.config, a.seed);
      const std::filesystem::path dir(a.out_dir);
      std::filesystem::create_directories(dir);
      if (a.test_sentences > 0) {
        const auto [train_part, test_part] = split_at(data.corpus, a.config.sentences - a.test_sentences);
        write_vertical_file(train_part, (dir / "train.vert").string());
        write_vertical_file(test_part, (dir / "test.vert").string());
      } else {
        write_vertical_file(data.corpus, (dir / "corpus.vert").string());
      }
      {
        auto o = open_output((dir / "lexicon.tsv").string());
        write_lexicon(data.lexicon, o);
      }
      {
        auto o = open_output((dir / "rules.txt").string());
        o << data.rules;
      }
      out << "wrote " << data.corpus.token_count() << " tokens, " << data.lexicon.size() << " lexicon entries to "
          << dir.string() << '\n';
    };
  });
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Morpho-syntactic tagging toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "morphotag 1.0");
  std::function<void()> action;
  TrainArgs train_args;
  TagArgs tag_args;
  EvaluateArgs eval_args;
  BaselineArgs baseline_args;
  ExperimentArgs experiment_args;
  LemmatizeArgs lemmatize_args;
  StatsArgs stats_args;
  SyntheticArgs synthetic_args;
  add_train(app, train_args, action, out);
  add_tag(app, tag_args, action, out);
  add_evaluate(app, eval_args, action, out);
  add_baseline(app, baseline_args, action, out);
  add_experiment(app, experiment_args, action, out);
  add_lemmatize(app, lemmatize_args, action, out);
  add_stats(app, stats_args, action, out);
  add_synthetic(app, synthetic_args, action, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 3;
  }
  try {
    if (action) action();
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 4;
  }
}

}  // namespace morphotag
