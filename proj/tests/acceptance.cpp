// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "morphotag/baselines.h"
#include "morphotag/corpus.h"
#include "morphotag/eval.h"
#include "morphotag/experiment.h"
#include "morphotag/lemmatizer.h"
#include "morphotag/lexicon.h"
#include "morphotag/rules.h"
#include "morphotag/synthetic.h"
#include "morphotag/tagger.h"
#include "support.h"

using namespace morphotag;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failed expectations without stopping at the first one.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++count_;
  }
  Outcome done(std::string detail) const {
    if (count_ == 0) return {true, std::move(detail)};
    std::string msg = std::to_string(count_) + " failed";
    for (const auto& f : failures_) msg += "; " + f;
    return {false, msg};
  }

 private:
  std::vector<std::string> failures_;
  std::size_t count_ = 0;
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string decode_tags(const Model& m, const Corpus& c, const Lexicon& lex, const RuleCascade* rules,
                        TagSequences& out, std::size_t beam = 1) {
  DecodeOptions opts;
  opts.beam_size = beam;
  out.clear();
  for (auto& r : decode_corpus(c, m, lex, rules, opts, 1)) out.push_back(std::move(r.tags));
  std::string joined;
  for (const auto& s : out)
    for (const auto& t : s) joined += t + ' ';
  return joined;
}

std::string serialize(const Model& m) {
  std::ostringstream s;
  save_model(m, s);
  return s.str();
}

// ---------------------------------------------------------------- 1

// Stems crossed with suffix paradigms; every form of a stem shares one lemma.
Lexicon paradigm_lexicon(std::size_t min_triples, std::uint64_t seed) {
  struct Paradigm {
    std::string lemma_end;
    std::vector<std::pair<std::string, std::string>> forms;  // tag, ending
  };
  const std::vector<Paradigm> paradigms{
      {"а", {{"Vpitf-r1s", "а"}, {"Vpitf-r2s", "еш"}, {"Vpitf-r3s", "е"}, {"Vpitf-o1s", "ох"}, {"Vpitf-o3s", "е"}}},
      {"я", {{"Vpitf-r1s", "я"}, {"Vpitf-r2s", "иш"}, {"Vpitf-r3s", "и"}, {"Vpitf-o1s", "ях"}, {"Vpitf-o3s", "я"}}},
      {"", {{"Ncmsi", ""}, {"Ncmsh", "а"}, {"Ncmsf", "ът"}, {"Ncmpi", "ове"}, {"Ncmt", "а"}}},
      {"а", {{"Ncfsi", "а"}, {"Ncfsd", "ата"}, {"Ncfpi", "и"}, {"Ncfpd", "ите"}}},
      {"о", {{"Ncnsi", "о"}, {"Ncnsd", "ото"}, {"Ncnpi", "а"}, {"Ncnpd", "ата"}}},
      {"ен", {{"Amsi", "ен"}, {"Amsh", "ния"}, {"Afsi", "на"}, {"Ansi", "но"}, {"A-pi", "ни"}}},
  };
  const std::u32string letters = U"бвгдежзклмнпрстфхцчш";
  const std::u32string vowels = U"аеиоу";
  std::mt19937_64 rng(seed);
  auto encode = [](const std::u32string& s) {
    std::string out;
    for (char32_t c : s) {
      // Cyrillic block, two bytes each.
      out += static_cast<char>(0xC0 | (c >> 6));
      out += static_cast<char>(0x80 | (c & 0x3F));
    }
    return out;
  };
  Lexicon lex;
  std::set<std::pair<std::string, std::string>> seen;
  std::set<std::string> stems;
  std::size_t triples = 0;
  while (triples < min_triples) {
    std::u32string stem;
    const std::size_t len = 2 + rng() % 3;
    for (std::size_t i = 0; i < len; ++i) {
      stem += letters[rng() % letters.size()];
      stem += vowels[rng() % vowels.size()];
    }
    stem += letters[rng() % letters.size()];
    const std::string s = encode(stem);
    if (!stems.insert(s).second) continue;
    const auto& p = paradigms[rng() % paradigms.size()];
    for (const auto& [tag, ending] : p.forms) {
      const std::string form = s + ending;
      if (!seen.insert({form, tag}).second) continue;
      lex.add(form, tag, s + p.lemma_end);
      ++triples;
    }
  }
  return lex;
}

Outcome lemmatizer_roundtrip() {
  Check c;
  const Lexicon lex = paradigm_lexicon(12000, 17);
  const auto start = std::chrono::steady_clock::now();
  const LemmaRuleSet rules = generate_rules(lex);
  std::size_t total = 0, ok = 0;
  for (const auto* entry : lex.sorted_entries())
    for (const auto& r : entry->readings) {
      ++total;
      if (lemmatize(entry->surface, r.tag, rules) == *r.lemma) ++ok;
    }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(total >= 10000, "only " + std::to_string(total) + " triples");
  c.expect(ok == total, std::to_string(total - ok) + " wrong lemmas");
  c.expect(seconds < 5.0, "took " + fmt(seconds, 2) + " s");
  return c.done(std::to_string(ok) + "/" + std::to_string(total) + " triples, " + std::to_string(rules.size()) +
                " rules, " + fmt(seconds, 3) + " s");
}

// ---------------------------------------------------------------- 2

Outcome worked_lemma_example() {
  Check c;
  Lexicon lex;
  lex.add("четох", "Vpitf-o1s", "чета");
  lex.add("чета", "Vpitf-r1s", "чета");
  lex.add("четеш", "Vpitf-r2s", "чета");
  lex.add("плетох", "Vpitf-o1s", "плета");
  const LemmaRuleSet rules = generate_rules(lex);
  const LemmaRule* rule = rules.match("четох", "Vpitf-o1s");
  c.expect(rule != nullptr, "no rule matches");
  if (rule != nullptr) {
    c.expect(rule->old_end == "ох", "old_end '" + rule->old_end + "'");
    c.expect(rule->new_end == "а", "new_end '" + rule->new_end + "'");
  }
  c.expect(lemmatize("четох", "Vpitf-o1s", rules) == "чета", "четох");
  c.expect(lemmatize("метох", "Vpitf-o1s", rules) == "мета", "unseen метох");
  return c.done("четох/Vpitf-o1s -> чета via ох->а");
}

// ---------------------------------------------------------------- 3

std::vector<std::string> tied_max(const std::vector<std::string>& observed) {
  std::map<std::string, std::size_t> n;
  for (const auto& t : observed) ++n[t];
  std::size_t best = 0;
  for (const auto& [t, k] : n) best = std::max(best, k);
  std::vector<std::string> out;
  for (const auto& [t, k] : n)
    if (k == best) out.push_back(t);
  return out;
}

// Brute-force recount over the training tokens for one test surface.
std::vector<std::string> observed_tags(const Corpus& train, const std::string& surface) {
  std::vector<std::string> out;
  for (const auto& s : train.sentences)
    for (const auto& t : s.tokens)
      if (t.surface == surface) out.push_back(t.gold->str());
  return out;
}

std::string naive_mft(const Corpus& train, const std::string& surface, const UnknownStrategy& strategy,
                      std::uint64_t seed) {
  const auto seen = observed_tags(train, surface);
  if (!seen.empty()) {
    const auto tied = tied_max(seen);
    return tied[seeded_pick(seed, surface, tied.size())];
  }
  if (const auto* d = std::get_if<DefaultTag>(&strategy)) return d->tag;
  if (const auto* g = std::get_if<SuffixGuesser>(&strategy)) {
    for (const auto& [suffix, tag] : g->suffixes)
      if (surface.size() >= suffix.size() && surface.compare(surface.size() - suffix.size(), suffix.size(), suffix) == 0)
        return tag;
    return g->fallback;
  }
  return std::string(kUntaggable);
}

std::string class_key(const Lexicon& lex, const std::string& surface) {
  const auto* e = lex.find(surface);
  if (e == nullptr) return {};
  std::string key;
  for (const auto& t : e->tags()) key += (key.empty() ? "" : ";") + t;
  return key;
}

std::string naive_mft_lexicon(const Corpus& train, const Lexicon& lex, const std::string& surface,
                              std::uint64_t seed) {
  const auto seen = observed_tags(train, surface);
  if (!seen.empty()) {
    const auto tied = tied_max(seen);
    if (tied.size() == 1) return tied[0];
  }
  const auto* entry = lex.find(surface);
  if (entry == nullptr) {
    std::set<std::string> inventory;
    for (const auto& s : train.sentences)
      for (const auto& t : s.tokens) inventory.insert(t.gold->str());
    for (const auto* e : lex.sorted_entries())
      for (const auto& t : e->tags()) inventory.insert(t);
    const std::vector<std::string> inv(inventory.begin(), inventory.end());
    return inv[seeded_pick(seed, surface, inv.size())];
  }
  const auto tags = entry->tags();
  const std::string key = class_key(lex, surface);
  std::vector<std::string> in_class;
  for (const auto& s : train.sentences)
    for (const auto& t : s.tokens)
      if (class_key(lex, t.surface) == key &&
          std::find(tags.begin(), tags.end(), t.gold->str()) != tags.end())
        in_class.push_back(t.gold->str());
  if (!in_class.empty()) {
    const auto tied = tied_max(in_class);
    if (tied.size() == 1) return tied[0];
  }
  return tags[seeded_pick(seed, surface, tags.size())];
}

Outcome mft_oracle() {
  Check c;
  const std::vector<std::string> tags{"Ncmsi", "Ncmt", "Ncfsi", "Vpitf-o1s", "Dd", "Tx", "Ta", "I"};
  const std::vector<std::string> syllables{"а", "ба", "ви", "го", "дъ", "ет", "ах"};
  SuffixGuesser guesser;
  guesser.suffixes = {{"ах", "Dd"}, {"а", "Ncfsi"}};
  guesser.fallback = "Ncmsi";
  std::size_t tokens_checked = 0;
  for (std::uint64_t corpus_seed = 0; corpus_seed < 100; ++corpus_seed) {
    std::mt19937_64 rng(corpus_seed * 7919 + 1);
    std::vector<std::string> vocab;
    for (std::size_t i = 0; i < 25; ++i) {
      std::string w;
      for (std::size_t k = 0, n = 1 + rng() % 3; k < n; ++k) w += syllables[rng() % syllables.size()];
      vocab.push_back(w);
    }
    // Each word prefers a few tags, so counts tie now and then.
    std::map<std::string, std::vector<std::string>> readings;
    Lexicon lex;
    for (const auto& w : vocab) {
      auto& r = readings[w];
      if (!r.empty()) continue;
      for (std::size_t k = 0, n = 1 + rng() % 3; k < n; ++k) r.push_back(tags[rng() % tags.size()]);
      if (rng() % 5 != 0)
        for (const auto& t : r) lex.add(w, t);
    }
    auto sample = [&](std::size_t tokens) {
      Corpus corpus;
      std::size_t n = 0;
      while (n < tokens) {
        Sentence s;
        for (std::size_t k = 0, len = 1 + rng() % 10; k < len; ++k) {
          const auto& w = vocab[rng() % vocab.size()];
          const auto& r = readings[w];
          s.tokens.push_back({w, Tag(r[rng() % r.size()])});
        }
        n += s.size();
        corpus.sentences.push_back(std::move(s));
      }
      return corpus;
    };
    const Corpus train = sample(20 + rng() % 300);
    const Corpus test = sample(20 + rng() % 150);
    const std::uint64_t seed = rng();

    const MftTable plain = build_mft(train);
    const MftTable with_lex = build_mft(train, &lex);
    const std::vector<std::pair<std::string, UnknownStrategy>> strategies{
        {"fail", FailUnknown{}}, {"default", DefaultTag{"Ncmsi"}}, {"guesser", guesser}};
    for (const auto& sentence : test.sentences) {
      const auto words = sentence.surfaces();
      for (const auto& [name, strategy] : strategies) {
        const auto got = tag_mft(words, plain, strategy, seed);
        for (std::size_t i = 0; i < words.size(); ++i)
          c.expect(got[i] == naive_mft(train, words[i], strategy, seed),
                   "corpus " + std::to_string(corpus_seed) + " mft-" + name + " '" + words[i] + "'");
      }
      const auto got = tag_mft_lexicon(words, with_lex, lex, seed);
      for (std::size_t i = 0; i < words.size(); ++i) {
        c.expect(got[i] == naive_mft_lexicon(train, lex, words[i], seed),
                 "corpus " + std::to_string(corpus_seed) + " mft-lexicon '" + words[i] + "'");
        ++tokens_checked;
      }
    }
  }
  return c.done("100 corpora, " + std::to_string(tokens_checked) + " test tokens x 4 baselines");
}

// ---------------------------------------------------------------- 4

Outcome class_backoff() {
  Check c;
  Lexicon lex;
  for (const char* w : {"стола", "града", "часа", "моста"}) {
    lex.add(w, "Ncmt");
    lex.add(w, "Ncmsi");
  }
  const Corpus train = test::corpus_of({{{"два", "Mc-pi"}, {"стола", "Ncmt"}},
                                        {{"три", "Mc-pi"}, {"града", "Ncmt"}},
                                        {{"часа", "Ncmsi"}, {"два", "Mc-pi"}, {"часа", "Ncmt"}}});
  const MftTable table = build_mft(train, &lex);
  MftLexiconReport report;
  const std::vector<std::string> words{"моста"};
  const auto out = tag_mft_lexicon(words, table, lex, 1, &report);
  const auto cls = lex.lookup("моста");
  c.expect(cls && cls->key == "Ncmsi;Ncmt", "class key");
  c.expect(out[0] == "Ncmt", "got " + out[0]);
  c.expect(report.by_class == 1, "not resolved by the class table");
  return c.done("unseen моста with class {Ncmt;Ncmsi} -> " + out[0]);
}

// ---------------------------------------------------------------- 5

Outcome rule_engine() {
  Check c;
  std::mt19937_64 rng(2024);
  const std::vector<std::string> tags{"Ncmsi", "Ncmt", "Ncmsh", "Vpitf-o1s", "Vpitf-r3s", "Dd", "Tx", "Ta", "I", "Mc-pi"};
  const std::vector<std::string> words{"а", "б", "в", "г", "д", "е", "ж", "з", "7", ","};
  const std::vector<std::string> kinds{"SURFACE-IN", "CLASS-IS", "CLASS-HAS", "HAS-PREFIX", "SENT-INITIAL",
                                       "SENT-FINAL", "NUMERAL"};
  auto pick = [&](const std::vector<std::string>& v) { return v[rng() % v.size()]; };
  auto escape = [](const std::string& w) { return w == "," ? std::string("\\,") : w; };
  auto random_cascade = [&](std::size_t n) {
    std::ostringstream dsl;
    for (std::size_t r = 0; r < n; ++r) {
      dsl << "RULE r" << r << '\n';
      const std::size_t conds = 1 + rng() % 3;
      for (std::size_t k = 0; k < conds; ++k) {
        const int offset = k == 0 ? 0 : static_cast<int>(rng() % 5) - 2;
        const std::string kind = pick(kinds);
        dsl << "IF " << (offset > 0 ? "+" : "") << offset << ' ' << kind;
        if (kind == "SURFACE-IN") dsl << ' ' << escape(pick(words)) << ',' << escape(pick(words));
        else if (kind == "CLASS-IS" || kind == "CLASS-HAS") dsl << ' ' << pick(tags) << ';' << pick(tags);
        else if (kind == "HAS-PREFIX") dsl << ' ' << pick(tags).substr(0, 1 + rng() % 2);
        dsl << '\n';
      }
      dsl << "THEN " << (rng() % 2 ? "RETAIN " : "REMOVE ") << pick(tags) << ',' << pick(tags).substr(0, 2) << "*\n";
      dsl << "END\n";
    }
    return parse_rules_string(dsl.str());
  };
  Lexicon lex;
  for (const auto& w : words)
    for (std::size_t k = 0, n = rng() % 4; k < n; ++k) lex.add(w, pick(tags));

  std::size_t fired = 0;
  for (std::size_t i = 0; i < 10000; ++i) {
    const RuleCascade cascade = random_cascade(1 + rng() % 6);
    std::vector<std::string> sentence;
    for (std::size_t k = 0, len = 1 + rng() % 8; k < len; ++k) sentence.push_back(pick(words));
    const auto before = lexicon_sets(sentence, lex);
    std::vector<RuleFiring> firings;
    const auto after = apply_cascade(cascade, sentence, before, &firings);
    fired += firings.size();
    bool ok = after.size() == before.size();
    for (std::size_t k = 0; ok && k < before.size(); ++k) {
      ok = std::includes(before[k].begin(), before[k].end(), after[k].begin(), after[k].end()) &&
           after[k].empty() == before[k].empty();
    }
    c.expect(ok, "sentence " + std::to_string(i) + " not reduced correctly");
  }

  const Corpus design = read_vertical_file(test::data_path("design_corpus.vert"));
  const Lexicon design_lex = load_lexicon_file(test::data_path("design_lexicon.tsv"));
  const RuleCascade shipped = parse_rules_file(test::data_path("example_rules.txt"));
  const auto audit = audit_precision(shipped, design, design_lex);
  std::size_t removed = 0;
  for (const auto& a : audit) removed += a.removed_gold;
  c.expect(is_safe(audit), "shipped rules remove " + std::to_string(removed) + " gold tags");

  RuleCascade swapped;
  std::vector<Rule> reordered = shipped.rules();
  const auto inter = std::find_if(reordered.begin(), reordered.end(), [](const Rule& r) { return r.id == "ya-interjection"; });
  const auto pron = std::find_if(reordered.begin(), reordered.end(), [](const Rule& r) { return r.id == "ya-pronoun"; });
  c.expect(inter != reordered.end() && pron != reordered.end(), "я rules missing");
  if (inter != reordered.end() && pron != reordered.end()) std::iter_swap(inter, pron);
  for (auto& r : reordered) swapped.add(r);
  const std::vector<std::string> witness{"Я", ",", "колко", "хубаво", "!"};
  const auto original = apply_cascade(shipped, witness, lexicon_sets(witness, design_lex));
  const auto other = apply_cascade(swapped, witness, lexicon_sets(witness, design_lex));
  c.expect(original[0] == CandidateSet{"I"}, "original order does not keep I");
  c.expect(original != other, "swapping the я rules changed nothing");
  const std::string got = other[0].empty() ? "{}" : other[0][0];
  return c.done("10000 fuzzed sentences (" + std::to_string(fired) + " firings), shipped cascade removes " +
                std::to_string(removed) + " gold tags, Я: I vs " + got);
}

// ---------------------------------------------------------------- 6

Outcome learner_sanity() {
  Check c;
  SyntheticConfig cfg;
  cfg.tag_count = 50;
  cfg.ambiguity_rate = 0.3;
  cfg.sentences = 800;
  const auto data = generate_synthetic(cfg, 6);
  Corpus train_set;
  for (const auto& s : data.corpus.sentences) {
    if (train_set.token_count() >= 5000) break;
    train_set.sentences.push_back(s);
  }
  const RuleCascade rules = parse_rules_string(data.rules);
  TrainOptions opts;
  opts.epochs = 20;
  opts.seed = 3;
  std::size_t updates = 0, violations = 0;
  TrainHooks hooks;
  hooks.on_update = [&](const UpdateRecord& r) {
    ++updates;
    const bool ok = r.capped ? r.tau == r.aggressiveness : r.gap_after >= r.margin - 1e-9;
    if (!ok) ++violations;
  };
  const Model a = train(train_set, data.lexicon, &rules, opts, FeatureConfig{}, hooks);
  const Model b = train(train_set, data.lexicon, &rules, opts, FeatureConfig{});
  c.expect(violations == 0, std::to_string(violations) + " PA post-condition violations");
  c.expect(updates == a.meta.updates && updates > 0, "update log incomplete");
  c.expect(serialize(a) == serialize(b), "models differ between identical runs");

  TagSequences pa, pb;
  c.expect(decode_tags(a, train_set, data.lexicon, &rules, pa) == decode_tags(b, train_set, data.lexicon, &rules, pb),
           "decoding differs between identical runs");
  const auto report = evaluate(train_set, pa, vocabulary(train_set));
  c.expect(report.token_accuracy >= 0.995, "training accuracy " + fmt(report.token_accuracy));

  std::size_t steps = 0, bad_steps = 0;
  DecodeOptions trace_opts;
  trace_opts.keep_trace = true;
  for (const auto& s : train_set.sentences) {
    const auto r = decode(s.surfaces(), a, data.lexicon, &rules, trace_opts);
    for (const auto& step : r.trace) {
      ++steps;
      if (step.action_score < step.best_other) ++bad_steps;
    }
  }
  c.expect(bad_steps == 0, std::to_string(bad_steps) + " steps not easiest-first");
  c.expect(a.tags.size() == 50, "tag inventory " + std::to_string(a.tags.size()));
  return c.done(std::to_string(train_set.token_count()) + " tokens, training accuracy " +
                fmt(100 * report.token_accuracy, 2) + "%, " + std::to_string(updates) + " updates, " +
                std::to_string(steps) + " trace steps");
}

// ---------------------------------------------------------------- 7, 8

struct GridRun {
  std::map<std::string, EvalReport> rows;
};

const std::vector<GridRow>& directional_grid() {
  static const std::vector<GridRow> rows{
      {"1", false, RuleFilterMode::off, false, 1},           {"3", true, RuleFilterMode::off, false, 1},
      {"4", true, RuleFilterMode::train_and_test, false, 1}, {"6", true, RuleFilterMode::off, true, 1},
      {"7", true, RuleFilterMode::train_and_test, true, 1},  {"8", true, RuleFilterMode::train_and_test, true, 3},
  };
  return rows;
}

GridRun run_grid(std::uint64_t seed) {
  SyntheticConfig cfg;
  cfg.tag_count = 50;
  cfg.sentences = 700;
  const auto data = generate_synthetic(cfg, 100 + seed);
  ExperimentData ed;
  std::tie(ed.train, ed.test) = split_at(data.corpus, 500);
  ed.lexicon = data.lexicon;
  ed.rules = parse_rules_string(data.rules);
  GridRun run;
  for (auto& r : run_experiment(ed, directional_grid(), seed, 8, 1)) run.rows[r.id] = std::move(r.report);
  return run;
}

std::vector<GridRun>& grid_runs() {
  static std::vector<GridRun> runs = [] {
    std::vector<GridRun> out;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) out.push_back(run_grid(seed));
    return out;
  }();
  return runs;
}

Outcome directional_reproduction() {
  Check c;
  const auto& runs = grid_runs();
  std::size_t lexicon_wins = 0;
  std::map<std::string, double> mean;
  for (const auto& run : runs) {
    if (run.rows.at("3").token_accuracy > run.rows.at("1").token_accuracy) ++lexicon_wins;
    for (const auto& [id, r] : run.rows) mean[id] += r.token_accuracy / static_cast<double>(runs.size());
  }
  c.expect(lexicon_wins >= 4, "lexicon features helped on " + std::to_string(lexicon_wins) + "/5 seeds");
  c.expect(mean["3"] > mean["1"], "mean error not reduced by lexicon features");
  c.expect(mean["6"] >= mean["3"], "hard rules lowered mean accuracy (6 vs 3)");
  c.expect(mean["7"] >= mean["4"], "hard rules lowered mean accuracy (7 vs 4)");

  const GridRun again = run_grid(1);
  for (const auto& [id, r] : again.rows) {
    c.expect(r.token_accuracy == runs[0].rows.at(id).token_accuracy, "row " + id + " not reproducible");
    c.expect(r.sentence_accuracy == runs[0].rows.at(id).sentence_accuracy, "row " + id + " not reproducible");
  }
  std::string table;
  for (const auto& id : {"1", "3", "4", "6", "7", "8"}) table += std::string(table.empty() ? "" : " ") + id + "=" + fmt(100 * mean[id], 2);
  return c.done("mean token accuracy " + table + "; lexicon wins " + std::to_string(lexicon_wins) +
                "/5; beam1 " + fmt(100 * mean["7"], 2) + " vs beam3 " + fmt(100 * mean["8"], 2));
}

Outcome projection_monotonicity() {
  Check c;
  std::size_t reports = 0;
  for (const auto& run : grid_runs())
    for (const auto& [id, r] : run.rows) {
      ++reports;
      c.expect(r.projected_accuracy.at(1) >= r.token_accuracy, "row " + id + " depth 1");
      c.expect(r.projected_accuracy.at(2) >= r.token_accuracy, "row " + id + " depth 2");
      c.expect(r.projected_accuracy.at(1) >= r.projected_accuracy.at(2), "row " + id + " depth 1 < depth 2");
    }
  const auto& r = grid_runs()[0].rows.at("7");
  return c.done(std::to_string(reports) + " runs; e.g. " + fmt(100 * r.projected_accuracy.at(1), 2) + " >= " +
                fmt(100 * r.projected_accuracy.at(2), 2) + " >= " + fmt(100 * r.token_accuracy, 2));
}

// ---------------------------------------------------------------- 9

Outcome chi_squared_values() {
  Check c;
  // Hand computation from the marginals: rows 30/70, columns 40/60, n = 100.
  const double n = 100, expected[4] = {30 * 40 / n, 30 * 60 / n, 70 * 40 / n, 70 * 60 / n};
  const double observed[4] = {10, 20, 30, 40};
  double hand = 0;
  for (int i = 0; i < 4; ++i) hand += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
  const auto r = chi_squared({10, 20, 30, 40});
  c.expect(std::abs(r.statistic - hand) < 1e-9, "statistic differs from hand value");
  c.expect(std::abs(r.statistic - 0.7937) < 1e-3, "statistic " + fmt(r.statistic));
  const auto reported = chi_squared(accuracy_table(0.9465, 0.9798, 35021));
  c.expect(reported.p_value < 1e-4, "p = " + std::to_string(reported.p_value));
  const auto flat = chi_squared({10, 20, 20, 40});
  c.expect(std::abs(flat.statistic) < 1e-12, "proportional statistic " + std::to_string(flat.statistic));
  c.expect(std::abs(flat.p_value - 1.0) < 1e-12, "proportional p " + std::to_string(flat.p_value));
  return c.done("chi2(10,20;30,40) = " + fmt(r.statistic) + ", 94.65 vs 97.98 over 35021: chi2 = " +
                fmt(reported.statistic, 1) + ", p = " + std::to_string(reported.p_value));
}

// ---------------------------------------------------------------- 10

Outcome averaging_oracle() {
  Check c;
  const Corpus corpus = test::corpus_of({{{"a", "Ncmsi"}, {"b", "Dd"}, {"a", "Dd"}, {"c", "Tx"}},
                                         {{"b", "Ncmsi"}, {"c", "Ta"}, {"d", "Tx"}},
                                         {{"d", "Ta"}, {"a", "Ncmsi"}}});
  std::map<std::pair<FeatureId, TagId>, double> sum;
  std::size_t steps = 0;
  TrainHooks hooks;
  hooks.on_step = [&](std::size_t, const WeightTable& w) {
    ++steps;
    w.for_each_nonzero([&](FeatureId f, TagId t, double v) { sum[{f, t}] += v; });
  };
  TrainOptions opts;
  opts.epochs = 4;
  opts.aggressiveness = 0.5;
  const Model m = train(corpus, Lexicon{}, nullptr, opts, FeatureConfig{}, hooks);
  c.expect(m.meta.updates > 0 && m.meta.updates <= 200, std::to_string(m.meta.updates) + " updates");
  c.expect(steps == m.meta.steps, "step count");
  double worst = 0;
  for (std::size_t f = 0; f < m.symbols.size(); ++f)
    for (std::size_t t = 0; t < m.tags.size(); ++t) {
      const auto key = std::make_pair(static_cast<FeatureId>(f), static_cast<TagId>(t));
      const auto it = sum.find(key);
      const double naive = it == sum.end() ? 0.0 : it->second / static_cast<double>(steps);
      worst = std::max(worst, std::abs(m.averaged.get(key.first, key.second) - naive));
    }
  c.expect(worst <= 1e-9, "max deviation " + std::to_string(worst));
  return c.done(std::to_string(m.meta.updates) + " updates over " + std::to_string(steps) +
                " steps, max deviation " + std::to_string(worst));
}

// ---------------------------------------------------------------- 11

Outcome ambiguity_mechanics() {
  Check c;
  const Lexicon small = test::lexicon_of({{"a", {"X"}}, {"b", {"Y"}}, {"c", {"Z"}}, {"d", {"X", "Y", "Z"}}});
  const Corpus four = test::corpus_of({{{"a", "X"}, {"b", "Y"}, {"c", "Z"}, {"d", "X"}}});
  const auto base = ambiguity_stats(small, four);
  c.expect(base.ambiguous_fraction == 0.25 && base.mean_tags == 1.5,
           "got (" + fmt(base.ambiguous_fraction) + ", " + fmt(base.mean_tags) + ")");

  std::mt19937_64 rng(11);
  const std::vector<std::string> tags{"Ncmsi", "Ncmt", "Vpitf-o1s", "Dd", "Tx", "Ta", "I"};
  const std::vector<std::string> words{"а", "б", "в", "г", "д", "е"};
  std::size_t nontrivial = 0;
  for (int round = 0; round < 10; ++round) {
    Lexicon lex;
    std::map<std::string, std::vector<std::string>> readings;
    for (const auto& w : words)
      for (std::size_t k = 0, n = 1 + rng() % 3; k < n; ++k) {
        const auto& t = tags[rng() % tags.size()];
        lex.add(w, t);
        readings[w] = lex.find(w)->tags();
      }
    Corpus corpus;
    for (int s = 0; s < 20; ++s) {
      Sentence sentence;
      for (std::size_t k = 0, len = 2 + rng() % 6; k < len; ++k) {
        const auto& w = words[rng() % words.size()];
        const auto& r = readings[w];
        sentence.tokens.push_back({w, Tag(r[rng() % r.size()])});
      }
      corpus.sentences.push_back(std::move(sentence));
    }
    std::vector<Rule> candidates;
    for (int r = 0; r < 12; ++r) {
      Rule rule;
      rule.id = "r" + std::to_string(r);
      rule.conditions.push_back({0, ConditionKind::surface_in, {words[rng() % words.size()]}});
      if (rng() % 2) rule.conditions.push_back({-1, ConditionKind::has_prefix, {tags[rng() % tags.size()].substr(0, 1)}});
      rule.action = rng() % 2 ? RuleAction::retain : RuleAction::remove;
      rule.patterns.push_back(TagPattern::parse(tags[rng() % tags.size()]));
      candidates.push_back(std::move(rule));
    }
    // Drop rules until the cascade is safe on the corpus.
    RuleCascade cascade;
    for (;;) {
      cascade = RuleCascade{};
      for (const auto& r : candidates) cascade.add(r);
      const auto audit = audit_precision(cascade, corpus, lex);
      const auto bad = std::find_if(audit.begin(), audit.end(), [](const RuleAudit& a) { return a.removed_gold > 0; });
      if (bad == audit.end()) break;
      candidates.erase(candidates.begin() + (bad - audit.begin()));
    }
    const auto before = ambiguity_stats(lex, corpus);
    const auto after = ambiguity_stats(lex, corpus, &cascade);
    if (after.mean_tags < before.mean_tags) ++nontrivial;
    c.expect(after.ambiguous_fraction <= before.ambiguous_fraction, "round " + std::to_string(round) + " fraction");
    c.expect(after.mean_tags <= before.mean_tags, "round " + std::to_string(round) + " mean");
  }
  c.expect(nontrivial > 0, "no safe cascade changed anything");
  return c.done("(" + fmt(base.ambiguous_fraction, 2) + ", " + fmt(base.mean_tags, 2) + "); " +
                std::to_string(nontrivial) + "/10 safe cascades lowered ambiguity");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"lemmatizer round-trip", lemmatizer_roundtrip},
      {"worked lemma example", worked_lemma_example},
      {"MFT baselines match a brute-force recount", mft_oracle},
      {"tag-class backoff", class_backoff},
      {"rule engine", rule_engine},
      {"guided learner sanity", learner_sanity},
      {"directional grid reproduction", directional_reproduction},
      {"projection monotonicity", projection_monotonicity},
      {"chi-squared", chi_squared_values},
      {"averaged weights oracle", averaging_oracle},
      {"ambiguity statistics", ambiguity_mechanics},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
