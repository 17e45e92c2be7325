#include <doctest.h>

#include <random>
#include <sstream>

#include "morphotag/error.h"
#include "morphotag/rules.h"
#include "support.h"

using namespace morphotag;

namespace {

const char* kNumeralRule =
    "RULE count-noun\n"
    "IF 0 CLASS-IS Ncmsh;Ncmt\n"
    "IF -1 NUMERAL\n"
    "THEN RETAIN Ncmt\n"
    "END\n";

std::vector<CandidateSet> run(const RuleCascade& cascade, const std::vector<std::string>& words, const Lexicon& lex) {
  return apply_cascade(cascade, words, lexicon_sets(words, lex));
}

}  // namespace

TEST_CASE("numeral rule") {
  const auto cascade = parse_rules_string(kNumeralRule);
  REQUIRE(cascade.size() == 1);
  const Lexicon lex = test::lexicon_of({{"стола", {"Ncmt", "Ncmsh"}}, {"два", {"Mcmp-l"}}, {"видях", {"Vpptf-o1s"}}});
  CHECK(run(cascade, {"два", "стола"}, lex)[1] == CandidateSet{"Ncmt"});
  CHECK(run(cascade, {"3", "стола"}, lex)[1] == CandidateSet{"Ncmt"});
  CHECK(run(cascade, {"1.500", "стола"}, lex)[1] == CandidateSet{"Ncmt"});
  CHECK(run(cascade, {"видях", "стола"}, lex)[1] == CandidateSet{"Ncmsh", "Ncmt"});
  CHECK(run(cascade, {"стола"}, lex)[0].size() == 2);

  auto custom = parse_rules_string(std::string("NUMERAL-PREFIX Q\n") + kNumeralRule);
  CHECK(custom.numeral_prefix() == "Q");
  CHECK(run(custom, {"два", "стола"}, lex)[1].size() == 2);
}

TEST_CASE("sample fragment from the shipped rules") {
  const auto cascade = parse_rules_file(test::data_path("example_rules.txt"));
  const Lexicon lex = load_lexicon_file(test::data_path("design_lexicon.tsv"));
  const std::vector<std::string> words{"Той", "обаче", "няма", "възможност", "да", "следи", "."};
  const auto out = run(cascade, words, lex);
  CHECK(out[1] == CandidateSet{"Dd"});
  CHECK(out[2].size() == 6);
  CHECK(out[4] == CandidateSet{"Tx"});
  CHECK(out[5] == CandidateSet{"Vpitf-r3s"});
}

TEST_CASE("cascade order matters for я") {
  const std::string interjection =
      "RULE ya-interjection\nIF 0 SURFACE-IN я,Я\nIF 0 SENT-INITIAL\nIF +1 SURFACE-IN ,\nTHEN RETAIN I\nEND\n";
  const std::string pronoun = "RULE ya-pronoun\nIF 0 SURFACE-IN я,Я\nTHEN RETAIN Ppetas3f\nEND\n";
  const Lexicon lex = test::lexicon_of({{"Я", {"I", "Ppetas3f"}}, {"я", {"I", "Ppetas3f"}}, {",", {"Punct"}}});
  const std::vector<std::string> witness{"Я", ",", "колко", "хубаво", "!"};

  const auto right = parse_rules_string(interjection + pronoun);
  const auto swapped = parse_rules_string(pronoun + interjection);
  CHECK(right.rules()[0].id == "ya-interjection");
  CHECK(run(right, witness, lex)[0] == CandidateSet{"I"});
  CHECK(run(swapped, witness, lex)[0] == CandidateSet{"Ppetas3f"});
  CHECK(run(right, {"Видях", "я", "."}, lex)[1] == CandidateSet{"Ppetas3f"});
}

TEST_CASE("literal comma and escapes in SURFACE-IN") {
  const auto a = parse_rules_string("RULE r\nIF 0 SURFACE-IN ,\nTHEN RETAIN X\nEND\n");
  CHECK(a.rules()[0].conditions[0].values == std::vector<std::string>{","});
  const auto b = parse_rules_string("RULE r\nIF 0 SURFACE-IN a,\\,,b\nTHEN RETAIN X\nEND\n");
  CHECK(b.rules()[0].conditions[0].values == std::vector<std::string>{"a", ",", "b"});
}

TEST_CASE("patterns") {
  CHECK(TagPattern::parse("Vpitf-o*").matches("Vpitf-o2s"));
  CHECK_FALSE(TagPattern::parse("Vpitf-o*").matches("Vpitf-r3s"));
  CHECK(TagPattern::parse("Ncmt").matches("Ncmt"));
  CHECK_FALSE(TagPattern::parse("Ncmt").matches("Ncmtx"));
}

TEST_CASE("CLASS-HAS, SENT-FINAL and the two-token window") {
  const Lexicon lex = test::lexicon_of({{"a", {"X", "Y", "Z"}}, {"b", {"Q"}}});
  const auto has = parse_rules_string("RULE r\nIF 0 CLASS-HAS X;Y\nIF 0 SENT-FINAL\nTHEN REMOVE Z\nEND\n");
  CHECK(run(has, {"b", "a"}, lex)[1] == CandidateSet{"X", "Y"});
  CHECK(run(has, {"a", "b"}, lex)[0].size() == 3);
  const auto far = parse_rules_string("RULE r\nIF 0 SURFACE-IN a\nIF -2 SURFACE-IN b\nTHEN RETAIN Y\nEND\n");
  CHECK(run(far, {"b", "b", "a"}, lex)[2] == CandidateSet{"Y"});
  CHECK(run(far, {"b", "a"}, lex)[1].size() == 3);
}

TEST_CASE("a rule never empties a set and unknown tokens stay empty") {
  const Lexicon lex = test::lexicon_of({{"a", {"X", "Y"}}});
  const auto cascade = parse_rules_string("RULE r\nIF 0 SURFACE-IN a,zz\nTHEN RETAIN Q\nEND\n");
  const auto out = run(cascade, {"a", "zz"}, lex);
  CHECK(out[0] == CandidateSet{"X", "Y"});
  CHECK(out[1].empty());
  CHECK(run(RuleCascade{}, {"a"}, lex)[0] == CandidateSet{"X", "Y"});
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_rules_string(text);
    } catch (const FormatError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("RULE r\nIF 3 SURFACE-IN a\nTHEN RETAIN X\nEND\n") == 2);
  CHECK(line_of("RULE r\nIF 0 WHATEVER a\nTHEN RETAIN X\nEND\n") == 2);
  CHECK(line_of("RULE r\nIF 0 SURFACE-IN a\nEND\n") == 3);
  CHECK(line_of("RULE r\nIF -1 SURFACE-IN a\nTHEN RETAIN X\nEND\n") == 4);
  CHECK(line_of("RULE r\nIF 0 SURFACE-IN a\nTHEN KEEP X\nEND\n") == 3);
  CHECK(line_of("\nRULE r\nIF 0 SURFACE-IN a\nTHEN RETAIN X\n") == 2);
  CHECK(line_of("IF 0 SURFACE-IN a\n") == 1);
  CHECK(line_of("RULE r\nIF 0 SENT-INITIAL x\nTHEN RETAIN X\nEND\n") == 2);
  CHECK(parse_rules_string("").empty());
  CHECK_THROWS_AS(parse_rules_string("RULE r\nIF 0 SURFACE-IN a\nTHEN RETAIN X\nEND\n"
                                     "RULE r\nIF 0 SURFACE-IN b\nTHEN RETAIN X\nEND\n"),
                  DataError);
}

TEST_CASE("programmatic rules are validated") {
  RuleCascade cascade;
  Rule no_anchor{"r", {Condition{-1, ConditionKind::sentence_initial, {}}}, RuleAction::retain, {TagPattern::parse("X")}};
  CHECK_THROWS_AS(cascade.add(no_anchor), ArgumentError);
  Rule no_pattern{"r", {Condition{0, ConditionKind::sentence_initial, {}}}, RuleAction::retain, {}};
  CHECK_THROWS_AS(cascade.add(no_pattern), ArgumentError);
}

TEST_CASE("audit on the design corpus") {
  const auto cascade = parse_rules_file(test::data_path("example_rules.txt"));
  const Lexicon lex = load_lexicon_file(test::data_path("design_lexicon.tsv"));
  const Corpus corpus = read_vertical_file(test::data_path("design_corpus.vert"));
  const auto report = audit_precision(cascade, corpus, lex);
  REQUIRE(report.size() == cascade.size());
  CHECK(is_safe(report));
  for (const auto& r : report) CHECK_MESSAGE(r.fired > 0, r.id);

  const auto wrong = parse_rules_string("RULE bad\nIF 0 SURFACE-IN стола\nTHEN RETAIN Ncmsh\nEND\n");
  const auto bad = audit_precision(wrong, corpus, lex);
  CHECK(bad[0].removed_gold == 2);
  CHECK_FALSE(is_safe(bad));
  CHECK(audit_precision(RuleCascade{}, corpus, lex).empty());
}

TEST_CASE("firing record and monotone ambiguity on random input") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> tags{"A", "B", "C", "D", "E"};
  Lexicon lex;
  for (int w = 0; w < 8; ++w)
    for (std::size_t t = 0; t < tags.size(); ++t)
      if (rng() % 2 == 0 || t == static_cast<std::size_t>(w) % tags.size()) lex.add("w" + std::to_string(w), tags[t]);
  const auto cascade = parse_rules_string(
      "RULE a\nIF 0 HAS-PREFIX A\nIF -1 CLASS-HAS B\nTHEN REMOVE A\nEND\n"
      "RULE b\nIF 0 CLASS-HAS C;D\nIF +1 SENT-FINAL\nTHEN RETAIN C\nEND\n"
      "RULE c\nIF 0 HAS-PREFIX E\nTHEN REMOVE B*,C*\nEND\n");
  for (int round = 0; round < 200; ++round) {
    std::vector<std::string> words;
    for (std::size_t i = 0, n = 1 + rng() % 8; i < n; ++i) words.push_back("w" + std::to_string(rng() % 8));
    const auto before = lexicon_sets(words, lex);
    std::vector<RuleFiring> firings;
    const auto after = apply_cascade(cascade, words, before, &firings);
    std::size_t total_before = 0, total_after = 0;
    for (std::size_t i = 0; i < words.size(); ++i) {
      total_before += before[i].size();
      total_after += after[i].size();
      CHECK_FALSE(after[i].empty());
      CHECK(std::includes(before[i].begin(), before[i].end(), after[i].begin(), after[i].end()));
    }
    CHECK(total_after <= total_before);
    for (const auto& f : firings) CHECK(f.after.size() < f.before.size());
  }
}
