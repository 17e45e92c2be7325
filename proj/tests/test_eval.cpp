#include <doctest.h>

#include <sstream>

#include "morphotag/baselines.h"
#include "morphotag/error.h"
#include "morphotag/eval.h"
#include "support.h"

using namespace morphotag;

TEST_CASE("perfect prediction") {
  const Corpus gold = test::corpus_of({{{"a", "Ncmsi"}, {"b", "Vpitf-o1s"}}, {{"c", "Dd"}}});
  const auto r = evaluate(gold, gold_tags(gold), {"a"}, std::vector<std::size_t>{1, 2});
  CHECK(r.token_accuracy == 1.0);
  CHECK(r.sentence_accuracy == 1.0);
  CHECK(r.unknown_token_accuracy == 1.0);
  CHECK(r.unknown_tokens == 2);
  CHECK(r.projected_accuracy.at(1) == 1.0);
  CHECK(r.confusions.empty());
}

TEST_CASE("one error in ten tokens") {
  test::Rows rows(1);
  for (int i = 0; i < 10; ++i) rows[0].emplace_back("w" + std::to_string(i), "Ncmsi");
  const Corpus gold = test::corpus_of(rows);
  auto pred = gold_tags(gold);
  pred[0][3] = "Ncmsf";
  const auto r = evaluate(gold, pred, vocabulary(gold), std::vector<std::size_t>{1, 2});
  CHECK(r.token_accuracy == doctest::Approx(0.9));
  CHECK(r.sentence_accuracy == 0.0);
  CHECK(r.unknown_tokens == 0);
  CHECK(r.unknown_token_accuracy == 0.0);
  CHECK(r.projected_accuracy.at(1) == 1.0);
  CHECK(r.projected_accuracy.at(2) == 1.0);
  REQUIRE(r.confusions.size() == 1);
  CHECK(r.confusions[0] == ConfusionPair{"Ncmsi", "Ncmsf", 1});
}

TEST_CASE("untaggable counts as wrong and shapes must align") {
  const Corpus gold = test::corpus_of({{{"a", "Ncmsi"}, {"b", "Dd"}}});
  TagSequences pred{{std::string(kUntaggable), "Dd"}};
  CHECK(evaluate(gold, pred, {}).token_accuracy == 0.5);
  CHECK_THROWS_AS(evaluate(gold, TagSequences{{"Dd"}}, {}), ArgumentError);
  CHECK_THROWS_AS(evaluate(gold, TagSequences{}, {}), ArgumentError);
  CHECK_THROWS_AS(evaluate(gold, pred, {}, std::vector<std::size_t>{0}), ArgumentError);
}

TEST_CASE("confusion pairs are ordered by count then lexicographically") {
  const TagSequences gold{{"X", "X", "X", "A", "C", "B"}};
  const TagSequences pred{{"Y", "Y", "Y", "B", "D", "A"}};
  const auto top2 = confusion_pairs(gold, pred, 2);
  REQUIRE(top2.size() == 2);
  CHECK(top2[0] == ConfusionPair{"X", "Y", 3});
  CHECK(top2[1] == ConfusionPair{"A", "B", 1});
  CHECK(confusion_pairs(gold, pred).size() == 4);
  CHECK(confusion_pairs(gold, gold).empty());
}

TEST_CASE("chi-squared") {
  const auto r = chi_squared({10, 20, 30, 40});
  CHECK(r.statistic == doctest::Approx(0.79365).epsilon(1e-4));
  const auto zero = chi_squared({10, 20, 20, 40});
  CHECK(zero.statistic == doctest::Approx(0.0));
  CHECK(zero.p_value == doctest::Approx(1.0));
  CHECK(chi_squared({10, 30, 20, 40}).statistic == doctest::Approx(r.statistic));
  CHECK(chi_squared({30, 40, 10, 20}).statistic == doctest::Approx(r.statistic));
  CHECK_THROWS_AS(chi_squared({0, 0, 1, 2}), ArgumentError);
  CHECK_THROWS_AS(chi_squared({-1, 2, 1, 2}), ArgumentError);

  const auto table = accuracy_table(0.9465, 0.9798, 35021);
  CHECK(table.a == 1874);
  CHECK(table.c == 707);
  CHECK(chi_squared(table).p_value < 1e-4);
}

TEST_CASE("lexicon exhaustiveness audit") {
  const Lexicon lex = test::lexicon_of({{"a", {"X", "Y"}}, {"b", {"X"}}});
  CHECK(audit_lexicon_exhaustiveness(test::corpus_of({{{"a", "Y"}, {"b", "X"}}}), lex).empty());
  const auto missing = audit_lexicon_exhaustiveness(test::corpus_of({{{"c", "X"}}}), lex);
  REQUIRE(missing.size() == 1);
  CHECK(missing[0].unknown);
  const auto wrong = audit_lexicon_exhaustiveness(test::corpus_of({{{"b", "Y"}}}), lex);
  REQUIRE(wrong.size() == 1);
  CHECK(wrong[0].gold == "Y");
  CHECK_FALSE(wrong[0].unknown);
}

TEST_CASE("report serialization") {
  const Corpus gold = test::corpus_of({{{"a", "Ncmsi"}, {"b", "Dd"}}});
  const auto r = evaluate(gold, TagSequences{{"Ncmsf", "Dd"}}, {"a"}, std::vector<std::size_t>{1});
  std::ostringstream kv;
  write_report_kv(r, kv);
  CHECK(kv.str().find("token_accuracy=0.5\n") != std::string::npos);
  CHECK(kv.str().find("projected_accuracy.1=1\n") != std::string::npos);
  CHECK(kv.str().find("confusion.0=Ncmsi,Ncmsf,1\n") != std::string::npos);
  std::ostringstream text;
  write_report_text(r, text);
  CHECK(text.str().find("token accuracy   50.00%") != std::string::npos);
}
