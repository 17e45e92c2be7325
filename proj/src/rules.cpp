#include "morphotag/rules.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <set>
#include <sstream>

#include "morphotag/error.h"
#include "morphotag/utf8.h"

namespace morphotag {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Comma list with "\," escapes; a lone "," is one literal comma.
std::vector<std::string> split_list(std::string_view text, char sep) {
  if (text.size() == 1 && text[0] == sep) return {std::string(1, sep)};
  std::vector<std::string> out;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\\' && i + 1 < text.size() && text[i + 1] == sep) {
      current += sep;
      ++i;
    } else if (text[i] == sep) {
      out.push_back(std::move(current));
      current.clear();
    } else {
      current += text[i];
    }
  }
  out.push_back(std::move(current));
  return out;
}

std::optional<int> parse_offset(const std::string& text) {
  static const std::pair<const char*, int> kOffsets[] = {{"-2", -2}, {"-1", -1}, {"0", 0},  {"+0", 0}, {"-0", 0},
                                                         {"+1", 1},  {"1", 1},   {"+2", 2}, {"2", 2}};
  for (const auto& [name, value] : kOffsets)
    if (text == name) return value;
  return std::nullopt;
}

bool is_number_literal(std::string_view s) {
  if (s.empty() || !utf8::all_digits(s.substr(0, 1)) || !utf8::all_digits(s.substr(s.size() - 1))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return (c >= '0' && c <= '9') || c == '.' || c == ','; });
}

bool in_sorted(const CandidateSet& set, const std::string& tag) { return std::binary_search(set.begin(), set.end(), tag); }

}  // namespace

TagPattern TagPattern::parse(std::string_view text) {
  TagPattern p;
  if (!text.empty() && text.back() == '*') {
    p.prefix = true;
    text.remove_suffix(1);
  }
  p.text = std::string(text);
  return p;
}

bool TagPattern::matches(std::string_view tag) const noexcept {
  if (prefix) return tag.substr(0, text.size()) == text;
  return tag == text;
}

void RuleCascade::add(Rule rule) {
  if (rule.id.empty()) throw ArgumentError("rule without id");
  if (rule.patterns.empty()) throw ArgumentError("rule '" + rule.id + "' has no tag patterns");
  if (std::none_of(rule.conditions.begin(), rule.conditions.end(), [](const Condition& c) { return c.offset == 0; }))
    throw ArgumentError("rule '" + rule.id + "' has no condition at offset 0");
  for (const auto& c : rule.conditions)
    if (c.offset < -2 || c.offset > 2) throw ArgumentError("rule '" + rule.id + "' uses an offset outside -2..+2");
  for (const auto& r : rules_)
    if (r.id == rule.id) throw DataError("duplicate rule id '" + rule.id + "'");
  rules_.push_back(std::move(rule));
}

RuleCascade parse_rules(std::istream& in, const std::string& source) {
  RuleCascade cascade;
  std::optional<Rule> open;
  bool has_action = false;
  std::size_t open_line = 0;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) { throw FormatError(what, line_no, source); };

  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    std::istringstream words(text);
    std::string keyword;
    words >> keyword;

    if (keyword == "NUMERAL-PREFIX") {
      if (open) fail("NUMERAL-PREFIX inside a rule block");
      std::string prefix;
      if (!(words >> prefix)) fail("NUMERAL-PREFIX needs a value");
      cascade.set_numeral_prefix(prefix);
    } else if (keyword == "RULE") {
      if (open) fail("RULE before END of rule '" + open->id + "'");
      std::string id, extra;
      if (!(words >> id) || (words >> extra)) fail("expected 'RULE <id>'");
      open = Rule{};
      open->id = id;
      has_action = false;
      open_line = line_no;
    } else if (keyword == "IF") {
      if (!open) fail("IF outside a rule block");
      if (has_action) fail("IF after THEN");
      std::string offset_text, kind_text, arg, extra;
      if (!(words >> offset_text >> kind_text)) fail("expected 'IF <offset> <condition>'");
      const auto offset = parse_offset(offset_text);
      if (!offset) fail("offset must be one of -2,-1,0,+1,+2; got '" + offset_text + "'");
      Condition c;
      c.offset = *offset;
      const bool has_arg = static_cast<bool>(words >> arg);
      if (words >> extra) fail("trailing text after condition");
      if (kind_text == "SURFACE-IN" || kind_text == "CLASS-IS" || kind_text == "CLASS-HAS" ||
          kind_text == "HAS-PREFIX") {
        if (!has_arg) fail(kind_text + " needs an argument");
        if (kind_text == "SURFACE-IN") {
          c.kind = ConditionKind::surface_in;
          c.values = split_list(arg, ',');
        } else if (kind_text == "HAS-PREFIX") {
          c.kind = ConditionKind::has_prefix;
          c.values = {arg};
        } else {
          c.kind = kind_text == "CLASS-IS" ? ConditionKind::class_is : ConditionKind::class_has;
          c.values = split_list(arg, ';');
          std::sort(c.values.begin(), c.values.end());
          c.values.erase(std::unique(c.values.begin(), c.values.end()), c.values.end());
        }
        if (std::any_of(c.values.begin(), c.values.end(), [](const auto& v) { return v.empty(); }))
          fail("empty item in " + kind_text + " list");
      } else if (kind_text == "SENT-INITIAL" || kind_text == "SENT-FINAL" || kind_text == "NUMERAL") {
        if (has_arg) fail(kind_text + " takes no argument");
        c.kind = kind_text == "SENT-INITIAL" ? ConditionKind::sentence_initial
                 : kind_text == "SENT-FINAL" ? ConditionKind::sentence_final
                                             : ConditionKind::numeral;
      } else {
        fail("unknown condition '" + kind_text + "'");
      }
      open->conditions.push_back(std::move(c));
    } else if (keyword == "THEN") {
      if (!open) fail("THEN outside a rule block");
      if (has_action) fail("second THEN in rule '" + open->id + "'");
      std::string action, patterns, extra;
      if (!(words >> action >> patterns) || (words >> extra)) fail("expected 'THEN <RETAIN|REMOVE> <patterns>'");
      if (action == "RETAIN") open->action = RuleAction::retain;
      else if (action == "REMOVE") open->action = RuleAction::remove;
      else fail("unknown action '" + action + "'");
      for (const auto& p : split_list(patterns, ',')) {
        if (p.empty() || p == "*") fail("empty tag pattern");
        open->patterns.push_back(TagPattern::parse(p));
      }
      has_action = true;
    } else if (keyword == "END") {
      if (!open) fail("END outside a rule block");
      if (!has_action) fail("rule '" + open->id + "' has no THEN");
      if (std::none_of(open->conditions.begin(), open->conditions.end(),
                       [](const Condition& c) { return c.offset == 0; }))
        fail("rule '" + open->id + "' needs a condition at offset 0");
      try {
        cascade.add(std::move(*open));
      } catch (const DataError& e) {
        throw DataError((source.empty() ? "line " : source + ":") + std::to_string(open_line) + ": " + e.what());
      }
      open.reset();
    } else {
      fail("unknown keyword '" + keyword + "'");
    }
  }
  if (open) throw FormatError("rule '" + open->id + "' is missing END", open_line, source);
  return cascade;
}

RuleCascade parse_rules_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_rules(in);
}

RuleCascade parse_rules_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open rules file '" + path + "'");
  return parse_rules(in, path);
}

bool condition_holds(const Condition& c, std::size_t position, std::span<const std::string> surfaces,
                     std::span<const CandidateSet> sets, std::string_view numeral_prefix) {
  const auto target = static_cast<long>(position) + c.offset;
  if (target < 0 || target >= static_cast<long>(surfaces.size())) return false;
  const auto i = static_cast<std::size_t>(target);
  const auto& set = sets[i];
  switch (c.kind) {
    case ConditionKind::surface_in:
      return std::find(c.values.begin(), c.values.end(), surfaces[i]) != c.values.end();
    case ConditionKind::class_is:
      return set == c.values;
    case ConditionKind::class_has:
      return std::all_of(c.values.begin(), c.values.end(), [&](const auto& t) { return in_sorted(set, t); });
    case ConditionKind::has_prefix:
      return std::any_of(set.begin(), set.end(), [&](const auto& t) { return t.starts_with(c.values[0]); });
    case ConditionKind::sentence_initial:
      return i == 0;
    case ConditionKind::sentence_final:
      return i + 1 == surfaces.size();
    case ConditionKind::numeral:
      if (is_number_literal(surfaces[i])) return true;
      return !set.empty() && !numeral_prefix.empty() &&
             std::all_of(set.begin(), set.end(), [&](const auto& t) { return t.starts_with(numeral_prefix); });
  }
  return false;
}

std::vector<CandidateSet> apply_cascade(const RuleCascade& cascade, std::span<const std::string> surfaces,
                                        std::vector<CandidateSet> candidates, std::vector<RuleFiring>* firings) {
  if (candidates.size() != surfaces.size()) throw ArgumentError("candidate sets do not align with the sentence");
  const auto& rules = cascade.rules();
  for (std::size_t r = 0; r < rules.size(); ++r) {
    const auto& rule = rules[r];
    for (std::size_t i = 0; i < surfaces.size(); ++i) {
      auto& set = candidates[i];
      if (set.empty()) continue;
      const bool holds = std::all_of(rule.conditions.begin(), rule.conditions.end(), [&](const Condition& c) {
        return condition_holds(c, i, surfaces, candidates, cascade.numeral_prefix());
      });
      if (!holds) continue;
      CandidateSet next;
      for (const auto& tag : set) {
        const bool hit = std::any_of(rule.patterns.begin(), rule.patterns.end(),
                                     [&](const TagPattern& p) { return p.matches(tag); });
        if (hit == (rule.action == RuleAction::retain)) next.push_back(tag);
      }
      if (next.empty() || next.size() == set.size()) continue;
      if (firings != nullptr) firings->push_back(RuleFiring{r, i, set, next});
      set = std::move(next);
    }
  }
  return candidates;
}

std::vector<RuleAudit> audit_precision(const RuleCascade& cascade, const Corpus& corpus, const Lexicon& lexicon) {
  std::vector<RuleAudit> report;
  report.reserve(cascade.size());
  for (const auto& rule : cascade.rules()) report.push_back(RuleAudit{rule.id, 0, 0});
  for (const auto& sentence : corpus.sentences) {
    const auto surfaces = sentence.surfaces();
    std::vector<RuleFiring> firings;
    apply_cascade(cascade, surfaces, lexicon_sets(surfaces, lexicon), &firings);
    for (const auto& f : firings) {
      auto& entry = report[f.rule];
      ++entry.fired;
      const auto& gold = sentence.tokens[f.token].gold;
      if (gold && in_sorted(f.before, gold->str()) && !in_sorted(f.after, gold->str())) ++entry.removed_gold;
    }
  }
  return report;
}

bool is_safe(std::span<const RuleAudit> report) {
  return std::all_of(report.begin(), report.end(), [](const RuleAudit& a) { return a.removed_gold == 0; });
}

}  // namespace morphotag
