#include "morphotag/lemmatizer.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "morphotag/error.h"
#include "morphotag/utf8.h"

namespace morphotag {

namespace {

struct Transform {
  std::size_t strip = 0;  // code points removed from the end
  std::u32string append;

  friend auto operator<=>(const Transform&, const Transform&) = default;
};

Transform transform_of(const std::u32string& form, const std::u32string& lemma) {
  std::size_t common = 0;
  while (common < form.size() && common < lemma.size() && form[common] == lemma[common]) ++common;
  return Transform{form.size() - common, lemma.substr(common)};
}

struct Word {
  std::u32string form;
  std::size_t transform = 0;
};

struct BuildNode {
  std::map<char32_t, std::uint32_t> children;
  std::vector<std::uint32_t> words;     // every word whose reversed form passes through
  std::optional<std::uint32_t> ends;    // word whose reversed form stops here
};

}  // namespace

std::string LemmaRule::apply(std::string_view surface) const {
  std::string out(surface.substr(0, surface.size() - std::min(surface.size(), old_end.size())));
  out += new_end;
  return out;
}

void LemmaRuleSet::add(LemmaRule rule) {
  auto& trie = tries_[rule.tag];
  if (trie.empty()) trie.emplace_back();
  const auto key = utf8::decode(rule.old_end);
  std::uint32_t node = 0;
  for (auto it = key.rbegin(); it != key.rend(); ++it) {
    const auto found = trie[node].children.find(*it);
    if (found != trie[node].children.end()) {
      node = found->second;
      continue;
    }
    const auto next = static_cast<std::uint32_t>(trie.size());
    trie[node].children.emplace(*it, next);
    trie.emplace_back();
    node = next;
  }
  if (trie[node].rule) {
    const auto& other = rules_[*trie[node].rule];
    throw DataError("conflicting lemma rules for tag " + rule.tag + ", ending '" + rule.old_end + "': '" +
                    other.new_end + "' and '" + rule.new_end + "'");
  }
  trie[node].rule = rules_.size();
  rules_.push_back(std::move(rule));
}

const LemmaRule* LemmaRuleSet::match(std::string_view surface, std::string_view tag) const {
  const auto found = tries_.find(tag);
  if (found == tries_.end()) return nullptr;
  const auto& trie = found->second;
  const auto key = utf8::decode(surface);
  std::uint32_t node = 0;
  const LemmaRule* best = trie[0].rule ? &rules_[*trie[0].rule] : nullptr;
  for (auto it = key.rbegin(); it != key.rend(); ++it) {
    const auto child = trie[node].children.find(*it);
    if (child == trie[node].children.end()) break;
    node = child->second;
    if (trie[node].rule) best = &rules_[*trie[node].rule];
  }
  return best;
}

const LemmaRule* LemmaRuleSet::find(std::string_view tag, std::string_view old_end) const {
  const auto found = tries_.find(tag);
  if (found == tries_.end()) return nullptr;
  const auto& trie = found->second;
  const auto key = utf8::decode(old_end);
  std::uint32_t node = 0;
  for (auto it = key.rbegin(); it != key.rend(); ++it) {
    const auto child = trie[node].children.find(*it);
    if (child == trie[node].children.end()) return nullptr;
    node = child->second;
  }
  return trie[node].rule ? &rules_[*trie[node].rule] : nullptr;
}

std::vector<const LemmaRule*> LemmaRuleSet::rules() const {
  std::vector<const LemmaRule*> out;
  for (const auto& [tag, trie] : tries_) {
    std::vector<std::uint32_t> stack{0};
    while (!stack.empty()) {
      const auto node = stack.back();
      stack.pop_back();
      if (trie[node].rule) out.push_back(&rules_[*trie[node].rule]);
      for (auto it = trie[node].children.rbegin(); it != trie[node].children.rend(); ++it) stack.push_back(it->second);
    }
  }
  return out;
}

LemmaRuleSet generate_rules(const Lexicon& lexicon) {
  std::map<std::string, std::vector<Word>> by_tag;
  std::vector<Transform> transforms;
  std::map<Transform, std::size_t> transform_ids;
  for (const auto* entry : lexicon.sorted_entries()) {
    for (const auto& reading : entry->readings) {
      if (!reading.lemma)
        throw DataError("lexicon reading '" + entry->surface + "' / " + reading.tag + " has no lemma");
      auto form = utf8::decode(entry->surface);
      auto t = transform_of(form, utf8::decode(*reading.lemma));
      const auto [it, inserted] = transform_ids.emplace(t, transforms.size());
      if (inserted) transforms.push_back(std::move(t));
      by_tag[reading.tag].push_back(Word{std::move(form), it->second});
    }
  }

  LemmaRuleSet set;
  for (const auto& [tag, words] : by_tag) {
    std::vector<BuildNode> trie(1);
    for (std::uint32_t w = 0; w < words.size(); ++w) {
      std::uint32_t node = 0;
      trie[0].words.push_back(w);
      for (auto it = words[w].form.rbegin(); it != words[w].form.rend(); ++it) {
        const auto child = trie[node].children.find(*it);
        std::uint32_t next;
        if (child == trie[node].children.end()) {
          next = static_cast<std::uint32_t>(trie.size());
          trie[node].children.emplace(*it, next);
          trie.emplace_back();
        } else {
          next = child->second;
        }
        node = next;
        trie[node].words.push_back(w);
      }
      trie[node].ends = w;
    }

    // Depth-first, carrying the rewrite a lookup would inherit from the
    // nearest ancestor rule. A node gets a rule only when a different
    // rewrite serves strictly more of its words than the inherited one, or
    // when a word ends at the node and the inherited rewrite is wrong for it.
    struct Frame {
      std::uint32_t node;
      std::size_t depth;
      std::optional<std::size_t> inherited;
      std::u32string suffix;  // reversed path from the root
    };
    std::vector<Frame> stack{{0, 0, std::nullopt, {}}};
    std::vector<std::pair<std::u32string, std::size_t>> emitted;  // reversed old_end, transform
    while (!stack.empty()) {
      Frame f = std::move(stack.back());
      stack.pop_back();
      const auto& n = trie[f.node];
      if (f.inherited &&
          std::all_of(n.words.begin(), n.words.end(), [&](std::uint32_t w) { return words[w].transform == *f.inherited; }))
        continue;
      std::optional<std::size_t> chosen = f.inherited;
      if (n.ends) {
        chosen = words[*n.ends].transform;
      } else {
        std::map<std::size_t, std::size_t> counts;
        for (auto w : n.words)
          if (transforms[words[w].transform].strip <= f.depth) ++counts[words[w].transform];
        std::size_t inherited_count = 0;
        if (f.inherited)
          if (const auto it = counts.find(*f.inherited); it != counts.end()) inherited_count = it->second;
        std::optional<std::size_t> best;
        for (const auto& [t, c] : counts) {
          if (!best || c > counts[*best] ||
              (c == counts[*best] && transforms[t] < transforms[*best]))
            best = t;
        }
        if (best && counts[*best] > inherited_count) chosen = best;
      }
      if (chosen && chosen != f.inherited) emitted.emplace_back(f.suffix, *chosen);
      for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
        auto suffix = f.suffix;
        suffix.push_back(it->first);
        stack.push_back(Frame{it->second, f.depth + 1, chosen, std::move(suffix)});
      }
    }

    for (const auto& [reversed, t] : emitted) {
      const std::u32string old_end(reversed.rbegin(), reversed.rend());
      const auto& tr = transforms[t];
      std::u32string new_end = old_end.substr(0, old_end.size() - tr.strip) + tr.append;
      set.add(LemmaRule{tag, utf8::encode(old_end), utf8::encode(new_end), 0});
    }
    for (const auto& word : words) {
      const auto surface = utf8::encode(word.form);
      auto* rule = const_cast<LemmaRule*>(set.match(surface, tag));
      if (rule == nullptr) throw InternalError("no lemma rule covers '" + surface + "' / " + tag);
      ++rule->count;
    }
  }
  return set;
}

std::string lemmatize(std::string_view surface, std::string_view tag, const LemmaRuleSet& rules,
                      const Lexicon* lexicon) {
  if (lexicon != nullptr) {
    if (const auto* entry = lexicon->find(surface))
      if (const auto* reading = entry->reading(tag); reading != nullptr && reading->lemma) return *reading->lemma;
  }
  const auto* rule = rules.match(surface, tag);
  return rule != nullptr ? rule->apply(surface) : std::string(surface);
}

void write_lemma_rules(const LemmaRuleSet& rules, std::ostream& out) {
  for (const auto* r : rules.rules()) out << r->tag << '\t' << r->old_end << '\t' << r->new_end << '\t' << r->count << '\n';
}

LemmaRuleSet read_lemma_rules(std::istream& in, const std::string& source) {
  LemmaRuleSet set;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t tab; (tab = line.find('\t', start)) != std::string::npos; start = tab + 1)
      fields.push_back(line.substr(start, tab - start));
    fields.push_back(line.substr(start));
    if (fields.size() != 4) throw FormatError("expected tag<TAB>old_end<TAB>new_end<TAB>count", line_no, source);
    if (!Tag::is_well_formed(fields[0])) throw FormatError("malformed tag '" + fields[0] + "'", line_no, source);
    std::size_t count = 0;
    std::istringstream number(fields[3]);
    if (!(number >> count) || !number.eof()) throw FormatError("bad count '" + fields[3] + "'", line_no, source);
    try {
      set.add(LemmaRule{fields[0], fields[1], fields[2], count});
    } catch (const DataError& e) {
      throw FormatError(e.what(), line_no, source);
    }
  }
  return set;
}

LemmaImpact lemma_impact(std::span<const std::string> gold, std::span<const std::string> predicted,
                         const TagSchema& schema) {
  if (gold.size() != predicted.size()) throw ArgumentError("gold and predicted tag sequences differ in length");
  LemmaImpact impact;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i] == predicted[i]) continue;
    ++impact.errors;
    // A prediction outside the schema (e.g. an untaggable marker) cannot preserve the lemma.
    if (validate(predicted[i], schema) && lemma_compatible(gold[i], predicted[i], schema)) ++impact.non_problematic;
  }
  if (impact.errors > 0) impact.fraction = static_cast<double>(impact.non_problematic) / static_cast<double>(impact.errors);
  return impact;
}

}  // namespace morphotag
