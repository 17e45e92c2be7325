#include "morphotag/lexicon.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "morphotag/error.h"
#include "morphotag/rules.h"
#include "morphotag/tagset.h"
#include "morphotag/utf8.h"

namespace morphotag {

std::vector<std::string> LexiconEntry::tags() const {
  std::vector<std::string> out;
  out.reserve(readings.size());
  for (const auto& r : readings) out.push_back(r.tag);
  return out;
}

const Reading* LexiconEntry::reading(std::string_view tag) const {
  auto it = std::lower_bound(readings.begin(), readings.end(), tag,
                             [](const Reading& r, std::string_view t) { return r.tag < t; });
  return it != readings.end() && it->tag == tag ? &*it : nullptr;
}

TagClass TagClass::of(std::vector<std::string> tags) {
  std::sort(tags.begin(), tags.end());
  tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
  TagClass c;
  for (const auto& t : tags) {
    if (!c.key.empty()) c.key += ';';
    c.key += t;
  }
  c.tags = std::move(tags);
  return c;
}

void Lexicon::add(const std::string& surface, const std::string& tag, std::optional<std::string> lemma) {
  auto& entry = entries_[surface];
  entry.surface = surface;
  auto it = std::lower_bound(entry.readings.begin(), entry.readings.end(), tag,
                             [](const Reading& r, const std::string& t) { return r.tag < t; });
  if (it != entry.readings.end() && it->tag == tag) {
    if (lemma && it->lemma && *lemma != *it->lemma)
      throw DataError("conflicting lemmas for '" + surface + "' " + tag + ": '" + *it->lemma + "' vs '" + *lemma + "'");
    if (lemma) it->lemma = std::move(lemma);
    return;
  }
  entry.readings.insert(it, Reading{tag, std::move(lemma)});
}

const LexiconEntry* Lexicon::find(std::string_view surface) const {
  const auto it = entries_.find(std::string(surface));
  return it == entries_.end() ? nullptr : &it->second;
}

const LexiconEntry* Lexicon::find(std::string_view surface, bool sentence_initial) const {
  const auto* entry = find(surface);
  if (entry == nullptr && sentence_initial && lowercase_fallback_) entry = find(utf8::to_lower(surface));
  return entry;
}

std::optional<TagClass> Lexicon::lookup(std::string_view surface) const {
  const auto* entry = find(surface);
  if (entry == nullptr) return std::nullopt;
  return TagClass::of(entry->tags());
}

std::size_t Lexicon::reading_count() const noexcept {
  std::size_t n = 0;
  for (const auto& [_, e] : entries_) n += e.readings.size();
  return n;
}

std::set<std::string> Lexicon::all_tags() const {
  std::set<std::string> out;
  for (const auto& [_, e] : entries_)
    for (const auto& r : e.readings) out.insert(r.tag);
  return out;
}

std::vector<const LexiconEntry*> Lexicon::sorted_entries() const {
  std::vector<const LexiconEntry*> out;
  out.reserve(entries_.size());
  for (const auto& [_, e] : entries_) out.push_back(&e);
  std::sort(out.begin(), out.end(), [](const auto* a, const auto* b) { return a->surface < b->surface; });
  return out;
}

Lexicon load_lexicon(std::istream& in, const std::string& source) {
  Lexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() < 2 || fields.size() > 3) throw FormatError("expected surface<TAB>tag[<TAB>lemma]", line_no, source);
    if (fields[0].empty()) throw FormatError("empty surface", line_no, source);
    if (!Tag::is_well_formed(fields[1])) throw FormatError("malformed tag '" + fields[1] + "'", line_no, source);
    std::optional<std::string> lemma;
    if (fields.size() == 3) {
      if (fields[2].empty()) throw FormatError("empty lemma", line_no, source);
      lemma = fields[2];
    }
    try {
      lexicon.add(fields[0], fields[1], std::move(lemma));
    } catch (const DataError& e) {
      throw DataError((source.empty() ? "line " : source + ":") + std::to_string(line_no) + ": " + e.what());
    }
  }
  return lexicon;
}

Lexicon load_lexicon_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open lexicon file '" + path + "'");
  return load_lexicon(in, path);
}

void write_lexicon(const Lexicon& lexicon, std::ostream& out) {
  for (const auto* entry : lexicon.sorted_entries()) {
    for (const auto& r : entry->readings) {
      out << entry->surface << '\t' << r.tag;
      if (r.lemma) out << '\t' << *r.lemma;
      out << '\n';
    }
  }
}

std::vector<CandidateSet> lexicon_sets(std::span<const std::string> surfaces, const Lexicon& lexicon) {
  std::vector<CandidateSet> out(surfaces.size());
  for (std::size_t i = 0; i < surfaces.size(); ++i)
    if (const auto* entry = lexicon.find(surfaces[i], i == 0)) out[i] = entry->tags();
  return out;
}

AmbiguityStats ambiguity_stats(const Lexicon& lexicon, const Corpus& corpus, const RuleCascade* cascade,
                               const TagSchema* schema) {
  std::size_t counted = 0;
  std::size_t ambiguous = 0;
  std::size_t total_tags = 0;
  for (const auto& sentence : corpus.sentences) {
    const auto surfaces = sentence.surfaces();
    auto sets = lexicon_sets(surfaces, lexicon);
    if (cascade != nullptr) sets = apply_cascade(*cascade, surfaces, sets);
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      if (schema != nullptr) {
        const auto& gold = sentence.tokens[i].gold;
        const bool punct = gold ? schema->is_punctuation(gold->str())
                                : !sets[i].empty() && std::all_of(sets[i].begin(), sets[i].end(), [&](const auto& t) {
                                    return schema->is_punctuation(t);
                                  });
        if (punct) continue;
      }
      const std::size_t n = std::max<std::size_t>(sets[i].size(), 1);
      ++counted;
      total_tags += n;
      if (n > 1) ++ambiguous;
    }
  }
  AmbiguityStats s;
  s.tokens = counted;
  if (counted > 0) {
    s.ambiguous_fraction = static_cast<double>(ambiguous) / static_cast<double>(counted);
    s.mean_tags = static_cast<double>(total_tags) / static_cast<double>(counted);
  }
  return s;
}

}  // namespace morphotag
