#include "morphotag/tagset.h"

#include <algorithm>
#include <istream>
#include <sstream>

#include "morphotag/error.h"

namespace morphotag {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::size_t parse_index(const std::string& text, std::size_t line) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw FormatError("expected a non-negative integer, got '" + text + "'", line);
  return static_cast<std::size_t>(std::stoul(text));
}

const char kBuiltinSchema[] =
    "class N len=4,5 type=1 gender=2 number=3 definiteness=4 lemma=type,gender syntax=number,definiteness\n"
    "class V len=9,10,11 type=1 aspect=2 transitivity=3 form=4 voice=5 tense=6 person=7 number=8 extra=9+10 "
    "lemma=aspect,transitivity syntax=person,number\n"
    "class A len=4,5 gender=1 number=2 definiteness=3 syntax=gender,number,definiteness\n"
    "class H len=4,5 gender=1 number=2 definiteness=3 syntax=gender,number,definiteness\n"
    "class P len=5,6,7,8,9,10 type=1 ref=2 rest=3+4+5+6+7+8+9 lemma=type,ref syntax=rest\n"
    "class M len=2,3,4,5,6 type=1 gender=2 number=3 definiteness=4 lemma=type syntax=gender,number\n"
    "class D len=2 type=1\n"
    "class C len=2 type=1\n"
    "class T len=2 type=1\n"
    "class R len=1,2\n"
    "class I len=1\n"
    "punct Punct\n";

}  // namespace

Tag::Tag(std::string text) : text_(std::move(text)) {
  if (!is_well_formed(text_)) throw ArgumentError("malformed tag '" + text_ + "'");
}

bool Tag::is_well_formed(std::string_view text) noexcept {
  if (text.empty() || text.front() < 'A' || text.front() > 'Z') return false;
  return std::none_of(text.begin(), text.end(), is_space);
}

TagInventory::TagInventory(const std::set<std::string>& tags) : tags_(tags.begin(), tags.end()) {
  for (std::size_t i = 0; i < tags_.size(); ++i) index_.emplace(tags_[i], static_cast<TagId>(i));
}

std::optional<TagId> TagInventory::id(std::string_view tag) const {
  const auto it = index_.find(std::string(tag));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const FeatureDescriptor* PosClassLayout::descriptor(std::string_view name) const {
  for (const auto& d : descriptors)
    if (d.name == name) return &d;
  return nullptr;
}

void TagSchema::add_class(PosClassLayout layout) {
  const std::string letter(1, layout.letter);
  if (layout.letter < 'A' || layout.letter > 'Z') throw SchemaError("POS class must be an uppercase letter: " + letter);
  if (find(layout.letter) != nullptr) throw SchemaError("duplicate POS class " + letter);
  if (layout.lengths.empty()) throw SchemaError("class " + letter + " declares no tag length");
  std::set<std::size_t> used;
  for (const auto& d : layout.descriptors) {
    for (std::size_t p : d.positions) {
      if (p == 0) throw SchemaError("class " + letter + ": position 0 holds the POS letter");
      if (!used.insert(p).second)
        throw SchemaError("class " + letter + ": position " + std::to_string(p) + " used twice");
    }
  }
  for (const auto* mask : {&layout.lemma_mask, &layout.syntax_mask})
    for (const auto& name : *mask)
      if (layout.descriptor(name) == nullptr)
        throw SchemaError("class " + letter + ": mask names unknown feature '" + name + "'");
  classes_.push_back(std::move(layout));
}

void TagSchema::add_punctuation(std::string tag) { punctuation_.insert(std::move(tag)); }

const PosClassLayout* TagSchema::find(char letter) const {
  for (const auto& c : classes_)
    if (c.letter == letter) return &c;
  return nullptr;
}

bool TagSchema::is_punctuation(std::string_view tag) const { return punctuation_.count(std::string(tag)) > 0; }

TagSchema TagSchema::parse(std::istream& in) {
  TagSchema schema;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> fields;
    for (std::string w; words >> w;) fields.push_back(w);
    if (fields.empty()) continue;

    if (fields[0] == "punct") {
      if (fields.size() < 2) throw FormatError("punct needs at least one tag", line_no);
      for (std::size_t i = 1; i < fields.size(); ++i) schema.add_punctuation(fields[i]);
      continue;
    }
    if (fields[0] != "class") throw FormatError("expected 'class' or 'punct', got '" + fields[0] + "'", line_no);
    if (fields.size() < 3 || fields[1].size() != 1) throw FormatError("expected 'class <Letter> len=...'", line_no);

    PosClassLayout layout;
    layout.letter = fields[1][0];
    for (std::size_t i = 2; i < fields.size(); ++i) {
      const auto eq = fields[i].find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == fields[i].size())
        throw FormatError("expected key=value, got '" + fields[i] + "'", line_no);
      const std::string key = fields[i].substr(0, eq);
      const std::string value = fields[i].substr(eq + 1);
      if (key == "len") {
        for (const auto& n : split(value, ',')) layout.lengths.push_back(parse_index(n, line_no));
      } else if (key == "lemma") {
        layout.lemma_mask = split(value, ',');
      } else if (key == "syntax") {
        layout.syntax_mask = split(value, ',');
      } else {
        FeatureDescriptor d{key, {}};
        for (const auto& p : split(value, '+')) d.positions.push_back(parse_index(p, line_no));
        layout.descriptors.push_back(std::move(d));
      }
    }
    try {
      schema.add_class(std::move(layout));
    } catch (const SchemaError& e) {
      throw SchemaError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return schema;
}

TagSchema TagSchema::parse_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse(in);
}

const TagSchema& TagSchema::builtin() {
  static const TagSchema schema = parse_string(kBuiltinSchema);
  return schema;
}

Tag project(const Tag& tag, std::size_t depth) { return Tag(project(tag.str(), depth)); }

std::string project(std::string_view tag, std::size_t depth) {
  if (depth == 0) throw ArgumentError("projection depth must be >= 1");
  return std::string(tag.substr(0, std::min(depth, tag.size())));
}

bool validate(std::string_view tag, const TagSchema& schema) {
  if (!Tag::is_well_formed(tag)) return false;
  if (schema.is_punctuation(tag)) return true;
  const auto* layout = schema.find(tag.front());
  if (layout == nullptr) return false;
  return std::find(layout->lengths.begin(), layout->lengths.end(), tag.size()) != layout->lengths.end();
}

bool lemma_compatible(std::string_view gold, std::string_view predicted, const TagSchema& schema) {
  for (auto t : {gold, predicted})
    if (!validate(t, schema)) throw SchemaError("tag '" + std::string(t) + "' does not fit the schema");
  if (gold == predicted) return true;
  if (schema.is_punctuation(gold) || schema.is_punctuation(predicted)) return false;
  if (gold.front() != predicted.front()) return false;
  const auto* layout = schema.find(gold.front());
  auto at = [](std::string_view t, std::size_t p) { return p < t.size() ? t[p] : '\0'; };
  for (const auto& name : layout->lemma_mask) {
    for (std::size_t p : layout->descriptor(name)->positions)
      if (at(gold, p) != at(predicted, p)) return false;
  }
  return true;
}

}  // namespace morphotag
