#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace morphotag {

// A morpho-syntactic tag such as "Ncmsf" or "Vpitf-r3s". Non-empty, no
// whitespace, and the first character is an ASCII uppercase letter naming
// the POS class.
class Tag {
 public:
  explicit Tag(std::string text);

  static bool is_well_formed(std::string_view text) noexcept;

  const std::string& str() const noexcept { return text_; }
  char pos_class() const noexcept { return text_.front(); }
  std::size_t size() const noexcept { return text_.size(); }

  friend auto operator<=>(const Tag&, const Tag&) = default;

 private:
  std::string text_;
};

using TagId = int;

// Dense, contiguous ids over a lexicographically ordered tag set.
class TagInventory {
 public:
  TagInventory() = default;
  explicit TagInventory(const std::set<std::string>& tags);

  std::size_t size() const noexcept { return tags_.size(); }
  bool empty() const noexcept { return tags_.empty(); }
  const std::string& tag(TagId id) const { return tags_.at(static_cast<std::size_t>(id)); }
  std::optional<TagId> id(std::string_view tag) const;
  const std::vector<std::string>& tags() const noexcept { return tags_; }

 private:
  std::vector<std::string> tags_;
  std::unordered_map<std::string, TagId> index_;
};

struct FeatureDescriptor {
  std::string name;
  std::vector<std::size_t> positions;
};

struct PosClassLayout {
  char letter = 0;
  std::vector<std::size_t> lengths;
  std::vector<FeatureDescriptor> descriptors;
  std::vector<std::string> lemma_mask;
  std::vector<std::string> syntax_mask;

  const FeatureDescriptor* descriptor(std::string_view name) const;
};

// Positional feature layout per POS class, plus the punctuation tags.
//
// Text format, one declaration per line ('#' starts a comment):
//   class <Letter> len=<n>[,<n>...] [<feature>=<pos>[+<pos>...]]... [lemma=<f>,...] [syntax=<f>,...]
//   punct <tag> [<tag>...]
class TagSchema {
 public:
  static TagSchema parse(std::istream& in);
  static TagSchema parse_string(std::string_view text);
  // Illustrative layout covering the tag fragments used in the bundled data.
  static const TagSchema& builtin();

  // Throws SchemaError on overlapping positions, unknown mask names or a
  // duplicate class.
  void add_class(PosClassLayout layout);
  void add_punctuation(std::string tag);

  const PosClassLayout* find(char letter) const;
  bool is_punctuation(std::string_view tag) const;
  const std::set<std::string>& punctuation() const noexcept { return punctuation_; }
  const std::vector<PosClassLayout>& classes() const noexcept { return classes_; }

 private:
  std::vector<PosClassLayout> classes_;
  std::set<std::string> punctuation_;
};

// Prefix of length min(depth, |tag|). depth >= 1.
Tag project(const Tag& tag, std::size_t depth);
std::string project(std::string_view tag, std::size_t depth);

// Known POS class (or punctuation tag) and a declared length.
bool validate(std::string_view tag, const TagSchema& schema);

// Same POS class and identical characters at every lemma-determining position.
// Throws SchemaError when either tag does not validate against the schema.
bool lemma_compatible(std::string_view gold, std::string_view predicted, const TagSchema& schema);

}  // namespace morphotag

template <>
struct std::hash<morphotag::Tag> {
  std::size_t operator()(const morphotag::Tag& t) const noexcept { return std::hash<std::string>{}(t.str()); }
};
