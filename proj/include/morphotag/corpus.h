#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "morphotag/tagset.h"

namespace morphotag {

struct Token {
  std::string surface;
  std::optional<Tag> gold;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::vector<Token> tokens;

  std::size_t size() const noexcept { return tokens.size(); }
  std::vector<std::string> surfaces() const;
  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct Corpus {
  std::vector<Sentence> sentences;

  std::size_t token_count() const noexcept;
  bool empty() const noexcept { return sentences.empty(); }
  friend bool operator==(const Corpus&, const Corpus&) = default;
};

struct CorpusStats {
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  std::size_t types = 0;      // distinct surfaces, case-sensitive
  std::size_t tag_types = 0;  // distinct gold tags

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

// One token per line, "surface<TAB>tag" or a bare surface; a blank line ends
// a sentence. CRLF line endings are accepted. Throws FormatError carrying the
// 1-based line number; `source` is prefixed to the message when non-empty.
Corpus read_vertical(std::istream& in, const std::string& source = {});
Corpus read_vertical_file(const std::string& path);
void write_vertical(const Corpus& corpus, std::ostream& out);
void write_vertical_file(const Corpus& corpus, const std::string& path);

// Throws DataError if any token lacks a gold tag.
CorpusStats stats(const Corpus& corpus);

std::unordered_set<std::string> vocabulary(const Corpus& corpus);

// Gold tags per sentence; throws DataError on an untagged token.
std::vector<std::vector<std::string>> gold_tags(const Corpus& corpus);

}  // namespace morphotag
