#include "morphotag/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "morphotag/error.h"

namespace morphotag {

std::vector<std::string> Sentence::surfaces() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

std::size_t Corpus::token_count() const noexcept {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.size();
  return n;
}

Corpus read_vertical(std::istream& in, const std::string& source) {
  Corpus corpus;
  Sentence current;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) { throw FormatError(what, line_no, source); };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (!current.tokens.empty()) corpus.sentences.push_back(std::move(current));
      current = Sentence{};
      continue;
    }
    const auto tab = line.find('\t');
    Token token;
    token.surface = line.substr(0, tab);
    if (tab != std::string::npos) {
      std::string tag = line.substr(tab + 1);
      if (tag.find('\t') != std::string::npos) fail("more than two tab-separated fields");
      if (!Tag::is_well_formed(tag)) fail("malformed tag '" + tag + "'");
      token.gold = Tag(std::move(tag));
    }
    if (token.surface.empty()) fail("empty surface");
    if (std::any_of(token.surface.begin(), token.surface.end(), [](char c) { return c == ' ' || c == '\v' || c == '\f'; }))
      fail("surface contains whitespace");
    current.tokens.push_back(std::move(token));
  }
  if (!current.tokens.empty()) corpus.sentences.push_back(std::move(current));
  return corpus;
}

Corpus read_vertical_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open corpus file '" + path + "'");
  return read_vertical(in, path);
}

void write_vertical(const Corpus& corpus, std::ostream& out) {
  for (const auto& sentence : corpus.sentences) {
    for (const auto& token : sentence.tokens) {
      out << token.surface;
      if (token.gold) out << '\t' << token.gold->str();
      out << '\n';
    }
    out << '\n';
  }
}

void write_vertical_file(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  write_vertical(corpus, out);
}

CorpusStats stats(const Corpus& corpus) {
  CorpusStats s;
  std::unordered_set<std::string> types;
  std::set<std::string> tags;
  for (const auto& sentence : corpus.sentences) {
    ++s.sentences;
    for (const auto& token : sentence.tokens) {
      if (!token.gold) throw DataError("token '" + token.surface + "' has no gold tag");
      ++s.tokens;
      types.insert(token.surface);
      tags.insert(token.gold->str());
    }
  }
  s.types = types.size();
  s.tag_types = tags.size();
  return s;
}

std::unordered_set<std::string> vocabulary(const Corpus& corpus) {
  std::unordered_set<std::string> out;
  for (const auto& sentence : corpus.sentences)
    for (const auto& token : sentence.tokens) out.insert(token.surface);
  return out;
}

std::vector<std::vector<std::string>> gold_tags(const Corpus& corpus) {
  std::vector<std::vector<std::string>> out;
  out.reserve(corpus.sentences.size());
  for (const auto& sentence : corpus.sentences) {
    auto& tags = out.emplace_back();
    for (const auto& token : sentence.tokens) {
      if (!token.gold) throw DataError("token '" + token.surface + "' has no gold tag");
      tags.push_back(token.gold->str());
    }
  }
  return out;
}

}  // namespace morphotag
