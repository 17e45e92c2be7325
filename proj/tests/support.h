#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "morphotag/corpus.h"
#include "morphotag/lexicon.h"

namespace test {

inline std::string data_path(const std::string& name) { return std::string(MORPHOTAG_DATA_DIR) + "/" + name; }

// Sentences of (surface, tag) pairs.
using Rows = std::vector<std::vector<std::pair<std::string, std::string>>>;

inline morphotag::Corpus corpus_of(const Rows& rows) {
  morphotag::Corpus c;
  for (const auto& row : rows) {
    morphotag::Sentence s;
    for (const auto& [w, t] : row) s.tokens.push_back({w, morphotag::Tag(t)});
    c.sentences.push_back(std::move(s));
  }
  return c;
}

inline morphotag::Lexicon lexicon_of(std::initializer_list<std::pair<std::string, std::vector<std::string>>> entries) {
  morphotag::Lexicon lex;
  for (const auto& [w, tags] : entries)
    for (const auto& t : tags) lex.add(w, t);
  return lex;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& name) : path_(std::filesystem::temp_directory_path() / ("morphotag-" + name)) {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string operator/(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace test
