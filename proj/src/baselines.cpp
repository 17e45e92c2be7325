#include "morphotag/baselines.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>

#include "morphotag/error.h"

namespace morphotag {

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::vector<std::string> tied_maxima(const TagCounts& counts) {
  std::size_t best = 0;
  for (const auto& [_, c] : counts) best = std::max(best, c);
  std::vector<std::string> out;
  for (const auto& [tag, c] : counts)
    if (c == best) out.push_back(tag);
  return out;
}

}  // namespace

std::size_t seeded_pick(std::uint64_t seed, std::string_view key, std::size_t n) {
  if (n == 0) throw ArgumentError("seeded_pick over an empty range");
  return static_cast<std::size_t>(splitmix64(seed ^ fnv1a(key)) % n);
}

std::optional<std::string> unique_most_frequent(const TagCounts& counts) {
  const auto tied = tied_maxima(counts);
  if (tied.size() != 1) return std::nullopt;
  return tied[0];
}

std::optional<std::string> most_frequent(const TagCounts& counts, std::uint64_t seed, std::string_view key) {
  const auto tied = tied_maxima(counts);
  if (tied.empty()) return std::nullopt;
  return tied[seeded_pick(seed, key, tied.size())];
}

MftTable build_mft(const Corpus& corpus, const Lexicon* lexicon) {
  MftTable table;
  std::set<std::string> inventory;
  for (const auto& sentence : corpus.sentences) {
    for (const auto& token : sentence.tokens) {
      if (!token.gold) throw DataError("token '" + token.surface + "' has no gold tag");
      const std::string& gold = token.gold->str();
      ++table.by_surface[token.surface][gold];
      inventory.insert(gold);
      if (lexicon == nullptr) continue;
      const auto cls = lexicon->lookup(token.surface);
      if (cls && std::binary_search(cls->tags.begin(), cls->tags.end(), gold)) ++table.by_class[cls->key][gold];
    }
  }
  if (lexicon != nullptr) {
    table.has_class_table = true;
    for (const auto& t : lexicon->all_tags()) inventory.insert(t);
  }
  table.inventory.assign(inventory.begin(), inventory.end());
  return table;
}

std::string SuffixGuesser::guess(std::string_view surface) const {
  for (const auto& [suffix, tag] : suffixes)
    if (surface.ends_with(suffix)) return tag;
  return fallback;
}

SuffixGuesser load_guesser(std::istream& in, const std::string& source) {
  SuffixGuesser g;
  bool have_default = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
      throw FormatError("expected suffix<TAB>tag", line_no, source);
    const std::string suffix = line.substr(0, tab);
    const std::string tag = line.substr(tab + 1);
    if (suffix.empty()) throw FormatError("empty suffix", line_no, source);
    if (!Tag::is_well_formed(tag)) throw FormatError("malformed tag '" + tag + "'", line_no, source);
    if (suffix == "DEFAULT") {
      if (have_default) throw FormatError("second DEFAULT line", line_no, source);
      g.fallback = tag;
      have_default = true;
    } else {
      g.suffixes.emplace_back(suffix, tag);
    }
  }
  if (!have_default) throw FormatError("guesser table lacks a DEFAULT line", line_no, source);
  if (g.suffixes.empty()) throw FormatError("guesser table lists no suffixes", line_no, source);
  return g;
}

SuffixGuesser load_guesser_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open guesser table '" + path + "'");
  return load_guesser(in, path);
}

std::vector<std::string> tag_mft(std::span<const std::string> surfaces, const MftTable& table,
                                 const UnknownStrategy& strategy, std::uint64_t seed) {
  std::vector<std::string> out;
  out.reserve(surfaces.size());
  for (const auto& surface : surfaces) {
    if (const auto it = table.by_surface.find(surface); it != table.by_surface.end()) {
      out.push_back(*most_frequent(it->second, seed, surface));
      continue;
    }
    if (std::holds_alternative<DefaultTag>(strategy)) out.push_back(std::get<DefaultTag>(strategy).tag);
    else if (std::holds_alternative<SuffixGuesser>(strategy)) out.push_back(std::get<SuffixGuesser>(strategy).guess(surface));
    else out.emplace_back(kUntaggable);
  }
  return out;
}

std::vector<std::string> tag_mft_lexicon(std::span<const std::string> surfaces, const MftTable& table,
                                         const Lexicon& lexicon, std::uint64_t seed, MftLexiconReport* report) {
  if (!table.has_class_table) throw ArgumentError("MFT table was built without a lexicon");
  MftLexiconReport local;
  std::vector<std::string> out;
  out.reserve(surfaces.size());
  for (const auto& surface : surfaces) {
    if (const auto it = table.by_surface.find(surface); it != table.by_surface.end()) {
      if (auto tag = unique_most_frequent(it->second)) {
        ++local.by_surface;
        out.push_back(std::move(*tag));
        continue;
      }
    }
    const auto cls = lexicon.lookup(surface);
    if (!cls) {
      ++local.random_unlisted;
      if (table.inventory.empty()) out.emplace_back(kUntaggable);
      else out.push_back(table.inventory[seeded_pick(seed, surface, table.inventory.size())]);
      continue;
    }
    if (const auto it = table.by_class.find(cls->key); it != table.by_class.end()) {
      if (auto tag = unique_most_frequent(it->second)) {
        ++local.by_class;
        out.push_back(std::move(*tag));
        continue;
      }
    }
    ++local.random_in_class;
    out.push_back(cls->tags[seeded_pick(seed, surface, cls->tags.size())]);
  }
  if (report != nullptr) {
    report->by_surface += local.by_surface;
    report->by_class += local.by_class;
    report->random_in_class += local.random_in_class;
    report->random_unlisted += local.random_unlisted;
  }
  return out;
}

}  // namespace morphotag
