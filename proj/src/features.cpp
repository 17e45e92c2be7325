#include "morphotag/features.h"

#include <algorithm>

#include "morphotag/error.h"
#include "morphotag/rules.h"
#include "morphotag/utf8.h"

namespace morphotag {

namespace {

const std::string kBegin = "<s>";
const std::string kEnd = "</s>";

const std::string& word_at(std::span<const std::string> surfaces, long i) {
  if (i < 0) return kBegin;
  if (i >= static_cast<long>(surfaces.size())) return kEnd;
  return surfaces[static_cast<std::size_t>(i)];
}

std::string join(std::string_view a, std::string_view b) {
  std::string s;
  s.reserve(a.size() + b.size() + 1);
  s += a;
  s += ' ';
  s += b;
  return s;
}

}  // namespace

void FeatureConfig::validate() const {
  if (max_affix_len < 1) throw ConfigError("max_affix_len must be >= 1");
}

NeighborTags PartialContext::neighbors() const {
  NeighborTags n;
  if (assigned.empty()) return n;
  if (assigned.size() != surfaces.size()) throw ArgumentError("assignment does not align with the sentence");
  if (assigned[position]) throw ArgumentError("current position is already assigned");
  auto at = [&](long i) -> std::optional<std::string_view> {
    if (i < 0 || i >= static_cast<long>(assigned.size()) || !assigned[static_cast<std::size_t>(i)]) return std::nullopt;
    return std::string_view(*assigned[static_cast<std::size_t>(i)]);
  };
  const auto p = static_cast<long>(position);
  n.left1 = at(p - 1);
  if (n.left1) n.left2 = at(p - 2);
  n.right1 = at(p + 1);
  if (n.right1) n.right2 = at(p + 2);
  return n;
}

void word_features(std::span<const std::string> surfaces, std::size_t i, const CandidateSet* lexicon_tags,
                   const FeatureConfig& cfg, std::vector<std::string>& out) {
  const std::string& w = surfaces[i];
  const auto p = static_cast<long>(i);
  if (cfg.words) {
    out.push_back("w0=" + w);
    out.push_back("w-1=" + word_at(surfaces, p - 1));
    out.push_back("w-2=" + word_at(surfaces, p - 2));
    out.push_back("w+1=" + word_at(surfaces, p + 1));
    out.push_back("w+2=" + word_at(surfaces, p + 2));
  }
  if (cfg.word_bigrams) {
    out.push_back("w-1w0=" + join(word_at(surfaces, p - 1), w));
    out.push_back("w0w+1=" + join(w, word_at(surfaces, p + 1)));
  }
  if (cfg.affixes) {
    const std::u32string chars = utf8::decode(w);
    const std::size_t n = std::min(cfg.max_affix_len, chars.size());
    for (std::size_t k = 1; k <= n; ++k) {
      out.push_back("p" + std::to_string(k) + "=" + utf8::encode(std::u32string_view(chars).substr(0, k)));
      out.push_back("s" + std::to_string(k) + "=" + utf8::encode(std::u32string_view(chars).substr(chars.size() - k)));
    }
  }
  if (cfg.orthography) {
    if (utf8::contains_digit(w)) out.emplace_back("has-digit");
    if (w.find('-') != std::string::npos) out.emplace_back("has-hyphen");
    if (utf8::starts_with_upper(w)) out.emplace_back("init-upper");
  }
  if (cfg.use_lexicon_features) {
    if (lexicon_tags == nullptr) {
      out.emplace_back("lex-unknown");
    } else {
      std::string key;
      for (const auto& t : *lexicon_tags) {
        out.push_back("lex=" + t);
        if (!key.empty()) key += ';';
        key += t;
      }
      out.push_back("lex-class=" + key);
    }
  }
}

void context_features(std::string_view word, const NeighborTags& tags, const FeatureConfig& cfg,
                      std::vector<std::string>& out) {
  auto cat = [](std::string_view name, std::string_view value) {
    std::string s(name);
    s += value;
    return s;
  };
  if (cfg.tag_context) {
    if (tags.left1) out.push_back(cat("t-1=", *tags.left1));
    if (tags.left2) out.push_back(cat("t-2=", *tags.left2));
    if (tags.right1) out.push_back(cat("t+1=", *tags.right1));
    if (tags.right2) out.push_back(cat("t+2=", *tags.right2));
    if (tags.left2 && tags.left1) out.push_back(cat("t-2t-1=", join(*tags.left2, *tags.left1)));
    if (tags.right1 && tags.right2) out.push_back(cat("t+1t+2=", join(*tags.right1, *tags.right2)));
    if (tags.left1 && tags.right1) out.push_back(cat("t-1t+1=", join(*tags.left1, *tags.right1)));
  }
  if (cfg.bilexical) {
    if (tags.left1) out.push_back(cat("w0t-1=", join(word, *tags.left1)));
    if (tags.right1) out.push_back(cat("w0t+1=", join(word, *tags.right1)));
  }
}

std::vector<std::optional<CandidateSet>> lexicon_feature_sets(std::span<const std::string> surfaces,
                                                              const Lexicon& lexicon, const RuleCascade* rules,
                                                              const FeatureConfig& cfg) {
  auto sets = lexicon_sets(surfaces, lexicon);
  if (cfg.lexicon_filter == LexiconFilter::rules && rules != nullptr) sets = apply_cascade(*rules, surfaces, sets);
  std::vector<std::optional<CandidateSet>> out(surfaces.size());
  for (std::size_t i = 0; i < surfaces.size(); ++i)
    if (!sets[i].empty()) out[i] = std::move(sets[i]);
  return out;
}

std::vector<std::string> extract(const PartialContext& ctx, const Lexicon& lexicon, const RuleCascade* rules,
                                 const FeatureConfig& cfg) {
  cfg.validate();
  if (ctx.position >= ctx.surfaces.size()) throw ArgumentError("position outside the sentence");
  std::vector<std::string> out;
  const CandidateSet* lex = nullptr;
  std::vector<std::optional<CandidateSet>> sets;
  if (cfg.use_lexicon_features) {
    sets = lexicon_feature_sets(ctx.surfaces, lexicon, rules, cfg);
    if (sets[ctx.position]) lex = &*sets[ctx.position];
  }
  word_features(ctx.surfaces, ctx.position, lex, cfg, out);
  context_features(ctx.surfaces[ctx.position], ctx.neighbors(), cfg, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FeatureId SymbolTable::intern(const std::string& feature) {
  const auto [it, inserted] = index_.try_emplace(feature, static_cast<FeatureId>(names_.size()));
  if (inserted) names_.push_back(feature);
  return it->second;
}

std::optional<FeatureId> SymbolTable::find(const std::string& feature) const {
  const auto it = index_.find(feature);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FeatureVector SymbolTable::intern_all(std::span<const std::string> features) {
  FeatureVector v;
  v.ids.reserve(features.size());
  for (const auto& f : features) v.ids.push_back(intern(f));
  std::sort(v.ids.begin(), v.ids.end());
  v.ids.erase(std::unique(v.ids.begin(), v.ids.end()), v.ids.end());
  return v;
}

FeatureVector SymbolTable::find_all(std::span<const std::string> features) const {
  FeatureVector v;
  v.ids.reserve(features.size());
  for (const auto& f : features)
    if (const auto id = find(f)) v.ids.push_back(*id);
  std::sort(v.ids.begin(), v.ids.end());
  v.ids.erase(std::unique(v.ids.begin(), v.ids.end()), v.ids.end());
  return v;
}

}  // namespace morphotag
