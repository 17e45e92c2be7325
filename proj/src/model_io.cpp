#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "morphotag/error.h"
#include "morphotag/tagger.h"

namespace morphotag {

namespace {

constexpr const char* kMagic = "morphotag-model";
constexpr int kVersion = 1;

std::string hex(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::hex);
  return std::string(buf, r.ptr);
}

const char* filter_name(LexiconFilter f) { return f == LexiconFilter::rules ? "rules" : "none"; }

class Reader {
 public:
  Reader(std::istream& in, const std::string& source) : in_(in), source_(source) {}

  std::string line() {
    std::string s;
    if (!std::getline(in_, s)) fail("unexpected end of model file");
    ++line_no_;
    return s;
  }

  // "keyword a=b c=d" into key/value pairs after checking the keyword.
  std::vector<std::pair<std::string, std::string>> record(const std::string& keyword) {
    std::istringstream words(line());
    std::string head;
    words >> head;
    if (head != keyword) fail("expected '" + keyword + "', got '" + head + "'");
    std::vector<std::pair<std::string, std::string>> out;
    for (std::string kv; words >> kv;) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) fail("expected key=value, got '" + kv + "'");
      out.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return out;
  }

  std::size_t count(const std::string& keyword) {
    std::istringstream words(line());
    std::string head, n;
    words >> head >> n;
    if (head != keyword) fail("expected '" + keyword + "', got '" + head + "'");
    return to_size(n);
  }

  std::size_t to_size(const std::string& s) {
    std::size_t v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) fail("bad integer '" + s + "'");
    return v;
  }

  double to_double(const std::string& s) {
    double v = 0;
    std::string_view body(s);
    bool negative = false;
    if (!body.empty() && body[0] == '-') {
      negative = true;
      body.remove_prefix(1);
    }
    const auto r = std::from_chars(body.data(), body.data() + body.size(), v, std::chars_format::hex);
    if (r.ec != std::errc() || r.ptr != body.data() + body.size()) fail("bad number '" + s + "'");
    return negative ? -v : v;
  }

  bool to_bool(const std::string& s) {
    if (s == "1") return true;
    if (s == "0") return false;
    fail("expected 0 or 1, got '" + s + "'");
  }

  [[noreturn]] void fail(const std::string& what) const { throw FormatError(what, line_no_, source_); }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t line_no_ = 0;
};

void write_weights(std::ostream& out, const char* name, const WeightTable& table) {
  std::size_t n = 0;
  table.for_each_nonzero([&](FeatureId, TagId, double) { ++n; });
  out << name << ' ' << n << '\n';
  table.for_each_nonzero([&](FeatureId f, TagId t, double v) { out << f << ' ' << t << ' ' << hex(v) << '\n'; });
}

WeightTable read_weights(Reader& r, const char* name, std::size_t tags, std::size_t symbols) {
  WeightTable table(tags);
  const std::size_t n = r.count(name);
  for (std::size_t i = 0; i < n; ++i) {
    std::istringstream words(r.line());
    std::string f, t, v, extra;
    if (!(words >> f >> t >> v) || (words >> extra)) r.fail("expected '<feature> <tag> <value>'");
    const std::size_t fid = r.to_size(f), tid = r.to_size(t);
    if (fid >= symbols || tid >= tags) r.fail("weight index out of range");
    table.set(static_cast<FeatureId>(fid), static_cast<TagId>(tid), r.to_double(v));
  }
  return table;
}

}  // namespace

void save_model(const Model& model, std::ostream& out) {
  const auto& f = model.features;
  out << kMagic << ' ' << kVersion << '\n';
  out << "features max_affix_len=" << f.max_affix_len << " lexicon=" << f.use_lexicon_features
      << " filter=" << filter_name(f.lexicon_filter) << " words=" << f.words << " affixes=" << f.affixes
      << " orthography=" << f.orthography << " tag_context=" << f.tag_context << " bilexical=" << f.bilexical
      << " word_bigrams=" << f.word_bigrams << '\n';
  out << "decode beam=" << model.default_beam
      << " filter=" << (model.decode_lexicon_filter ? filter_name(*model.decode_lexicon_filter) : "inherit") << '\n';
  const auto& m = model.meta;
  out << "meta epochs=" << m.epochs << " seed=" << m.seed << " C=" << hex(m.aggressiveness)
      << " margin=" << hex(m.margin) << " source=" << to_string(m.candidate_source) << " steps=" << m.steps
      << " updates=" << m.updates << '\n';
  out << "epoch_accuracy " << m.epoch_accuracy.size() << '\n';
  for (double a : m.epoch_accuracy) out << hex(a) << '\n';
  out << "tags " << model.tags.size() << '\n';
  for (const auto& t : model.tags.tags()) out << t << '\n';
  out << "symbols " << model.symbols.size() << '\n';
  for (std::size_t i = 0; i < model.symbols.size(); ++i) out << model.symbols.name(static_cast<FeatureId>(i)) << '\n';
  write_weights(out, "weights", model.weights);
  write_weights(out, "averaged", model.averaged);
  out << "end\n";
}

Model load_model(std::istream& in, const std::string& source) {
  Reader r(in, source);
  {
    std::istringstream head(r.line());
    std::string magic;
    int version = 0;
    if (!(head >> magic >> version) || magic != kMagic) r.fail("not a morphotag model");
    if (version != kVersion) r.fail("unsupported model version " + std::to_string(version));
  }
  Model model;
  auto filter = [&](const std::string& v) {
    if (v == "rules") return LexiconFilter::rules;
    if (v == "none") return LexiconFilter::none;
    r.fail("unknown filter '" + v + "'");
  };
  for (const auto& [k, v] : r.record("features")) {
    auto& f = model.features;
    if (k == "max_affix_len") f.max_affix_len = r.to_size(v);
    else if (k == "lexicon") f.use_lexicon_features = r.to_bool(v);
    else if (k == "filter") f.lexicon_filter = filter(v);
    else if (k == "words") f.words = r.to_bool(v);
    else if (k == "affixes") f.affixes = r.to_bool(v);
    else if (k == "orthography") f.orthography = r.to_bool(v);
    else if (k == "tag_context") f.tag_context = r.to_bool(v);
    else if (k == "bilexical") f.bilexical = r.to_bool(v);
    else if (k == "word_bigrams") f.word_bigrams = r.to_bool(v);
    else r.fail("unknown feature setting '" + k + "'");
  }
  for (const auto& [k, v] : r.record("decode")) {
    if (k == "beam") model.default_beam = r.to_size(v);
    else if (k == "filter") model.decode_lexicon_filter = v == "inherit" ? std::nullopt : std::optional(filter(v));
    else r.fail("unknown decode setting '" + k + "'");
  }
  for (const auto& [k, v] : r.record("meta")) {
    auto& m = model.meta;
    if (k == "epochs") m.epochs = r.to_size(v);
    else if (k == "seed") m.seed = r.to_size(v);
    else if (k == "C") m.aggressiveness = r.to_double(v);
    else if (k == "margin") m.margin = r.to_double(v);
    else if (k == "source") {
      const auto s = parse_candidate_source(v);
      if (!s) r.fail("unknown candidate source '" + v + "'");
      m.candidate_source = *s;
    } else if (k == "steps") m.steps = r.to_size(v);
    else if (k == "updates") m.updates = r.to_size(v);
    else r.fail("unknown metadata '" + k + "'");
  }
  const std::size_t epochs = r.count("epoch_accuracy");
  for (std::size_t i = 0; i < epochs; ++i) model.meta.epoch_accuracy.push_back(r.to_double(r.line()));

  const std::size_t tag_count = r.count("tags");
  std::set<std::string> tags;
  std::vector<std::string> order;
  for (std::size_t i = 0; i < tag_count; ++i) {
    std::string t = r.line();
    if (!Tag::is_well_formed(t)) r.fail("malformed tag '" + t + "'");
    order.push_back(t);
    tags.insert(std::move(t));
  }
  model.tags = TagInventory(tags);
  if (model.tags.tags() != order) r.fail("tag inventory must be sorted and duplicate-free");

  const std::size_t symbol_count = r.count("symbols");
  for (std::size_t i = 0; i < symbol_count; ++i) {
    const std::string s = r.line();
    if (model.symbols.intern(s) != i) r.fail("duplicate feature '" + s + "'");
  }
  model.weights = read_weights(r, "weights", model.tags.size(), symbol_count);
  model.averaged = read_weights(r, "averaged", model.tags.size(), symbol_count);
  if (r.line() != "end") r.fail("expected 'end'");
  return model;
}

void save_model_file(const Model& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write model file '" + path + "'");
  save_model(model, out);
}

Model load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open model file '" + path + "'");
  return load_model(in, path);
}

}  // namespace morphotag
