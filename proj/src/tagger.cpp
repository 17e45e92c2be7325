#include "morphotag/tagger.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "morphotag/error.h"
#include "morphotag/rules.h"

namespace morphotag {

void WeightTable::add(FeatureId f, TagId t, double delta) {
  if (f >= rows_.size()) rows_.resize(static_cast<std::size_t>(f) + 1);
  auto& row = rows_[f];
  if (row.empty()) row.assign(tag_count_, 0.0);
  row[static_cast<std::size_t>(t)] += delta;
}

void WeightTable::set(FeatureId f, TagId t, double value) {
  if (f >= rows_.size()) rows_.resize(static_cast<std::size_t>(f) + 1);
  auto& row = rows_[f];
  if (row.empty()) row.assign(tag_count_, 0.0);
  row[static_cast<std::size_t>(t)] = value;
}

double WeightTable::score(const FeatureVector& features, TagId t) const noexcept {
  double s = 0.0;
  for (FeatureId f : features.ids) s += get(f, t);
  return s;
}

void TrainOptions::validate() const {
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (!(aggressiveness > 0.0)) throw ConfigError("aggressiveness C must be > 0");
  if (!(margin > 0.0)) throw ConfigError("margin must be > 0");
  if (max_updates_per_step < 1) throw ConfigError("max_updates_per_step must be >= 1");
}

void DecodeOptions::validate() const {
  if (beam_size < 1) throw ConfigError("beam size must be >= 1");
}

const char* to_string(CandidateSource source) noexcept {
  switch (source) {
    case CandidateSource::all_tags: return "all";
    case CandidateSource::lexicon: return "lexicon";
    case CandidateSource::lexicon_rule_filtered: return "lexicon-rules";
  }
  return "all";
}

std::optional<CandidateSource> parse_candidate_source(std::string_view text) {
  if (text == "all") return CandidateSource::all_tags;
  if (text == "lexicon") return CandidateSource::lexicon;
  if (text == "lexicon-rules") return CandidateSource::lexicon_rule_filtered;
  return std::nullopt;
}

namespace {

std::vector<TagId> all_ids(const TagInventory& tags) {
  std::vector<TagId> ids(tags.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<TagId>(i);
  return ids;
}

std::vector<TagId> to_ids(const CandidateSet& set, const TagInventory& tags) {
  std::vector<TagId> ids;
  for (const auto& t : set)
    if (const auto id = tags.id(t)) ids.push_back(*id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<std::vector<TagId>> candidate_ids(std::span<const std::string> surfaces, const TagInventory& tags,
                                              const Lexicon& lexicon, CandidateSource source,
                                              const RuleCascade* soft_rules, const RuleCascade* hard_rules) {
  const auto everything = all_ids(tags);
  std::vector<std::vector<TagId>> out(surfaces.size(), everything);
  if (source == CandidateSource::all_tags && hard_rules == nullptr) return out;

  const auto raw = lexicon_sets(surfaces, lexicon);
  if (source != CandidateSource::all_tags) {
    const auto sets = source == CandidateSource::lexicon_rule_filtered && soft_rules != nullptr
                          ? apply_cascade(*soft_rules, surfaces, raw)
                          : raw;
    for (std::size_t i = 0; i < surfaces.size(); ++i) {
      auto ids = to_ids(sets[i], tags);
      if (!ids.empty()) out[i] = std::move(ids);
    }
  }
  if (hard_rules != nullptr) {
    const auto filtered = apply_cascade(*hard_rules, surfaces, raw);
    for (std::size_t i = 0; i < surfaces.size(); ++i) {
      if (filtered[i].size() == raw[i].size()) continue;
      auto ids = to_ids(filtered[i], tags);
      if (!ids.empty()) out[i] = std::move(ids);
    }
  }
  return out;
}

std::vector<std::vector<std::string>> static_feature_strings(std::span<const std::string> surfaces,
                                                             const Lexicon& lexicon, const RuleCascade* rules,
                                                             const FeatureConfig& cfg) {
  std::vector<std::optional<CandidateSet>> lex;
  if (cfg.use_lexicon_features) lex = lexicon_feature_sets(surfaces, lexicon, rules, cfg);
  std::vector<std::vector<std::string>> out(surfaces.size());
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    const CandidateSet* set = cfg.use_lexicon_features && lex[i] ? &*lex[i] : nullptr;
    word_features(surfaces, i, set, cfg, out[i]);
  }
  return out;
}

FeatureVector merge(const FeatureVector& a, const FeatureVector& b) {
  FeatureVector out;
  out.ids.reserve(a.ids.size() + b.ids.size());
  std::set_union(a.ids.begin(), a.ids.end(), b.ids.begin(), b.ids.end(), std::back_inserter(out.ids));
  return out;
}

// Neighbor tags visible to position p given which positions are committed.
// Only contiguous committed neighbors are visible: t-2 needs t-1 as well.
template <typename TagAt>
NeighborTags visible_neighbors(std::size_t p, std::size_t n, const std::vector<char>& committed, TagAt&& tag_at) {
  NeighborTags nb;
  if (p >= 1 && committed[p - 1]) {
    nb.left1 = tag_at(p - 1);
    if (p >= 2 && committed[p - 2]) nb.left2 = tag_at(p - 2);
  }
  if (p + 1 < n && committed[p + 1]) {
    nb.right1 = tag_at(p + 1);
    if (p + 2 < n && committed[p + 2]) nb.right2 = tag_at(p + 2);
  }
  return nb;
}

LexiconFilter decode_filter(const Model& model, const DecodeOptions& options) {
  if (options.lexicon_filter) return *options.lexicon_filter;
  if (model.decode_lexicon_filter) return *model.decode_lexicon_filter;
  return model.features.lexicon_filter;
}

FeatureConfig decode_feature_config(const Model& model, const DecodeOptions& options) {
  FeatureConfig cfg = model.features;
  cfg.lexicon_filter = decode_filter(model, options);
  return cfg;
}

// ---------------------------------------------------------------------------
// Training

struct TrainSentence {
  std::vector<std::string> surfaces;
  std::vector<FeatureVector> statics;
  std::vector<std::vector<TagId>> candidates;
  std::vector<TagId> gold;
  std::vector<std::size_t> gold_index;  // position of gold within candidates
};

class GuidedLearner {
 public:
  GuidedLearner(Model& model, const TrainOptions& options, const TrainHooks& hooks)
      : model_(model), options_(options), hooks_(hooks), accum_(model.tags.size()) {}

  // Returns the number of steps whose chosen action was correct, and the step count.
  std::pair<std::size_t, std::size_t> learn(const TrainSentence& s) {
    const std::size_t n = s.surfaces.size();
    committed_.assign(n, 0);
    ids_.assign(n, {});
    scores_.assign(n, {});
    for (std::size_t p = 0; p < n; ++p) refresh_features(s, p);
    for (std::size_t p = 0; p < n; ++p) refresh_scores(s, p);

    std::size_t remaining = n;
    std::size_t correct = 0;
    std::size_t steps = 0;
    std::size_t streak = 0;
    while (remaining > 0) {
      ++step_;
      ++steps;
      std::size_t best_p = 0, best_c = 0;
      double best = -std::numeric_limits<double>::infinity();
      bool found = false;
      for (std::size_t p = 0; p < n; ++p) {
        if (committed_[p]) continue;
        for (std::size_t c = 0; c < scores_[p].size(); ++c) {
          if (!found || scores_[p][c] > best) {
            best = scores_[p][c];
            best_p = p;
            best_c = c;
            found = true;
          }
        }
      }

      std::optional<std::size_t> commit;
      if (s.candidates[best_p][best_c] == s.gold[best_p]) {
        ++correct;
        commit = best_p;
      } else {
        std::size_t gold_p = 0;
        double gold_score = -std::numeric_limits<double>::infinity();
        bool have_gold = false;
        for (std::size_t q = 0; q < n; ++q) {
          if (committed_[q]) continue;
          const double g = scores_[q][s.gold_index[q]];
          if (!have_gold || g > gold_score) {
            gold_score = g;
            gold_p = q;
            have_gold = true;
          }
        }
        const bool updated = update(s, gold_p, best_p, s.candidates[best_p][best_c], best, gold_score);
        if (!updated || ++streak >= options_.max_updates_per_step) {
          commit = gold_p;
        } else {
          for (std::size_t p = 0; p < n; ++p)
            if (!committed_[p]) refresh_scores(s, p);
        }
      }

      if (commit) {
        streak = 0;
        const std::size_t p = *commit;
        committed_[p] = 1;
        --remaining;
        const std::size_t lo = p >= 2 ? p - 2 : 0;
        const std::size_t hi = std::min(n - 1, p + 2);
        for (std::size_t q = lo; q <= hi; ++q) {
          if (committed_[q]) continue;
          refresh_features(s, q);
          refresh_scores(s, q);
        }
      }
      if (hooks_.on_step) hooks_.on_step(step_, model_.weights);
    }
    return {correct, steps};
  }

  void finalize() {
    const double steps = static_cast<double>(step_);
    WeightTable avg(model_.tags.size());
    if (step_ == 0) {
      model_.averaged = avg;
      return;
    }
    // mean over steps k of w_k = ((N+1) w_N - sum_k k*delta_k) / N
    model_.weights.for_each_nonzero([&](FeatureId f, TagId t, double w) {
      avg.set(f, t, ((steps + 1.0) * w - accum_.get(f, t)) / steps);
    });
    accum_.for_each_nonzero([&](FeatureId f, TagId t, double u) {
      if (model_.weights.get(f, t) == 0.0) avg.set(f, t, -u / steps);
    });
    model_.averaged = std::move(avg);
  }

  std::size_t steps() const noexcept { return step_; }
  std::size_t updates() const noexcept { return updates_; }

 private:
  void refresh_features(const TrainSentence& s, std::size_t p) {
    const auto nb = visible_neighbors(p, s.surfaces.size(), committed_,
                                      [&](std::size_t i) -> std::string_view { return model_.tags.tag(s.gold[i]); });
    ctx_.clear();
    context_features(s.surfaces[p], nb, model_.features, ctx_);
    ids_[p] = merge(s.statics[p], model_.symbols.intern_all(ctx_));
  }

  void refresh_scores(const TrainSentence& s, std::size_t p) {
    auto& sc = scores_[p];
    sc.resize(s.candidates[p].size());
    for (std::size_t c = 0; c < sc.size(); ++c) sc[c] = model_.weights.score(ids_[p], s.candidates[p][c]);
  }

  bool update(const TrainSentence& s, std::size_t gold_p, std::size_t pred_p, TagId pred_tag, double pred_score,
              double gold_score) {
    const TagId gold_tag = s.gold[gold_p];
    const auto& g_ids = ids_[gold_p].ids;
    const auto& p_ids = ids_[pred_p].ids;
    double norm = 0.0;
    if (gold_tag != pred_tag) {
      norm = static_cast<double>(g_ids.size() + p_ids.size());
    } else {
      std::vector<FeatureId> diff;
      std::set_symmetric_difference(g_ids.begin(), g_ids.end(), p_ids.begin(), p_ids.end(), std::back_inserter(diff));
      norm = static_cast<double>(diff.size());
    }
    if (norm == 0.0) return false;

    const double loss = options_.margin + pred_score - gold_score;
    const double uncapped = loss / norm;
    const double tau = std::min(options_.aggressiveness, uncapped);
    const double k = static_cast<double>(step_);
    for (FeatureId f : g_ids) {
      model_.weights.add(f, gold_tag, tau);
      accum_.add(f, gold_tag, k * tau);
    }
    for (FeatureId f : p_ids) {
      model_.weights.add(f, pred_tag, -tau);
      accum_.add(f, pred_tag, -k * tau);
    }
    ++updates_;

    if (hooks_.on_update) {
      UpdateRecord r;
      r.step = step_;
      r.tau = tau;
      r.capped = uncapped > options_.aggressiveness;
      r.loss = loss;
      r.norm_squared = norm;
      r.gap_after = model_.weights.score(ids_[gold_p], gold_tag) - model_.weights.score(ids_[pred_p], pred_tag);
      r.margin = options_.margin;
      r.aggressiveness = options_.aggressiveness;
      hooks_.on_update(r);
    }
    return true;
  }

  Model& model_;
  const TrainOptions& options_;
  const TrainHooks& hooks_;
  WeightTable accum_;
  std::size_t step_ = 0;
  std::size_t updates_ = 0;

  std::vector<char> committed_;
  std::vector<FeatureVector> ids_;
  std::vector<std::vector<double>> scores_;
  std::vector<std::string> ctx_;
};

double token_accuracy(const Corpus& corpus, const std::vector<DecodeResult>& results) {
  std::size_t total = 0, correct = 0;
  for (std::size_t s = 0; s < corpus.sentences.size(); ++s) {
    const auto& tokens = corpus.sentences[s].tokens;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      ++total;
      if (tokens[i].gold && tokens[i].gold->str() == results[s].tags[i]) ++correct;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

// ---------------------------------------------------------------------------
// Decoding

struct Hyp {
  std::vector<TagId> tags;  // over the span
  double score = 0.0;       // sum of action scores
  double action = 0.0;      // score of the action that created this hypothesis
};

bool ranks_before(const Hyp& a, const Hyp& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.tags < b.tags;
}

struct SpanHyps {
  std::size_t left = 0, right = 0;
  std::vector<Hyp> hyps;
};

struct DecodeSetup {
  std::vector<FeatureVector> statics;
  std::vector<std::vector<TagId>> candidates;
  FeatureConfig cfg;
};

DecodeSetup prepare_decode(std::span<const std::string> surfaces, const Model& model, const Lexicon& lexicon,
                           const RuleCascade* rules, const DecodeOptions& options) {
  DecodeSetup setup;
  setup.cfg = decode_feature_config(model, options);
  const auto strings = static_feature_strings(surfaces, lexicon, rules, setup.cfg);
  setup.statics.reserve(surfaces.size());
  for (const auto& f : strings) setup.statics.push_back(model.symbols.find_all(f));
  setup.candidates =
      candidate_ids(surfaces, model.tags, lexicon, options.candidate_source, rules, options.hard_output_rules);
  return setup;
}

}  // namespace

Model train(const Corpus& corpus, const Lexicon& lexicon, const RuleCascade* rules, const TrainOptions& options,
            const FeatureConfig& features, const TrainHooks& hooks, const Corpus* dev) {
  options.validate();
  features.validate();
  if (corpus.token_count() == 0) throw ConfigError("training corpus is empty");

  std::set<std::string> inventory = lexicon.all_tags();
  for (const auto& sentence : corpus.sentences)
    for (const auto& token : sentence.tokens) {
      if (!token.gold) throw DataError("training token '" + token.surface + "' has no gold tag");
      inventory.insert(token.gold->str());
    }

  Model model;
  model.tags = TagInventory(inventory);
  model.features = features;
  model.weights = WeightTable(model.tags.size());
  model.averaged = WeightTable(model.tags.size());
  model.meta.seed = options.seed;
  model.meta.aggressiveness = options.aggressiveness;
  model.meta.margin = options.margin;
  model.meta.candidate_source = options.candidate_source;

  std::vector<TrainSentence> data;
  data.reserve(corpus.sentences.size());
  for (std::size_t s = 0; s < corpus.sentences.size(); ++s) {
    const auto& sentence = corpus.sentences[s];
    TrainSentence ts;
    ts.surfaces = sentence.surfaces();
    for (const auto& f : static_feature_strings(ts.surfaces, lexicon, rules, features))
      ts.statics.push_back(model.symbols.intern_all(f));
    ts.candidates = candidate_ids(ts.surfaces, model.tags, lexicon, options.candidate_source, rules, nullptr);
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      const TagId g = *model.tags.id(sentence.tokens[i].gold->str());
      const auto& cand = ts.candidates[i];
      const auto it = std::lower_bound(cand.begin(), cand.end(), g);
      if (it == cand.end() || *it != g)
        throw DataError("sentence " + std::to_string(s + 1) + ", token " + std::to_string(i + 1) + " '" +
                        sentence.tokens[i].surface + "': gold tag " + sentence.tokens[i].gold->str() +
                        " is not among its candidates");
      ts.gold.push_back(g);
      ts.gold_index.push_back(static_cast<std::size_t>(it - cand.begin()));
    }
    data.push_back(std::move(ts));
  }

  GuidedLearner learner(model, options, hooks);
  std::optional<double> best_dev;
  WeightTable best_averaged;
  std::size_t best_epoch = 0;
  std::mt19937_64 rng(options.seed);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t epoch = 1; epoch <= options.epochs; ++epoch) {
    // Fisher-Yates on raw engine output, so the order does not depend on the
    // standard library's distribution implementations.
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    std::size_t correct = 0, steps = 0;
    for (std::size_t s : order) {
      const auto [c, n] = learner.learn(data[s]);
      correct += c;
      steps += n;
    }
    const double online = steps == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(steps);
    model.meta.epoch_accuracy.push_back(online);
    if (hooks.on_epoch) hooks.on_epoch(epoch, online);
    if (dev != nullptr) {
      learner.finalize();
      DecodeOptions dopts;
      dopts.candidate_source = options.candidate_source;
      const double acc = token_accuracy(*dev, decode_corpus(*dev, model, lexicon, rules, dopts, 1));
      if (!best_dev || acc > *best_dev) {
        best_dev = acc;
        best_averaged = model.averaged;
        best_epoch = epoch;
      }
    }
  }
  learner.finalize();
  model.meta.epochs = options.epochs;
  model.meta.steps = learner.steps();
  model.meta.updates = learner.updates();
  if (dev != nullptr && best_epoch != options.epochs) {
    model.averaged = std::move(best_averaged);
    model.meta.epochs = best_epoch;
  }
  return model;
}

DecodeResult decode(std::span<const std::string> surfaces, const Model& model, const Lexicon& lexicon,
                    const RuleCascade* rules, const DecodeOptions& options) {
  options.validate();
  DecodeResult result;
  const std::size_t n = surfaces.size();
  if (n == 0) return result;
  if (model.tags.empty()) throw ArgumentError("model has an empty tag inventory");

  const DecodeSetup setup = prepare_decode(surfaces, model, lexicon, rules, options);
  const WeightTable& w = model.averaged;
  const std::size_t beam = options.beam_size;

  std::vector<std::vector<double>> static_scores(n);
  for (std::size_t p = 0; p < n; ++p) {
    static_scores[p].reserve(setup.candidates[p].size());
    for (TagId t : setup.candidates[p]) static_scores[p].push_back(w.score(setup.statics[p], t));
  }

  std::vector<SpanHyps> spans;
  std::vector<int> owner(n, -1);
  std::vector<SpanHyps> cands(n);
  std::vector<char> alive(n, 1);
  std::vector<std::string> ctx;
  const Hyp empty_hyp;

  auto build = [&](std::size_t p) {
    const SpanHyps* L = p > 0 && owner[p - 1] >= 0 ? &spans[static_cast<std::size_t>(owner[p - 1])] : nullptr;
    const SpanHyps* R = p + 1 < n && owner[p + 1] >= 0 ? &spans[static_cast<std::size_t>(owner[p + 1])] : nullptr;
    SpanHyps& cand = cands[p];
    cand.left = L ? L->left : p;
    cand.right = R ? R->right : p;
    cand.hyps.clear();
    const std::size_t left_n = L ? L->hyps.size() : 1;
    const std::size_t right_n = R ? R->hyps.size() : 1;
    for (std::size_t a = 0; a < left_n; ++a) {
      const Hyp& hl = L ? L->hyps[a] : empty_hyp;
      for (std::size_t b = 0; b < right_n; ++b) {
        const Hyp& hr = R ? R->hyps[b] : empty_hyp;
        NeighborTags nb;
        if (L) {
          nb.left1 = model.tags.tag(hl.tags.back());
          if (hl.tags.size() >= 2) nb.left2 = model.tags.tag(hl.tags[hl.tags.size() - 2]);
        }
        if (R) {
          nb.right1 = model.tags.tag(hr.tags.front());
          if (hr.tags.size() >= 2) nb.right2 = model.tags.tag(hr.tags[1]);
        }
        ctx.clear();
        context_features(surfaces[p], nb, setup.cfg, ctx);
        const FeatureVector ctx_ids = model.symbols.find_all(ctx);
        for (std::size_t c = 0; c < setup.candidates[p].size(); ++c) {
          const TagId t = setup.candidates[p][c];
          Hyp h;
          h.action = static_scores[p][c] + w.score(ctx_ids, t);
          h.score = hl.score + hr.score + h.action;
          h.tags.reserve(hl.tags.size() + 1 + hr.tags.size());
          h.tags = hl.tags;
          h.tags.push_back(t);
          h.tags.insert(h.tags.end(), hr.tags.begin(), hr.tags.end());
          cand.hyps.push_back(std::move(h));
        }
      }
    }
    const std::size_t keep = std::min(beam, cand.hyps.size());
    std::partial_sort(cand.hyps.begin(), cand.hyps.begin() + static_cast<long>(keep), cand.hyps.end(), ranks_before);
    cand.hyps.resize(keep);
  };

  for (std::size_t p = 0; p < n; ++p) build(p);

  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t p = 0; p < n; ++p) {
      if (!alive[p]) continue;
      if (best == n || cands[p].hyps[0].action > cands[best].hyps[0].action) best = p;
    }
    SpanHyps merged = std::move(cands[best]);
    alive[best] = 0;
    if (options.keep_trace) {
      TraceStep t;
      t.position = best;
      t.tag = merged.hyps[0].tags[best - merged.left];
      t.action_score = merged.hyps[0].action;
      for (std::size_t p = 0; p < n; ++p)
        if (alive[p]) t.best_other = std::max(t.best_other, cands[p].hyps[0].action);
      t.hypotheses = merged.hyps.size();
      result.trace.push_back(t);
    }
    result.commit_order.push_back(best);
    const int id = static_cast<int>(spans.size());
    for (std::size_t k = merged.left; k <= merged.right; ++k) owner[k] = id;
    const std::size_t left = merged.left, right = merged.right;
    spans.push_back(std::move(merged));
    if (left > 0 && alive[left - 1]) build(left - 1);
    if (right + 1 < n && alive[right + 1]) build(right + 1);
  }

  const SpanHyps& full = spans.back();
  if (full.left != 0 || full.right + 1 != n) throw InternalError("decoder finished without a full span");
  result.score = full.hyps[0].score;
  result.tags.reserve(n);
  for (TagId t : full.hyps[0].tags) result.tags.push_back(model.tags.tag(t));
  return result;
}

std::vector<DecodeResult> decode_corpus(const Corpus& corpus, const Model& model, const Lexicon& lexicon,
                                        const RuleCascade* rules, const DecodeOptions& options, std::size_t threads) {
  options.validate();
  std::vector<DecodeResult> results(corpus.sentences.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(1, corpus.sentences.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t s; (s = next.fetch_add(1)) < corpus.sentences.size();)
      results[s] = decode(corpus.sentences[s].surfaces(), model, lexicon, rules, options);
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return results;
}

double rescore(std::span<const std::string> surfaces, std::span<const std::string> tags,
               std::span<const std::size_t> commit_order, const Model& model, const Lexicon& lexicon,
               const RuleCascade* rules, const DecodeOptions& options) {
  const std::size_t n = surfaces.size();
  if (tags.size() != n) throw ArgumentError("tag sequence does not align with the sentence");
  if (commit_order.size() != n) throw ArgumentError("commit order is not a permutation of positions");
  std::vector<char> seen(n, 0);
  for (std::size_t p : commit_order) {
    if (p >= n || seen[p]) throw ArgumentError("commit order is not a permutation of positions");
    seen[p] = 1;
  }

  const FeatureConfig cfg = decode_feature_config(model, options);
  const auto strings = static_feature_strings(surfaces, lexicon, rules, cfg);
  std::vector<char> committed(n, 0);
  std::vector<std::string> feats;
  double total = 0.0;
  for (std::size_t p : commit_order) {
    const auto nb = visible_neighbors(p, n, committed, [&](std::size_t i) -> std::string_view { return tags[i]; });
    feats = strings[p];
    context_features(surfaces[p], nb, cfg, feats);
    if (const auto id = model.tags.id(tags[p])) total += model.averaged.score(model.symbols.find_all(feats), *id);
    committed[p] = 1;
  }
  return total;
}

std::vector<CandidateSet> decode_candidates(std::span<const std::string> surfaces, const Model& model,
                                            const Lexicon& lexicon, const RuleCascade* rules,
                                            const DecodeOptions& options) {
  const auto ids = candidate_ids(surfaces, model.tags, lexicon, options.candidate_source, rules,
                                 options.hard_output_rules);
  std::vector<CandidateSet> out(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (TagId t : ids[i]) out[i].push_back(model.tags.tag(t));
  return out;
}

}  // namespace morphotag
