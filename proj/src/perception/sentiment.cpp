#include <algorithm>
#include <filesystem>
#include <stdexcept>

#include "affect/perception/classifiers.hpp"
#include "affect/util/kv_config.hpp"
#include "affect/util/text.hpp"

namespace affect::perception {

std::string_view to_string(SentimentClass c) {
  switch (c) {
    case SentimentClass::Negative: return "negative";
    case SentimentClass::Neutral: return "neutral";
    case SentimentClass::Positive: return "positive";
  }
  return "neutral";
}

std::optional<SentimentClass> parse_sentiment_class(std::string_view s) {
  const auto l = text::to_lower(s);
  if (l == "negative") return SentimentClass::Negative;
  if (l == "neutral") return SentimentClass::Neutral;
  if (l == "positive") return SentimentClass::Positive;
  return std::nullopt;
}

SentimentSettings SentimentSettings::preset(const std::string& name, const std::string& conf_path) {
  SentimentSettings s;
  s.name = name;
  if (!std::filesystem::exists(conf_path)) {
    if (name == "v3_1") return s;
    throw ConfigError(conf_path, 0, "sentiment presets file missing");
  }
  const auto cfg = KvConfig::load(conf_path);
  bool known = false;
  for (const auto& [k, _] : cfg.values())
    if (k.rfind(name + ".", 0) == 0) known = true;
  if (!known) throw ConfigError(conf_path, 0, "unknown sentiment preset '" + name + "'");
  s.caps_multiplier = cfg.get_double_or(name + ".caps_multiplier", s.caps_multiplier);
  s.exclamation_multiplier = cfg.get_double_or(name + ".exclamation_multiplier", s.exclamation_multiplier);
  const auto scope = cfg.get_int_or(name + ".negation_scope", static_cast<std::int64_t>(s.negation_scope));
  if (scope < 0) throw ConfigError(conf_path, 0, "negation_scope must be >= 0");
  s.negation_scope = static_cast<std::size_t>(scope);
  s.use_intensifiers = cfg.get_bool_or(name + ".use_intensifiers", s.use_intensifiers);
  if (s.caps_multiplier < 1.0 || s.exclamation_multiplier < 1.0)
    throw ConfigError(conf_path, 0, "multipliers must be >= 1");
  return s;
}

SentimentClass classify_scores(double pos, double neg) {
  if (pos > neg) return SentimentClass::Positive;
  if (neg > pos) return SentimentClass::Negative;
  return SentimentClass::Neutral;
}

namespace {

// True if a negation word precedes token i within `scope` word tokens and no
// punctuation or emoticon intervenes.
bool negated(std::span<const Token> tokens, std::size_t i, const lexicon::ModifierTables& mods,
             std::size_t scope) {
  std::size_t words_between = 0;
  for (std::size_t j = i; j-- > 0;) {
    const auto& t = tokens[j];
    if (!t.is_word()) return false;
    if (mods.is_negation(t.lower)) return words_between < scope;
    if (++words_between >= scope) return false;
  }
  return false;
}

bool sentence_final_bang(std::span<const Token> tokens, std::size_t i) {
  const auto& t = tokens[i];
  if (t.kind != TokenKind::Punct || t.surface != "!") return false;
  if (i + 1 == tokens.size()) return true;
  const auto& next = tokens[i + 1];
  // A '!' glued to a following word is a leading mark, not a sentence end.
  return !(next.is_word() && next.begin == t.end());
}

}  // namespace

SentimentResult classify_sentiment(std::span<const Token> tokens, const lexicon::LexiconBundle& bundle,
                                   const SentimentSettings& settings) {
  const auto& mods = bundle.modifiers;
  double pos = 0.0, neg = 0.0;
  bool bang = false;

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& t = tokens[i];
    if (t.kind == TokenKind::Punct) {
      bang = bang || sentence_final_bang(tokens, i);
      continue;
    }
    if (!t.is_word()) continue;
    const bool is_pos = bundle.is_positive(t.lower);
    const bool is_neg = bundle.is_negative(t.lower);
    if (!is_pos && !is_neg) continue;

    double weight = 1.0;
    if (t.is_all_caps) weight *= settings.caps_multiplier;
    if (settings.use_intensifiers && i > 0 && tokens[i - 1].is_word())
      if (auto m = mods.multiplier(tokens[i - 1].lower)) weight *= *m;
    const bool flip = settings.negation_scope > 0 && negated(tokens, i, mods, settings.negation_scope);

    if (is_pos) (flip ? neg : pos) += weight;
    if (is_neg) (flip ? pos : neg) += weight;
  }

  if (bang) {
    if (pos > neg) pos *= settings.exclamation_multiplier;
    else if (neg > pos) neg *= settings.exclamation_multiplier;
  }

  for (const auto& t : tokens) {
    if (t.kind != TokenKind::Emoticon) continue;
    if (auto p = mods.emoticon(t.surface)) (*p == lexicon::Polarity::Positive ? pos : neg) += 1.0;
  }

  return {pos, neg, classify_scores(pos, neg)};
}

VadResult classify_vad(std::span<const Token> tokens, const lexicon::VadLexicon& vad) {
  struct Acc {
    double sum = 0, lo = 9, hi = 1;
    void add(double x) {
      sum += x;
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    double mean(std::size_t n) const { return std::clamp(sum / static_cast<double>(n), lo, hi); }
  } v, a, d;
  std::size_t n = 0;
  for (const auto& t : tokens) {
    if (!t.is_word()) continue;
    if (const auto* e = vad.find(t.lower)) {
      v.add(e->valence);
      a.add(e->arousal);
      d.add(e->dominance);
      ++n;
    }
  }
  VadResult r;
  r.matched_count = n;
  if (n > 0) {
    r.valence = v.mean(n);
    r.arousal = a.mean(n);
    r.dominance = d.mean(n);
  }
  return r;
}

CategoryProfile categorize(std::span<const Token> tokens, const lexicon::CategoryLexicon& lex) {
  CategoryProfile p;
  for (const auto& t : tokens) {
    if (!t.is_word()) continue;
    ++p.word_total;
    for (const auto& c : lex.lookup(t.lower)) ++p.counts[c];
  }
  return p;
}

}  // namespace affect::perception
