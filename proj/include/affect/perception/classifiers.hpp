#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "affect/lexicon.hpp"
#include "affect/perception/tokenizer.hpp"

namespace affect::perception {

enum class SentimentClass { Negative, Neutral, Positive };

std::string_view to_string(SentimentClass c);
std::optional<SentimentClass> parse_sentiment_class(std::string_view s);

/// Constants of the rule-based sentiment pipeline.
struct SentimentSettings {
  std::string name = "v3_1";
  double caps_multiplier = 1.5;
  double exclamation_multiplier = 1.5;
  /// Number of word tokens after a negation word whose polarity flips.
  std::size_t negation_scope = 2;
  bool use_intensifiers = true;

  /// Reads `<preset>.<key>` entries from a sentiment.conf file. Missing keys
  /// keep the defaults above; an unknown preset name is an error.
  static SentimentSettings preset(const std::string& name, const std::string& conf_path);
  static SentimentSettings defaults() { return {}; }

  bool operator==(const SentimentSettings&) const = default;
};

struct SentimentResult {
  double pos_score = 0.0;
  double neg_score = 0.0;
  SentimentClass klass = SentimentClass::Neutral;

  bool operator==(const SentimentResult&) const = default;
};

SentimentClass classify_scores(double pos, double neg);

/// Lexicon pipeline: base counts, negation flip within the scope window,
/// caps and intensifier/diminisher multipliers, one exclamation boost of the
/// dominant polarity, then +1 per emoticon.
SentimentResult classify_sentiment(std::span<const Token> tokens, const lexicon::LexiconBundle& bundle,
                                   const SentimentSettings& settings = {});

struct VadResult {
  std::optional<double> valence;
  std::optional<double> arousal;
  std::optional<double> dominance;
  std::size_t matched_count = 0;

  bool operator==(const VadResult&) const = default;
};

/// Unweighted mean over the word tokens found in the VAD lexicon.
VadResult classify_vad(std::span<const Token> tokens, const lexicon::VadLexicon& vad);

struct CategoryProfile {
  std::map<std::string, std::size_t> counts;
  std::size_t word_total = 0;

  bool operator==(const CategoryProfile&) const = default;
};

CategoryProfile categorize(std::span<const Token> tokens, const lexicon::CategoryLexicon& lex);

}  // namespace affect::perception
