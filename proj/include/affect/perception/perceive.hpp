#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "affect/lexicon.hpp"
#include "affect/perception/classifiers.hpp"
#include "affect/perception/detectors.hpp"
#include "affect/perception/dialogue_act.hpp"
#include "affect/perception/tokenizer.hpp"

namespace affect::perception {

struct Utterance {
  std::string text;
  std::string sender;
  /// Milliseconds since session start.
  std::int64_t timestamp_ms = 0;
  std::optional<std::string> addressee_hint;
};

struct PerceptionReport {
  std::vector<Token> tokens;
  SentimentResult sentiment;
  VadResult vad;
  CategoryProfile categories;
  DialogueActLabel dialogue_act;
  SurfaceFeatures surface;
  std::vector<EntityMention> entities;
  FocusResult focus;

  bool has_entity(std::string_view gazetteer) const;
  bool has_category(std::string_view id) const;
  bool has_word(std::string_view lower) const;

  bool operator==(const PerceptionReport&) const = default;
};

PerceptionReport perceive(const Utterance& utterance, const lexicon::LexiconBundle& bundle,
                          const DialogueActClassifier& model, const SentimentSettings& settings = {});

/// Bundles the immutable resources perception needs.
class Perceiver {
 public:
  Perceiver(const lexicon::LexiconBundle& bundle, const DialogueActClassifier& model,
            SentimentSettings settings = {})
      : bundle_(&bundle), model_(&model), settings_(std::move(settings)) {}

  PerceptionReport perceive(const Utterance& u) const { return perception::perceive(u, *bundle_, *model_, settings_); }
  const lexicon::LexiconBundle& bundle() const { return *bundle_; }
  const SentimentSettings& settings() const { return settings_; }

 private:
  const lexicon::LexiconBundle* bundle_;
  const DialogueActClassifier* model_;
  SentimentSettings settings_;
};

}  // namespace affect::perception
