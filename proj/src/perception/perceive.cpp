#include "affect/perception/perceive.hpp"

namespace affect::perception {

bool PerceptionReport::has_entity(std::string_view gazetteer) const {
  for (const auto& e : entities)
    if (e.gazetteer == gazetteer) return true;
  return false;
}

bool PerceptionReport::has_category(std::string_view id) const {
  auto it = categories.counts.find(std::string(id));
  return it != categories.counts.end() && it->second > 0;
}

bool PerceptionReport::has_word(std::string_view lower) const {
  for (const auto& t : tokens)
    if (t.lower == lower) return true;
  return false;
}

PerceptionReport perceive(const Utterance& utterance, const lexicon::LexiconBundle& bundle,
                          const DialogueActClassifier& model, const SentimentSettings& settings) {
  PerceptionReport r;
  r.tokens = tokenize(utterance.text, bundle.modifiers);
  r.sentiment = classify_sentiment(r.tokens, bundle, settings);
  r.vad = classify_vad(r.tokens, bundle.vad);
  r.categories = categorize(r.tokens, bundle.categories);
  r.dialogue_act = model.classify(utterance.text);
  r.surface = detect_surface(utterance.text, bundle.modifiers);
  r.entities = detect_entities(utterance.text, r.tokens, bundle.gazetteers);
  r.focus = detect_focus(r.tokens, bundle.word_stats);
  return r;
}

}  // namespace affect::perception
