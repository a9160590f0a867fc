#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "affect/lexicon.hpp"
#include "affect/perception/tokenizer.hpp"

namespace affect::perception {

struct SurfaceFeatures {
  std::size_t exclamation_count = 0;
  std::size_t question_mark_count = 0;
  std::vector<std::pair<std::string, lexicon::Polarity>> emoticons;
  std::size_t all_caps_token_count = 0;

  bool operator==(const SurfaceFeatures&) const = default;
};

SurfaceFeatures detect_surface(std::string_view text, const lexicon::ModifierTables& modifiers);

struct EntityMention {
  std::string gazetteer;
  std::string phrase;
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const EntityMention&) const = default;
};

/// Longest gazetteer phrase first (over word tokens), then regexes;
/// spans never overlap. Results are ordered by position.
std::vector<EntityMention> detect_entities(std::string_view text, std::span<const Token> tokens,
                                           const std::vector<lexicon::Gazetteer>& gazetteers);

struct FocusResult {
  std::vector<std::string> focus_terms;

  bool operator==(const FocusResult&) const = default;
};

/// Up to three non-stopword word tokens ranked by corpus rarity, later
/// position winning ties. Approximates the original focus detector.
FocusResult detect_focus(std::span<const Token> tokens, const lexicon::WordStats& stats);

}  // namespace affect::perception
