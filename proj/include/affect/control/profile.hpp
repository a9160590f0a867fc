#pragma once

// Post-processing of response candidates so they conform to an affective
// profile: strip polarity-marked clauses, replace words, insert
// profile-consistent phrases.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "affect/control/types.hpp"
#include "affect/lexicon.hpp"
#include "affect/perception/tokenizer.hpp"
#include "affect/util/kv_config.hpp"
#include "affect/util/rng.hpp"

namespace affect::control {

struct AffectiveProfile {
  ProfileKind kind = ProfileKind::Neutral;
  /// Clauses carrying a word or emoticon of this polarity are removed.
  std::optional<lexicon::Polarity> removal_polarity;
  /// Extra words that trigger clause removal.
  std::set<std::string> removal_words;
  std::vector<std::string> insertion_pool;
  double insertion_probability = 0.0;
  std::map<std::string, std::string> replacement_map;
  /// Used when removals leave nothing.
  std::string fallback = "hmm.";

  /// True if this token makes its clause removable.
  bool marks_removal(const perception::Token& token, const lexicon::LexiconBundle& bundle) const;

  static AffectiveProfile neutral();
  bool operator==(const AffectiveProfile&) const = default;
};

/// Keys: kind, remove_polarity, remove_words, insertions, insertion_probability,
/// replace (`from:to` pairs), fallback. Lists are '|'-separated. Throws
/// ConfigError when the profile could reinsert what it removes.
AffectiveProfile parse_profile(const KvConfig& config, const lexicon::LexiconBundle& bundle);
AffectiveProfile load_profile(const std::string& path, const lexicon::LexiconBundle& bundle);

ResponseCandidate apply_profile(ResponseCandidate candidate, const AffectiveProfile& profile,
                                const lexicon::LexiconBundle& bundle, Rng& rng);

}  // namespace affect::control
