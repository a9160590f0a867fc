#pragma once

// Keyword/wildcard response rules used as the open-domain fallback.

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "affect/control/alds.hpp"
#include "affect/control/types.hpp"

namespace affect::control {

struct PatternRule {
  /// Lowercase tokens; "*" matches zero or more tokens.
  std::vector<std::string> pattern;
  /// Response text; {1}, {2}, ... refer to wildcard captures.
  std::string response_template;
  /// bar | stranger | exclusion-short | generic (from the file name).
  std::string tag;

  std::size_t wildcard_count() const;
  bool operator==(const PatternRule&) const = default;
};

/// Lines of the form `PATTERN <tokens with *> SAY "<template>"`.
std::vector<PatternRule> parse_patterns(std::string_view content, const std::string& tag,
                                        const std::string& source = "<memory>");
/// Tag defaults to the file stem.
std::vector<PatternRule> load_patterns(const std::string& path);

/// Lowercased word and emoticon tokens of `text`, dropping punctuation and
/// any token in `ignore`.
std::vector<std::string> normalize_for_patterns(std::string_view text, const std::set<std::string>& ignore = {});

/// Every matching rule's filled template (priority 1), most specific first:
/// fewest tokens consumed by wildcards, then rule order.
std::vector<ResponseCandidate> match_patterns(std::string_view utterance, const std::vector<PatternRule>& rules,
                                              const std::set<std::string>& ignore = {});

}  // namespace affect::control
