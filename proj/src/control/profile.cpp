#include "affect/control/profile.hpp"

#include <algorithm>

#include "affect/util/text.hpp"

namespace affect::control {

using perception::Token;
using perception::TokenKind;

bool AffectiveProfile::marks_removal(const Token& t, const lexicon::LexiconBundle& bundle) const {
  if (t.kind == TokenKind::Emoticon) {
    const auto p = bundle.modifiers.emoticon(t.surface);
    if (!p) return false;
    if (kind == ProfileKind::Neutral) return true;
    return removal_polarity && *p == *removal_polarity;
  }
  if (!t.is_word()) return false;
  if (removal_words.count(t.lower)) return true;
  if (!removal_polarity) return false;
  return *removal_polarity == lexicon::Polarity::Positive ? bundle.is_positive(t.lower) : bundle.is_negative(t.lower);
}

AffectiveProfile AffectiveProfile::neutral() { return {}; }

namespace {

bool clause_delimiter(const Token& t) {
  return t.kind == TokenKind::Punct && (t.surface == "," || t.surface == "." || t.surface == "!" ||
                                        t.surface == "?" || t.surface == ";");
}

std::string collapse_spaces(const std::string& s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

std::string erase_ranges(const std::string& text, std::vector<std::pair<std::size_t, std::size_t>> ranges) {
  std::sort(ranges.begin(), ranges.end());
  std::string out;
  std::size_t pos = 0;
  for (const auto& [b, e] : ranges) {
    if (b < pos) continue;
    out.append(text, pos, b - pos);
    out += ' ';
    pos = e;
  }
  out.append(text, pos, std::string::npos);
  return collapse_spaces(out);
}

bool has_content(const std::vector<Token>& tokens) {
  return std::any_of(tokens.begin(), tokens.end(), [](const Token& t) { return t.kind != TokenKind::Punct; });
}

}  // namespace

ResponseCandidate apply_profile(ResponseCandidate candidate, const AffectiveProfile& profile,
                                const lexicon::LexiconBundle& bundle, Rng& rng) {
  std::string text = candidate.text;
  auto tokens = perception::tokenize(text, bundle.modifiers);

  std::vector<std::pair<std::size_t, std::size_t>> removals;
  if (profile.kind == ProfileKind::Neutral) {
    for (const auto& t : tokens)
      if (profile.marks_removal(t, bundle)) removals.emplace_back(t.begin, t.end());
  } else {
    std::size_t start = 0;
    while (start < tokens.size()) {
      std::size_t end = start;
      while (end < tokens.size() && !clause_delimiter(tokens[end])) ++end;
      while (end < tokens.size() && clause_delimiter(tokens[end])) ++end;  // "!!", "?!"
      bool drop = false;
      for (std::size_t i = start; i < end && !drop; ++i) drop = profile.marks_removal(tokens[i], bundle);
      if (drop) removals.emplace_back(tokens[start].begin, tokens[end - 1].end());
      start = end;
    }
  }
  if (!removals.empty()) {
    text = erase_ranges(text, std::move(removals));
    tokens = perception::tokenize(text, bundle.modifiers);
  }

  if (!profile.replacement_map.empty()) {
    for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
      if (!it->is_word()) continue;
      auto r = profile.replacement_map.find(it->lower);
      if (r != profile.replacement_map.end()) text.replace(it->begin, it->surface.size(), r->second);
    }
    tokens = perception::tokenize(text, bundle.modifiers);
  }

  if (!has_content(tokens)) text = profile.fallback;

  if (profile.kind != ProfileKind::Neutral && !profile.insertion_pool.empty() && profile.insertion_probability > 0.0 &&
      rng.bernoulli(profile.insertion_probability))
    text += " " + profile.insertion_pool[rng.index(profile.insertion_pool.size())];

  candidate.text = std::move(text);
  return candidate;
}

AffectiveProfile parse_profile(const KvConfig& cfg, const lexicon::LexiconBundle& bundle) {
  AffectiveProfile p;
  const auto kind = parse_profile_kind(cfg.get("kind"));
  if (!kind) throw ConfigError(cfg.source(), 0, "kind must be positive, negative or neutral");
  p.kind = *kind;

  if (cfg.has("remove_polarity")) {
    const auto pol = text::to_lower(cfg.get("remove_polarity"));
    if (pol == "positive") p.removal_polarity = lexicon::Polarity::Positive;
    else if (pol == "negative") p.removal_polarity = lexicon::Polarity::Negative;
    else if (pol != "none") throw ConfigError(cfg.source(), 0, "remove_polarity must be positive, negative or none");
  }
  const auto expected = p.kind == ProfileKind::Negative   ? std::optional(lexicon::Polarity::Positive)
                        : p.kind == ProfileKind::Positive ? std::optional(lexicon::Polarity::Negative)
                                                          : std::nullopt;
  if (p.removal_polarity != expected)
    throw ConfigError(cfg.source(), 0,
                      "a " + std::string(to_string(p.kind)) + " profile must remove " +
                          (expected ? std::string(lexicon::to_string(*expected)) : std::string("none")) + " expressions");

  for (const auto& w : cfg.get_list("remove_words")) {
    if (text::contains_space(w)) throw ConfigError(cfg.source(), 0, "remove_words entries must be single words");
    p.removal_words.insert(text::to_lower(w));
  }
  p.insertion_pool = cfg.get_list("insertions");
  p.insertion_probability = cfg.get_double_or("insertion_probability", 0.0);
  if (p.insertion_probability < 0.0 || p.insertion_probability > 1.0)
    throw ConfigError(cfg.source(), 0, "insertion_probability must be in [0,1]");
  for (const auto& pair : cfg.get_list("replace")) {
    const auto colon = pair.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == pair.size())
      throw ConfigError(cfg.source(), 0, "replace entries must be from:to");
    p.replacement_map[text::to_lower(text::trim(pair.substr(0, colon)))] = std::string(text::trim(pair.substr(colon + 1)));
  }
  p.fallback = cfg.get_or("fallback", p.fallback);
  if (!has_content(perception::tokenize(p.fallback, bundle.modifiers)))
    throw ConfigError(cfg.source(), 0, "fallback must contain a word or emoticon");

  const auto check = [&](const std::string& phrase, const char* what) {
    for (const auto& t : perception::tokenize(phrase, bundle.modifiers))
      if (p.marks_removal(t, bundle))
        throw ConfigError(cfg.source(), 0,
                          std::string(what) + " '" + phrase + "' contains '" + t.surface + "', which this profile removes");
  };
  for (const auto& s : p.insertion_pool) check(s, "insertion");
  for (const auto& [_, to] : p.replacement_map) check(to, "replacement");
  check(p.fallback, "fallback");
  return p;
}

AffectiveProfile load_profile(const std::string& path, const lexicon::LexiconBundle& bundle) {
  return parse_profile(KvConfig::load(path), bundle);
}

}  // namespace affect::control
