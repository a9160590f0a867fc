#include "affect/perception/detectors.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "affect/util/text.hpp"

namespace affect::perception {

SurfaceFeatures detect_surface(std::string_view text, const lexicon::ModifierTables& modifiers) {
  SurfaceFeatures s;
  for (char c : text) {
    s.exclamation_count += c == '!';
    s.question_mark_count += c == '?';
  }
  for (const auto& t : tokenize(text, modifiers)) {
    if (t.kind == TokenKind::Emoticon) s.emoticons.emplace_back(t.surface, *modifiers.emoticon(t.surface));
    if (t.is_all_caps) ++s.all_caps_token_count;
  }
  return s;
}

std::vector<EntityMention> detect_entities(std::string_view text, std::span<const Token> tokens,
                                           const std::vector<lexicon::Gazetteer>& gazetteers) {
  std::vector<std::size_t> words;
  for (std::size_t i = 0; i < tokens.size(); ++i)
    if (tokens[i].is_word()) words.push_back(i);

  struct Candidate {
    std::size_t length;  // in words
    std::size_t first;   // index into `words`
    std::string gazetteer;
  };
  std::vector<Candidate> candidates;
  for (const auto& g : gazetteers) {
    if (!g.enabled()) continue;
    for (const auto& phrase : g.entries) {
      const auto parts = text::split(phrase, ' ');
      for (std::size_t w = 0; w + parts.size() <= words.size(); ++w) {
        bool match = true;
        for (std::size_t p = 0; p < parts.size() && match; ++p) {
          const auto& tok = tokens[words[w + p]];
          match = tok.lower == parts[p];
          // Phrase words must be adjacent in the text apart from whitespace.
          if (match && p > 0) {
            const auto& prev = tokens[words[w + p - 1]];
            match = words[w + p] == words[w + p - 1] + 1 &&
                    text::trim(text.substr(prev.end(), tok.begin - prev.end())).empty();
          }
        }
        if (match) candidates.push_back({parts.size(), w, g.name});
      }
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
    const auto span = [&](const Candidate& c) {
      return tokens[words[c.first + c.length - 1]].end() - tokens[words[c.first]].begin;
    };
    if (a.length != b.length) return a.length > b.length;
    if (span(a) != span(b)) return span(a) > span(b);
    if (a.first != b.first) return a.first < b.first;
    return a.gazetteer < b.gazetteer;
  });

  std::vector<EntityMention> out;
  const auto overlaps = [&](std::size_t b, std::size_t e) {
    for (const auto& m : out)
      if (b < m.end && m.begin < e) return true;
    return false;
  };
  for (const auto& c : candidates) {
    const auto b = tokens[words[c.first]].begin;
    const auto e = tokens[words[c.first + c.length - 1]].end();
    if (overlaps(b, e)) continue;
    out.push_back({c.gazetteer, std::string(text.substr(b, e - b)), b, e});
  }

  const std::string subject(text);
  for (const auto& g : gazetteers) {
    if (!g.enabled()) continue;
    for (const auto& re : g.compiled()) {
      for (auto it = std::sregex_iterator(subject.begin(), subject.end(), re); it != std::sregex_iterator(); ++it) {
        const auto b = static_cast<std::size_t>(it->position());
        const auto e = b + static_cast<std::size_t>(it->length());
        if (e == b || overlaps(b, e)) continue;
        out.push_back({g.name, it->str(), b, e});
      }
    }
  }

  std::sort(out.begin(), out.end(), [](const EntityMention& a, const EntityMention& b) {
    return a.begin != b.begin ? a.begin < b.begin : a.gazetteer < b.gazetteer;
  });
  return out;
}

FocusResult detect_focus(std::span<const Token> tokens, const lexicon::WordStats& stats) {
  struct Scored {
    double frequency;
    std::size_t position;
    const Token* token;
  };
  std::vector<Scored> pool;
  std::set<std::string> seen;
  // Walk backwards so a repeated word keeps its latest position.
  for (std::size_t i = tokens.size(); i-- > 0;) {
    const auto& t = tokens[i];
    if (!t.is_word() || stats.stopwords.count(t.lower)) continue;
    if (!std::any_of(t.lower.begin(), t.lower.end(), [](char c) { return text::is_alpha(c); })) continue;
    if (!seen.insert(t.lower).second) continue;
    auto it = stats.frequency.find(t.lower);
    pool.push_back({it == stats.frequency.end() ? 0.0 : it->second, t.position, &t});
  }
  std::stable_sort(pool.begin(), pool.end(), [](const Scored& a, const Scored& b) {
    if (a.frequency != b.frequency) return a.frequency < b.frequency;
    return a.position > b.position;
  });
  FocusResult r;
  for (std::size_t i = 0; i < pool.size() && i < 3; ++i) r.focus_terms.push_back(pool[i].token->surface);
  return r;
}

}  // namespace affect::perception
