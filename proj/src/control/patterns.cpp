#include "affect/control/patterns.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <sstream>

#include "affect/perception/tokenizer.hpp"
#include "affect/util/text.hpp"

namespace affect::control {

std::size_t PatternRule::wildcard_count() const {
  return static_cast<std::size_t>(std::count(pattern.begin(), pattern.end(), "*"));
}

std::vector<PatternRule> parse_patterns(std::string_view content, const std::string& tag, const std::string& source) {
  std::vector<PatternRule> out;
  std::size_t lineno = 0;
  for (auto raw : text::split(content, '\n')) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line(text::trim(raw));
    if (line.empty() || line.front() == '#') continue;
    if (line.rfind("PATTERN ", 0) != 0) throw ScriptError(source, lineno, "expected PATTERN");
    const auto say = line.find(" SAY ");
    if (say == std::string::npos) throw ScriptError(source, lineno, "expected SAY");
    if (say < 8) throw ScriptError(source, lineno, "empty pattern");
    PatternRule rule;
    rule.tag = tag;
    std::istringstream toks(line.substr(8, say - 8));
    for (std::string t; toks >> t;) {
      if (t == "*") {
        rule.pattern.push_back(t);
        continue;
      }
      for (auto& n : normalize_for_patterns(t)) rule.pattern.push_back(std::move(n));
    }
    if (rule.pattern.empty()) throw ScriptError(source, lineno, "empty pattern");

    auto rest = std::string(text::trim(line.substr(say + 5)));
    if (rest.size() < 2 || rest.front() != '"' || rest.back() != '"')
      throw ScriptError(source, lineno, "template must be double-quoted");
    rule.response_template = rest.substr(1, rest.size() - 2);
    if (rule.response_template.empty()) throw ScriptError(source, lineno, "empty template");

    const auto wildcards = rule.wildcard_count();
    const auto& t = rule.response_template;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] != '{') continue;
      const auto close = t.find('}', i);
      if (close == std::string::npos) throw ScriptError(source, lineno, "unterminated slot");
      std::size_t slot = 0;
      try {
        slot = std::stoul(t.substr(i + 1, close - i - 1));
      } catch (const std::exception&) {
        throw ScriptError(source, lineno, "pattern slots must be numeric");
      }
      if (slot == 0 || slot > wildcards) throw ScriptError(source, lineno, "capture slot exceeds wildcard count");
      i = close;
    }
    out.push_back(std::move(rule));
  }
  return out;
}

std::vector<PatternRule> load_patterns(const std::string& path) {
  std::string content;
  try {
    content = text::read_file(path);
  } catch (const std::runtime_error&) {
    throw ScriptError(path, 0, "cannot open file");
  }
  return parse_patterns(content, std::filesystem::path(path).stem().string(), path);
}

std::vector<std::string> normalize_for_patterns(std::string_view utterance, const std::set<std::string>& ignore) {
  std::vector<std::string> out;
  for (const auto& t : perception::tokenize(utterance)) {
    if (t.kind == perception::TokenKind::Punct) continue;
    auto lower = text::to_lower(t.surface);
    if (ignore.count(lower)) continue;
    out.push_back(std::move(lower));
  }
  return out;
}

namespace {

using Captures = std::vector<std::pair<std::size_t, std::size_t>>;  // [begin, end) per wildcard

// Leftmost-shortest wildcard assignment.
bool match_at(const std::vector<std::string>& pat, std::size_t pi, const std::vector<std::string>& toks,
              std::size_t ti, Captures& caps) {
  if (pi == pat.size()) return ti == toks.size();
  if (pat[pi] == "*") {
    for (std::size_t end = ti; end <= toks.size(); ++end) {
      caps.emplace_back(ti, end);
      if (match_at(pat, pi + 1, toks, end, caps)) return true;
      caps.pop_back();
    }
    return false;
  }
  return ti < toks.size() && toks[ti] == pat[pi] && match_at(pat, pi + 1, toks, ti + 1, caps);
}

std::optional<std::string> fill(const std::string& tmpl, const std::vector<std::string>& toks, const Captures& caps) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] != '{') {
      out += tmpl[i];
      continue;
    }
    const auto close = tmpl.find('}', i);
    const auto slot = std::stoul(tmpl.substr(i + 1, close - i - 1));
    const auto [b, e] = caps[slot - 1];
    if (b == e) return std::nullopt;
    out += text::join(std::vector<std::string>(toks.begin() + static_cast<long>(b), toks.begin() + static_cast<long>(e)), " ");
    i = close;
  }
  return out;
}

}  // namespace

std::vector<ResponseCandidate> match_patterns(std::string_view utterance, const std::vector<PatternRule>& rules,
                                              const std::set<std::string>& ignore) {
  const auto toks = normalize_for_patterns(utterance, ignore);
  struct Hit {
    std::size_t consumed;
    std::size_t order;
    std::string text;
  };
  std::vector<Hit> hits;
  for (std::size_t r = 0; r < rules.size(); ++r) {
    Captures caps;
    if (!match_at(rules[r].pattern, 0, toks, 0, caps)) continue;
    auto text = fill(rules[r].response_template, toks, caps);
    if (!text) continue;
    const auto literals = rules[r].pattern.size() - rules[r].wildcard_count();
    hits.push_back({toks.size() - literals, r, std::move(*text)});
  }
  std::stable_sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    return a.consumed != b.consumed ? a.consumed < b.consumed : a.order < b.order;
  });
  std::vector<ResponseCandidate> out;
  for (std::size_t i = 0; i < hits.size(); ++i)
    out.push_back({std::move(hits[i].text), ResponseSource::Pattern, kPatternPriority, std::nullopt, static_cast<int>(i)});
  return out;
}

}  // namespace affect::control
