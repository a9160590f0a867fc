#include "affect/perception/tokenizer.hpp"

#include <cctype>

#include "affect/util/text.hpp"

namespace affect::perception {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Emoticons that start (or end) with a letter only match at a chunk
// boundary, so "foxD" does not yield "xD".
const std::string* match_prefix(std::string_view chunk, const std::vector<std::string>& emoticons) {
  for (const auto& e : emoticons) {
    if (chunk.size() < e.size() || chunk.compare(0, e.size(), e) != 0) continue;
    if (chunk.size() == e.size() || text::is_punct(e.back()) || !text::is_alpha(chunk[e.size()])) return &e;
  }
  return nullptr;
}

const std::string* match_suffix(std::string_view chunk, const std::vector<std::string>& emoticons) {
  for (const auto& e : emoticons) {
    if (chunk.size() < e.size() || chunk.compare(chunk.size() - e.size(), e.size(), e) != 0) continue;
    if (chunk.size() == e.size() || text::is_punct(e.front()) ||
        !text::is_alpha(chunk[chunk.size() - e.size() - 1]))
      return &e;
  }
  return nullptr;
}

Token make(std::string_view surface, std::size_t begin, TokenKind kind) {
  Token t;
  t.surface = std::string(surface);
  t.lower = kind == TokenKind::Emoticon ? t.surface : text::to_lower(surface);
  t.is_all_caps = kind == TokenKind::Word && all_caps(surface);
  t.kind = kind;
  t.begin = begin;
  return t;
}

void split_chunk(std::string_view chunk, std::size_t offset, const std::vector<std::string>& emoticons,
                 std::vector<Token>& out) {
  std::size_t lo = 0, hi = chunk.size();
  std::vector<Token> head, tail;

  while (lo < hi) {
    const auto rest = chunk.substr(lo, hi - lo);
    if (const auto* e = match_prefix(rest, emoticons)) {
      head.push_back(make(*e, offset + lo, TokenKind::Emoticon));
      lo += e->size();
    } else if (text::is_punct(rest.front())) {
      head.push_back(make(rest.substr(0, 1), offset + lo, TokenKind::Punct));
      ++lo;
    } else {
      break;
    }
  }
  while (lo < hi) {
    const auto rest = chunk.substr(lo, hi - lo);
    if (const auto* e = match_suffix(rest, emoticons)) {
      hi -= e->size();
      tail.push_back(make(*e, offset + hi, TokenKind::Emoticon));
    } else if (text::is_punct(rest.back())) {
      --hi;
      tail.push_back(make(chunk.substr(hi, 1), offset + hi, TokenKind::Punct));
    } else {
      break;
    }
  }

  for (auto& t : head) out.push_back(std::move(t));
  if (lo < hi) out.push_back(make(chunk.substr(lo, hi - lo), offset + lo, TokenKind::Word));
  for (auto it = tail.rbegin(); it != tail.rend(); ++it) out.push_back(std::move(*it));
}

std::vector<Token> tokenize_with(std::string_view text, const std::vector<std::string>& emoticons) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) split_chunk(text.substr(start, i - start), start, emoticons, out);
  }
  for (std::size_t k = 0; k < out.size(); ++k) out[k].position = k;
  return out;
}

}  // namespace

bool all_caps(std::string_view s) {
  std::size_t letters = 0;
  for (char c : s) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalpha(u)) {
      if (!std::isupper(u)) return false;
      ++letters;
    }
  }
  return letters >= 2;
}

std::vector<Token> tokenize(std::string_view text, const lexicon::ModifierTables& modifiers) {
  return tokenize_with(text, modifiers.emoticons_by_length());
}

std::vector<Token> tokenize(std::string_view text) {
  static const auto emoticons = lexicon::builtin_modifiers().emoticons_by_length();
  return tokenize_with(text, emoticons);
}

std::size_t word_count(const std::vector<Token>& tokens) {
  std::size_t n = 0;
  for (const auto& t : tokens) n += t.is_word();
  return n;
}

}  // namespace affect::perception
