#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "affect/lexicon.hpp"

namespace affect::perception {

enum class TokenKind { Word, Punct, Emoticon };

struct Token {
  std::string surface;
  std::string lower;
  bool is_all_caps = false;
  std::size_t position = 0;
  TokenKind kind = TokenKind::Word;
  /// Byte offset of `surface` in the source text.
  std::size_t begin = 0;

  std::size_t end() const { return begin + surface.size(); }
  bool is_word() const { return kind == TokenKind::Word; }
  bool operator==(const Token&) const = default;
};

/// True iff `s` has at least two letters and all of them are uppercase.
bool all_caps(std::string_view s);

/// Whitespace tokenizer. Leading and trailing punctuation become separate
/// punctuation tokens (one per character); emoticons from the modifier
/// table stay whole, even when glued to punctuation.
std::vector<Token> tokenize(std::string_view text, const lexicon::ModifierTables& modifiers);
std::vector<Token> tokenize(std::string_view text);

std::size_t word_count(const std::vector<Token>& tokens);

}  // namespace affect::perception
