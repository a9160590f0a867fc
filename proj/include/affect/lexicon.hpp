#pragma once

// Lexical resources for the perception layer: polarity word lists, VAD
// norms, a word-category dictionary with stem wildcards, modifier tables,
// and entity gazetteers. A LexiconBundle is immutable once loaded.

#include <cstddef>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace affect::lexicon {

class LexiconError : public std::runtime_error {
 public:
  enum class Kind { MissingFile, FormatError, InvariantViolation };

  LexiconError(Kind kind, std::string file, std::size_t line, const std::string& what);

  Kind kind() const { return kind_; }
  const std::string& file() const { return file_; }
  /// 1-based line number, 0 when the error is not tied to a line.
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::string file_;
  std::size_t line_;
};

enum class Polarity { Positive, Negative };

std::string_view to_string(Polarity p);

struct PolarityLexicon {
  std::string source_id;
  std::set<std::string> positive_words;
  std::set<std::string> negative_words;

  bool operator==(const PolarityLexicon&) const = default;
};

struct VadEntry {
  double valence = 5.0;
  double arousal = 5.0;
  double dominance = 5.0;

  bool operator==(const VadEntry&) const = default;
};

struct VadLexicon {
  std::map<std::string, VadEntry> entries;

  const VadEntry* find(std::string_view word) const;
  bool operator==(const VadLexicon&) const = default;
};

enum class CategoryGroup { Linguistic, Psychological, PersonalConcern, Paralinguistic };

std::string_view to_string(CategoryGroup g);
std::optional<CategoryGroup> parse_category_group(std::string_view s);

struct CategoryInfo {
  std::string name;
  CategoryGroup group = CategoryGroup::Linguistic;

  bool operator==(const CategoryInfo&) const = default;
};

struct CategoryPattern {
  /// Pattern text without the trailing wildcard.
  std::string stem;
  bool is_stem = false;
  std::set<std::string> categories;

  std::string pattern() const { return is_stem ? stem + "*" : stem; }
  bool operator==(const CategoryPattern&) const = default;
};

class CategoryLexicon {
 public:
  CategoryLexicon() = default;
  /// Validates that every category referenced by a pattern is registered.
  CategoryLexicon(std::vector<CategoryPattern> entries, std::map<std::string, CategoryInfo> registry);

  /// Union of categories of the exact pattern equal to `word` and of every
  /// stem pattern that is a prefix of `word`.
  std::set<std::string> lookup(std::string_view word) const;

  const std::vector<CategoryPattern>& entries() const { return entries_; }
  const std::map<std::string, CategoryInfo>& registry() const { return registry_; }
  std::size_t max_categories_per_pattern() const;

  bool operator==(const CategoryLexicon& o) const {
    return entries_ == o.entries_ && registry_ == o.registry_;
  }

 private:
  std::vector<CategoryPattern> entries_;
  std::map<std::string, CategoryInfo> registry_;
  std::unordered_map<std::string, std::size_t> exact_;
  std::unordered_map<std::string, std::size_t> stems_;
  std::size_t longest_stem_ = 0;
};

std::set<std::string> lookup_categories(std::string_view word, const CategoryLexicon& lex);

struct ModifierTables {
  std::set<std::string> negations;
  std::map<std::string, double> intensifiers;
  std::map<std::string, double> diminishers;
  /// Emoticons keep their original case.
  std::map<std::string, Polarity> emoticons;

  bool is_negation(std::string_view lower) const;
  /// Intensifier or diminisher multiplier for a lowercase word.
  std::optional<double> multiplier(std::string_view lower) const;
  std::optional<Polarity> emoticon(std::string_view surface) const;
  /// Emoticon keys, longest first; used by the tokenizer.
  std::vector<std::string> emoticons_by_length() const;

  bool operator==(const ModifierTables&) const = default;
};

/// Emoticon table used when no bundle is available.
const ModifierTables& builtin_modifiers();

struct Gazetteer {
  std::string name;
  std::set<std::string> entries;
  std::vector<std::string> patterns;

  bool enabled() const { return !entries.empty(); }
  const std::vector<std::regex>& compiled() const { return compiled_; }
  void compile();

  bool operator==(const Gazetteer& o) const {
    return name == o.name && entries == o.entries && patterns == o.patterns;
  }

 private:
  std::vector<std::regex> compiled_;
};

/// Stopwords and corpus word frequencies used by the focus detector.
struct WordStats {
  std::set<std::string> stopwords;
  std::map<std::string, double> frequency;

  bool operator==(const WordStats&) const = default;
};

struct LexiconBundle {
  std::vector<PolarityLexicon> polarity;
  VadLexicon vad;
  CategoryLexicon categories;
  ModifierTables modifiers;
  std::vector<Gazetteer> gazetteers;
  WordStats word_stats;
  /// Entry counts per loaded file name.
  std::map<std::string, std::size_t> counts;

  bool is_positive(std::string_view lower) const;
  bool is_negative(std::string_view lower) const;
  const std::set<std::string>& positive_union() const { return positive_union_; }
  const std::set<std::string>& negative_union() const { return negative_union_; }
  const Gazetteer* gazetteer(std::string_view name) const;

  /// Recomputes the merged polarity sets after `polarity` changes.
  void index();

  bool operator==(const LexiconBundle& o) const {
    return polarity == o.polarity && vad == o.vad && categories == o.categories &&
           modifiers == o.modifiers && gazetteers == o.gazetteers && word_stats == o.word_stats &&
           counts == o.counts;
  }

 private:
  std::set<std::string> positive_union_;
  std::set<std::string> negative_union_;
};

/// Loads and validates every resource file under `root`.
///
/// Required: positive.tsv, negative.tsv, vad.tsv, categories.tsv,
/// category_registry.tsv, negations.tsv, intensifiers.tsv, diminishers.tsv,
/// emoticons.tsv. Optional: positive_<id>.tsv / negative_<id>.tsv pairs,
/// gazetteer_<name>.tsv (+ .regex), stopwords.tsv, wordfreq.tsv.
LexiconBundle load_lexicons(const std::string& root);

/// `AFFECT_LEXICON_DIR` if set, otherwise `fallback`.
std::string resolve_lexicon_dir(const std::string& fallback);

}  // namespace affect::lexicon
