#include "affect/lexicon.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "affect/util/text.hpp"

namespace fs = std::filesystem;

namespace affect::lexicon {

namespace {

using Kind = LexiconError::Kind;

struct Row {
  std::size_t line;
  std::vector<std::string> fields;
};

std::vector<Row> read_rows(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LexiconError(Kind::MissingFile, path.string(), 0, "cannot open file");
  std::vector<Row> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || line.front() == '#') continue;
    auto fields = text::split(line, '\t');
    for (auto& f : fields) f = std::string(text::trim(f));
    rows.push_back({lineno, std::move(fields)});
  }
  return rows;
}

std::vector<Row> read_required(const fs::path& root, const char* name) {
  const auto path = root / name;
  if (!fs::exists(path)) throw LexiconError(Kind::MissingFile, path.string(), 0, "required file missing");
  return read_rows(path);
}

[[noreturn]] void format_error(const fs::path& file, std::size_t line, const std::string& what) {
  throw LexiconError(Kind::FormatError, file.string(), line, what);
}

[[noreturn]] void invariant_error(const fs::path& file, std::size_t line, const std::string& what) {
  throw LexiconError(Kind::InvariantViolation, file.string(), line, what);
}

void expect_fields(const fs::path& file, const Row& row, std::size_t n) {
  if (row.fields.size() != n)
    format_error(file, row.line,
                 "expected " + std::to_string(n) + " tab-separated fields, got " +
                     std::to_string(row.fields.size()));
}

std::string checked_word(const fs::path& file, const Row& row, const std::string& raw) {
  if (raw.empty()) format_error(file, row.line, "empty entry");
  if (text::contains_space(raw)) format_error(file, row.line, "entry contains whitespace: '" + raw + "'");
  return text::to_lower(raw);
}

double parse_number(const fs::path& file, const Row& row, const std::string& s) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  format_error(file, row.line, "not a number: '" + s + "'");
}

std::set<std::string> read_word_set(const fs::path& file, const std::vector<Row>& rows) {
  std::set<std::string> out;
  for (const auto& row : rows) {
    expect_fields(file, row, 1);
    auto w = checked_word(file, row, row.fields[0]);
    if (!out.insert(w).second) format_error(file, row.line, "duplicate entry '" + w + "'");
  }
  return out;
}

std::map<std::string, double> read_multipliers(const fs::path& file, const std::vector<Row>& rows,
                                               bool intensifier) {
  std::map<std::string, double> out;
  for (const auto& row : rows) {
    expect_fields(file, row, 2);
    auto w = checked_word(file, row, row.fields[0]);
    double m = parse_number(file, row, row.fields[1]);
    if (intensifier ? !(m > 1.0) : !(m > 0.0 && m < 1.0))
      invariant_error(file, row.line,
                      intensifier ? "intensifier multiplier must be > 1" : "diminisher multiplier must be in (0,1)");
    if (!out.emplace(w, m).second) format_error(file, row.line, "duplicate entry '" + w + "'");
  }
  return out;
}

PolarityLexicon load_polarity(const fs::path& pos, const fs::path& neg, std::string id,
                              std::map<std::string, std::size_t>& counts) {
  PolarityLexicon lex;
  lex.source_id = std::move(id);
  lex.positive_words = read_word_set(pos, read_rows(pos));
  lex.negative_words = read_word_set(neg, read_rows(neg));
  for (const auto& w : lex.positive_words)
    if (lex.negative_words.count(w))
      invariant_error(neg, 0, "'" + w + "' is both positive and negative in source " + lex.source_id);
  counts[pos.filename().string()] = lex.positive_words.size();
  counts[neg.filename().string()] = lex.negative_words.size();
  return lex;
}

VadLexicon load_vad(const fs::path& file, const std::vector<Row>& rows) {
  VadLexicon lex;
  for (const auto& row : rows) {
    expect_fields(file, row, 4);
    auto w = checked_word(file, row, row.fields[0]);
    VadEntry e{parse_number(file, row, row.fields[1]), parse_number(file, row, row.fields[2]),
               parse_number(file, row, row.fields[3])};
    for (double v : {e.valence, e.arousal, e.dominance})
      if (!(v >= 1.0 && v <= 9.0)) invariant_error(file, row.line, "VAD value outside [1,9] for '" + w + "'");
    if (!lex.entries.emplace(w, e).second) format_error(file, row.line, "duplicate entry '" + w + "'");
  }
  return lex;
}

std::map<std::string, CategoryInfo> load_registry(const fs::path& file, const std::vector<Row>& rows) {
  std::map<std::string, CategoryInfo> reg;
  for (const auto& row : rows) {
    expect_fields(file, row, 3);
    auto id = checked_word(file, row, row.fields[0]);
    auto group = parse_category_group(row.fields[2]);
    if (!group) format_error(file, row.line, "unknown category group '" + row.fields[2] + "'");
    if (!reg.emplace(id, CategoryInfo{row.fields[1], *group}).second)
      format_error(file, row.line, "duplicate category id '" + id + "'");
  }
  return reg;
}

std::vector<CategoryPattern> load_category_patterns(const fs::path& file, const std::vector<Row>& rows,
                                                    const std::map<std::string, CategoryInfo>& reg) {
  std::vector<CategoryPattern> out;
  std::set<std::string> seen;
  for (const auto& row : rows) {
    expect_fields(file, row, 2);
    auto pattern = checked_word(file, row, row.fields[0]);
    const auto stars = std::count(pattern.begin(), pattern.end(), '*');
    CategoryPattern p;
    if (stars > 1 || (stars == 1 && pattern.back() != '*'))
      format_error(file, row.line, "wildcard must be a single trailing '*': '" + pattern + "'");
    p.is_stem = stars == 1;
    p.stem = p.is_stem ? pattern.substr(0, pattern.size() - 1) : pattern;
    if (p.stem.empty()) format_error(file, row.line, "empty pattern");
    for (const auto& id : text::split_list(row.fields[1], ',')) {
      auto lid = text::to_lower(id);
      if (!reg.count(lid)) invariant_error(file, row.line, "category '" + lid + "' not in registry");
      p.categories.insert(lid);
    }
    if (p.categories.empty()) format_error(file, row.line, "pattern without categories");
    if (!seen.insert(pattern).second) format_error(file, row.line, "duplicate pattern '" + pattern + "'");
    out.push_back(std::move(p));
  }
  return out;
}

ModifierTables load_modifiers(const fs::path& root, std::map<std::string, std::size_t>& counts) {
  ModifierTables m;
  m.negations = read_word_set(root / "negations.tsv", read_required(root, "negations.tsv"));
  m.intensifiers = read_multipliers(root / "intensifiers.tsv", read_required(root, "intensifiers.tsv"), true);
  m.diminishers = read_multipliers(root / "diminishers.tsv", read_required(root, "diminishers.tsv"), false);

  const auto emo_file = root / "emoticons.tsv";
  for (const auto& row : read_required(root, "emoticons.tsv")) {
    expect_fields(emo_file, row, 2);
    const auto& emo = row.fields[0];
    if (emo.empty() || text::contains_space(emo)) format_error(emo_file, row.line, "bad emoticon");
    const auto pol = text::to_lower(row.fields[1]);
    Polarity p;
    if (pol == "positive") p = Polarity::Positive;
    else if (pol == "negative") p = Polarity::Negative;
    else format_error(emo_file, row.line, "polarity must be positive or negative");
    if (!m.emoticons.emplace(emo, p).second) format_error(emo_file, row.line, "duplicate emoticon '" + emo + "'");
  }

  for (const auto& w : m.negations)
    if (m.intensifiers.count(w) || m.diminishers.count(w))
      invariant_error(root / "negations.tsv", 0, "'" + w + "' is both a negation and a multiplier");
  for (const auto& [w, _] : m.intensifiers)
    if (m.diminishers.count(w))
      invariant_error(root / "diminishers.tsv", 0, "'" + w + "' is both an intensifier and a diminisher");

  counts["negations.tsv"] = m.negations.size();
  counts["intensifiers.tsv"] = m.intensifiers.size();
  counts["diminishers.tsv"] = m.diminishers.size();
  counts["emoticons.tsv"] = m.emoticons.size();
  return m;
}

Gazetteer load_gazetteer(const fs::path& tsv, std::string name) {
  Gazetteer g;
  g.name = std::move(name);
  for (const auto& row : read_rows(tsv)) {
    expect_fields(tsv, row, 1);
    // Phrases may be multi-word; normalise internal whitespace.
    auto words = text::split_list(text::to_lower(row.fields[0]), ' ');
    auto phrase = text::join(words, " ");
    if (phrase.empty()) format_error(tsv, row.line, "empty phrase");
    if (!g.entries.insert(phrase).second) format_error(tsv, row.line, "duplicate phrase '" + phrase + "'");
  }
  auto regex_path = tsv;
  regex_path.replace_extension(".regex");
  if (fs::exists(regex_path)) {
    std::ifstream in(regex_path, std::ios::binary);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (text::trim(line).empty() || line.front() == '#') continue;
      try {
        std::regex test(line, std::regex::ECMAScript | std::regex::icase);
      } catch (const std::regex_error& e) {
        format_error(regex_path, lineno, std::string("invalid regex: ") + e.what());
      }
      g.patterns.push_back(line);
    }
  }
  g.compile();
  return g;
}

}  // namespace

LexiconError::LexiconError(Kind kind, std::string file, std::size_t line, const std::string& what)
    : std::runtime_error(file + (line ? ":" + std::to_string(line) : "") + ": " + what),
      kind_(kind),
      file_(std::move(file)),
      line_(line) {}

std::string_view to_string(Polarity p) { return p == Polarity::Positive ? "positive" : "negative"; }

std::string_view to_string(CategoryGroup g) {
  switch (g) {
    case CategoryGroup::Linguistic: return "linguistic";
    case CategoryGroup::Psychological: return "psychological";
    case CategoryGroup::PersonalConcern: return "personal-concern";
    case CategoryGroup::Paralinguistic: return "paralinguistic";
  }
  return "linguistic";
}

std::optional<CategoryGroup> parse_category_group(std::string_view s) {
  const auto l = text::to_lower(s);
  if (l == "linguistic") return CategoryGroup::Linguistic;
  if (l == "psychological") return CategoryGroup::Psychological;
  if (l == "personal-concern") return CategoryGroup::PersonalConcern;
  if (l == "paralinguistic") return CategoryGroup::Paralinguistic;
  return std::nullopt;
}

const VadEntry* VadLexicon::find(std::string_view word) const {
  auto it = entries.find(std::string(word));
  return it == entries.end() ? nullptr : &it->second;
}

CategoryLexicon::CategoryLexicon(std::vector<CategoryPattern> entries,
                                 std::map<std::string, CategoryInfo> registry)
    : entries_(std::move(entries)), registry_(std::move(registry)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.stem.empty()) throw std::invalid_argument("empty category pattern");
    for (const auto& c : e.categories)
      if (!registry_.count(c)) throw std::invalid_argument("category '" + c + "' not in registry");
    auto& index = e.is_stem ? stems_ : exact_;
    if (!index.emplace(e.stem, i).second) throw std::invalid_argument("duplicate pattern " + e.pattern());
    if (e.is_stem) longest_stem_ = std::max(longest_stem_, e.stem.size());
  }
}

std::set<std::string> CategoryLexicon::lookup(std::string_view word) const {
  std::set<std::string> out;
  if (word.empty()) return out;
  if (auto it = exact_.find(std::string(word)); it != exact_.end())
    out.insert(entries_[it->second].categories.begin(), entries_[it->second].categories.end());
  const auto max_len = std::min(word.size(), longest_stem_);
  std::string prefix;
  prefix.reserve(max_len);
  for (std::size_t len = 1; len <= max_len; ++len) {
    prefix.push_back(word[len - 1]);
    if (auto it = stems_.find(prefix); it != stems_.end())
      out.insert(entries_[it->second].categories.begin(), entries_[it->second].categories.end());
  }
  return out;
}

std::size_t CategoryLexicon::max_categories_per_pattern() const {
  std::size_t m = 0;
  for (const auto& e : entries_) m = std::max(m, e.categories.size());
  return m;
}

std::set<std::string> lookup_categories(std::string_view word, const CategoryLexicon& lex) {
  return lex.lookup(word);
}

bool ModifierTables::is_negation(std::string_view lower) const {
  return negations.count(std::string(lower)) != 0;
}

std::optional<double> ModifierTables::multiplier(std::string_view lower) const {
  const std::string key(lower);
  if (auto it = intensifiers.find(key); it != intensifiers.end()) return it->second;
  if (auto it = diminishers.find(key); it != diminishers.end()) return it->second;
  return std::nullopt;
}

std::optional<Polarity> ModifierTables::emoticon(std::string_view surface) const {
  auto it = emoticons.find(std::string(surface));
  if (it == emoticons.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> ModifierTables::emoticons_by_length() const {
  std::vector<std::string> keys;
  for (const auto& [k, _] : emoticons) keys.push_back(k);
  std::stable_sort(keys.begin(), keys.end(),
                   [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
  return keys;
}

const ModifierTables& builtin_modifiers() {
  static const ModifierTables table = [] {
    ModifierTables m;
    for (const char* e : {":)", ":-)", ":D", ":-D", ";)", ";-)", ":P", ":p", "=)", "^^", "^_^", "<3", "xD", "XD"})
      m.emoticons.emplace(e, Polarity::Positive);
    for (const char* e : {":(", ":-(", ":'(", ":/", ":-/", ":|", ">:(", "D:", "=(", "</3"})
      m.emoticons.emplace(e, Polarity::Negative);
    return m;
  }();
  return table;
}

void Gazetteer::compile() {
  compiled_.clear();
  for (const auto& p : patterns) compiled_.emplace_back(p, std::regex::ECMAScript | std::regex::icase);
}

bool LexiconBundle::is_positive(std::string_view lower) const {
  return positive_union_.count(std::string(lower)) != 0;
}

bool LexiconBundle::is_negative(std::string_view lower) const {
  return negative_union_.count(std::string(lower)) != 0;
}

const Gazetteer* LexiconBundle::gazetteer(std::string_view name) const {
  for (const auto& g : gazetteers)
    if (g.name == name) return &g;
  return nullptr;
}

void LexiconBundle::index() {
  positive_union_.clear();
  negative_union_.clear();
  for (const auto& p : polarity) {
    positive_union_.insert(p.positive_words.begin(), p.positive_words.end());
    negative_union_.insert(p.negative_words.begin(), p.negative_words.end());
  }
}

LexiconBundle load_lexicons(const std::string& root_str) {
  const fs::path root(root_str);
  if (!fs::is_directory(root)) throw LexiconError(Kind::MissingFile, root_str, 0, "lexicon directory not found");

  LexiconBundle b;
  read_required(root, "positive.tsv");
  read_required(root, "negative.tsv");
  b.polarity.push_back(load_polarity(root / "positive.tsv", root / "negative.tsv", "base", b.counts));

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(root))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  for (const auto& f : files) {
    const auto name = f.filename().string();
    if (name.rfind("positive_", 0) == 0 && f.extension() == ".tsv") {
      const auto id = name.substr(9, name.size() - 9 - 4);
      const auto neg = root / ("negative_" + id + ".tsv");
      if (!fs::exists(neg)) throw LexiconError(Kind::MissingFile, neg.string(), 0, "polarity pair incomplete");
      b.polarity.push_back(load_polarity(f, neg, id, b.counts));
    } else if (name.rfind("negative_", 0) == 0 && f.extension() == ".tsv") {
      const auto pos = root / ("positive_" + name.substr(9));
      if (!fs::exists(pos)) throw LexiconError(Kind::MissingFile, pos.string(), 0, "polarity pair incomplete");
    }
  }

  b.vad = load_vad(root / "vad.tsv", read_required(root, "vad.tsv"));
  b.counts["vad.tsv"] = b.vad.entries.size();

  auto registry = load_registry(root / "category_registry.tsv", read_required(root, "category_registry.tsv"));
  auto patterns = load_category_patterns(root / "categories.tsv", read_required(root, "categories.tsv"), registry);
  b.counts["category_registry.tsv"] = registry.size();
  b.counts["categories.tsv"] = patterns.size();
  b.categories = CategoryLexicon(std::move(patterns), std::move(registry));

  b.modifiers = load_modifiers(root, b.counts);

  for (const auto& f : files) {
    const auto name = f.filename().string();
    if (name.rfind("gazetteer_", 0) == 0 && f.extension() == ".tsv") {
      auto g = load_gazetteer(f, name.substr(10, name.size() - 10 - 4));
      b.counts[name] = g.entries.size();
      b.gazetteers.push_back(std::move(g));
    }
  }

  if (fs::exists(root / "stopwords.tsv")) {
    b.word_stats.stopwords = read_word_set(root / "stopwords.tsv", read_rows(root / "stopwords.tsv"));
    b.counts["stopwords.tsv"] = b.word_stats.stopwords.size();
  }
  if (const auto wf = root / "wordfreq.tsv"; fs::exists(wf)) {
    for (const auto& row : read_rows(wf)) {
      expect_fields(wf, row, 2);
      auto w = checked_word(wf, row, row.fields[0]);
      double c = parse_number(wf, row, row.fields[1]);
      if (c < 0) invariant_error(wf, row.line, "negative frequency");
      if (!b.word_stats.frequency.emplace(w, c).second) format_error(wf, row.line, "duplicate entry '" + w + "'");
    }
    b.counts["wordfreq.tsv"] = b.word_stats.frequency.size();
  }

  b.index();
  return b;
}

std::string resolve_lexicon_dir(const std::string& fallback) {
  if (const char* env = std::getenv("AFFECT_LEXICON_DIR"); env && *env) return env;
  return fallback;
}

}  // namespace affect::lexicon
