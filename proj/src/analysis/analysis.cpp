#include "affect/analysis/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "affect/perception/tokenizer.hpp"

namespace affect::analysis {

namespace fs = std::filesystem;
using perception::SentimentClass;

std::string_view to_string(ParticipantClass c) {
  switch (c) {
    case ParticipantClass::SystemNeutral: return "SystemNeutral";
    case ParticipantClass::SystemNegative: return "SystemNegative";
    case ParticipantClass::UserWithNeutral: return "UserWithNeutral";
    case ParticipantClass::UserWithNegative: return "UserWithNegative";
    case ParticipantClass::Bartender: return "Bartender";
    case ParticipantClass::Included: return "Included";
    case ParticipantClass::Excluded: return "Excluded";
  }
  return "?";
}

std::optional<ParticipantClass> parse_participant_class(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(ParticipantClass::Excluded); ++i) {
    const auto c = static_cast<ParticipantClass>(i);
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

bool is_system(ParticipantClass c) {
  return c == ParticipantClass::SystemNeutral || c == ParticipantClass::SystemNegative ||
         c == ParticipantClass::Bartender;
}

UtteranceRecord Analyzer::analyze(ParticipantClass klass, const std::string& room, const std::string& sender,
                                  const std::string& text) const {
  UtteranceRecord r;
  r.klass = klass;
  r.room = room;
  r.sender = sender;
  r.text = text;
  const auto tokens = perception::tokenize(text, bundle->modifiers);
  r.word_count = perception::word_count(tokens);
  r.sentiment = perception::classify_sentiment(tokens, *bundle, settings).klass;
  r.category_counts = perception::categorize(tokens, bundle->categories).counts;
  if (model) r.dialogue_act = model->classify(text).label;
  return r;
}

ParticipantClass classify_participant(const chat::SessionLog& log, const std::string& sender) {
  const bool bot = sender == log.config.bot_name;
  const auto kind = log.config.scenario_kind;
  if (kind == control::ScenarioKind::StrangerChat) {
    switch (log.config.profile) {
      case control::ProfileKind::Neutral:
        return bot ? ParticipantClass::SystemNeutral : ParticipantClass::UserWithNeutral;
      case control::ProfileKind::Negative:
        return bot ? ParticipantClass::SystemNegative : ParticipantClass::UserWithNegative;
      case control::ProfileKind::Positive: break;
    }
    throw AnalysisError(AnalysisError::Kind::MetadataMissing,
                        log.room_id + ": stranger-chat classes exist for neutral and negative profiles only");
  }
  if (bot) return ParticipantClass::Bartender;
  const auto role = log.roles.find(sender);
  if (role == log.roles.end())
    throw AnalysisError(AnalysisError::Kind::MetadataMissing, log.room_id + ": no role for '" + sender + "'");
  const auto parsed = control::parse_role(role->second);
  if (parsed == control::Role::Excluded) return ParticipantClass::Excluded;
  // Included and the single guest of a dyadic bar session get full attention.
  if (parsed == control::Role::Included || parsed == control::Role::Single) return ParticipantClass::Included;
  throw AnalysisError(AnalysisError::Kind::FormatError, log.room_id + ": unknown role '" + role->second + "'");
}

std::vector<UtteranceRecord> records_from_log(const chat::SessionLog& log, const Analyzer& analyzer) {
  std::vector<UtteranceRecord> out;
  out.reserve(log.messages.size());
  for (const auto& m : log.messages)
    out.push_back(analyzer.analyze(classify_participant(log, m.sender), log.room_id, m.sender, m.text));
  return out;
}

std::vector<UtteranceRecord> parse_log(const std::string& tsv_path, const Analyzer& analyzer) {
  chat::SessionLog log;
  try {
    log = chat::read_session_log(tsv_path);
  } catch (const chat::ChatError& e) {
    const auto kind = e.code() == chat::ChatError::Code::MetadataMissing ? AnalysisError::Kind::MetadataMissing
                                                                         : AnalysisError::Kind::FormatError;
    throw AnalysisError(kind, e.what());
  }
  return records_from_log(log, analyzer);
}

std::vector<UtteranceRecord> parse_logs(const std::string& dir, const Analyzer& analyzer) {
  if (!fs::is_directory(dir)) throw AnalysisError(AnalysisError::Kind::IoError, "not a directory: " + dir);
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".tsv") files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  std::vector<UtteranceRecord> out;
  for (const auto& f : files) {
    auto more = parse_log(f, analyzer);
    out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  }
  return out;
}

namespace {

std::string group_of(const UtteranceRecord& r, Grouping g) {
  if (g == Grouping::SystemVsHuman) return is_system(r.klass) ? "system" : "human";
  return std::string(to_string(r.klass));
}

// Groups in a fixed order: system before human, classes in enum order.
std::vector<std::pair<std::string, std::vector<const UtteranceRecord*>>> grouped(
    const std::vector<UtteranceRecord>& records, Grouping g) {
  std::vector<std::string> order;
  if (g == Grouping::SystemVsHuman) order = {"system", "human"};
  else
    for (int i = 0; i <= static_cast<int>(ParticipantClass::Excluded); ++i)
      order.emplace_back(to_string(static_cast<ParticipantClass>(i)));
  std::vector<std::pair<std::string, std::vector<const UtteranceRecord*>>> out;
  for (const auto& name : order) {
    std::vector<const UtteranceRecord*> members;
    for (const auto& r : records)
      if (group_of(r, g) == name) members.push_back(&r);
    if (!members.empty()) out.emplace_back(name, std::move(members));
  }
  return out;
}

}  // namespace

std::vector<GroupStats> word_count_stats(const std::vector<UtteranceRecord>& records, Grouping grouping) {
  std::vector<GroupStats> out;
  for (const auto& [name, members] : grouped(records, grouping)) {
    GroupStats s;
    s.group = name;
    s.metric = "word_count";
    s.n = members.size();
    double total = 0;
    for (const auto* r : members) total += static_cast<double>(r->word_count);
    const double mean = total / static_cast<double>(s.n);
    s.total = total;
    s.mean = mean;
    if (s.n >= 2) {
      double ss = 0;
      for (const auto* r : members) ss += (static_cast<double>(r->word_count) - mean) * (static_cast<double>(r->word_count) - mean);
      s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::optional<GroupStats> system_human_ratio(const std::vector<GroupStats>& stats) {
  std::optional<double> sys, hum;
  std::size_t n = 0;
  for (const auto& s : stats) {
    if (s.metric != "word_count") continue;
    if (s.group == "system") sys = s.total;
    if (s.group == "human") hum = s.total;
    if (s.group == "system" || s.group == "human") n += s.n;
  }
  if (!sys || !hum || *hum <= 0.0) return std::nullopt;
  GroupStats r;
  r.group = "system:human";
  r.metric = "word_total_ratio";
  r.n = n;
  r.mean = *sys / *hum;
  return r;
}

std::vector<GroupStats> category_rates(const std::vector<UtteranceRecord>& records,
                                       const std::vector<std::string>& categories, Grouping grouping) {
  std::vector<GroupStats> out;
  for (const auto& [name, members] : grouped(records, grouping)) {
    std::size_t words = 0;
    for (const auto* r : members) words += r->word_count;
    for (const auto& cat : categories) {
      GroupStats s;
      s.group = name;
      s.metric = cat;
      s.n = members.size();
      std::size_t hits = 0;
      for (const auto* r : members)
        if (auto it = r->category_counts.find(cat); it != r->category_counts.end()) hits += it->second;
      s.total = static_cast<double>(hits);
      if (words > 0) s.mean = 100.0 * static_cast<double>(hits) / static_cast<double>(words);
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<GroupStats> sentiment_distribution(const std::vector<UtteranceRecord>& records) {
  std::vector<GroupStats> out;
  for (const auto& [name, members] : grouped(records, Grouping::PerClass)) {
    std::array<std::size_t, 3> counts{};
    for (const auto* r : members) {
      switch (r->sentiment) {
        case SentimentClass::Negative: ++counts[0]; break;
        case SentimentClass::Neutral: ++counts[1]; break;
        case SentimentClass::Positive: ++counts[2]; break;
      }
    }
    GroupStats s;
    s.group = name;
    s.metric = "sentiment";
    s.n = members.size();
    const double n = static_cast<double>(s.n);
    s.proportions = std::array<double, 3>{counts[0] / n, counts[1] / n, counts[2] / n};
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

std::string num(const std::optional<double>& v) {
  if (!v) return {};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", *v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_csv(const std::vector<GroupStats>& stats) {
  std::string out = "group,metric,n,mean,sd,total,p_negative,p_neutral,p_positive\n";
  for (const auto& s : stats) {
    out += csv_field(s.group) + ',' + csv_field(s.metric) + ',' + std::to_string(s.n) + ',' + num(s.mean) + ',' +
           num(s.sd) + ',' + num(s.total);
    for (int i = 0; i < 3; ++i)
      out += ',' + (s.proportions ? num((*s.proportions)[static_cast<std::size_t>(i)]) : std::string());
    out += '\n';
  }
  return out;
}

void export_csv(const std::vector<GroupStats>& stats, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw AnalysisError(AnalysisError::Kind::IoError, "cannot open " + path);
  out << format_csv(stats);
  if (!out) throw AnalysisError(AnalysisError::Kind::IoError, "cannot write " + path);
}

}  // namespace affect::analysis
