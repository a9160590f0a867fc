#pragma once

// Batch text analysis over exported session logs: word counts by source,
// emotion-word rates per 100 words, and sentiment-class distributions per
// participant class.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "affect/chat/session_log.hpp"
#include "affect/lexicon.hpp"
#include "affect/perception/classifiers.hpp"
#include "affect/perception/dialogue_act.hpp"

namespace affect::analysis {

enum class ParticipantClass {
  SystemNeutral,
  SystemNegative,
  UserWithNeutral,
  UserWithNegative,
  Bartender,
  Included,
  Excluded,
};

std::string_view to_string(ParticipantClass c);
std::optional<ParticipantClass> parse_participant_class(std::string_view s);
bool is_system(ParticipantClass c);

class AnalysisError : public std::runtime_error {
 public:
  enum class Kind { FormatError, MetadataMissing, IoError };
  AnalysisError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct UtteranceRecord {
  ParticipantClass klass = ParticipantClass::Bartender;
  std::string room;
  std::string sender;
  std::string text;
  std::size_t word_count = 0;
  perception::SentimentClass sentiment = perception::SentimentClass::Neutral;
  std::map<std::string, std::size_t> category_counts;
  std::optional<perception::DialogueAct> dialogue_act;

  bool operator==(const UtteranceRecord&) const = default;
};

/// Shared resources for turning log rows into records.
struct Analyzer {
  const lexicon::LexiconBundle* bundle = nullptr;
  perception::SentimentSettings settings;
  /// Optional; fills UtteranceRecord::dialogue_act when present.
  const perception::DialogueActClassifier* model = nullptr;

  UtteranceRecord analyze(ParticipantClass klass, const std::string& room, const std::string& sender,
                          const std::string& text) const;
};

/// Class of `sender` from the log metadata only. Throws
/// AnalysisError(MetadataMissing) when the metadata cannot decide.
ParticipantClass classify_participant(const chat::SessionLog& log, const std::string& sender);

std::vector<UtteranceRecord> records_from_log(const chat::SessionLog& log, const Analyzer& analyzer);

/// Reads a `.tsv` log and its `.json` sidecar.
std::vector<UtteranceRecord> parse_log(const std::string& tsv_path, const Analyzer& analyzer);
/// Every `*.tsv` in `dir` (sorted by name).
std::vector<UtteranceRecord> parse_logs(const std::string& dir, const Analyzer& analyzer);

enum class Grouping { SystemVsHuman, PerClass };

struct GroupStats {
  std::string group;
  std::string metric;
  std::size_t n = 0;
  std::optional<double> mean;
  /// Sample standard deviation; absent for n < 2.
  std::optional<double> sd;
  std::optional<double> total;
  /// negative, neutral, positive.
  std::optional<std::array<double, 3>> proportions;

  bool operator==(const GroupStats&) const = default;
};

/// Per group: n utterances, mean/sd of per-utterance word counts, total words.
std::vector<GroupStats> word_count_stats(const std::vector<UtteranceRecord>& records, Grouping grouping);

/// Ratio row `system:human` / `word_total_ratio` (mean holds the ratio),
/// present when both sides have words.
std::optional<GroupStats> system_human_ratio(const std::vector<GroupStats>& system_vs_human);

/// Per group and category: total = category tokens, mean = rate per 100
/// words (absent when the group has no words), n = utterances.
std::vector<GroupStats> category_rates(const std::vector<UtteranceRecord>& records,
                                       const std::vector<std::string>& categories,
                                       Grouping grouping = Grouping::PerClass);

/// Per participant class: proportions of negative/neutral/positive utterances.
std::vector<GroupStats> sentiment_distribution(const std::vector<UtteranceRecord>& records);

/// Columns: group,metric,n,mean,sd,total,p_negative,p_neutral,p_positive.
/// Numbers use 9 decimals; absent values are empty cells.
std::string format_csv(const std::vector<GroupStats>& stats);
/// Throws AnalysisError(IoError).
void export_csv(const std::vector<GroupStats>& stats, const std::string& path);

}  // namespace affect::analysis
