#pragma once

// Session configuration and the exported transcript: a TSV with one row
// per message plus a JSON sidecar holding configuration, roles and
// questionnaire answers.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "affect/control/dialogue.hpp"
#include "affect/control/types.hpp"

namespace affect::chat {

class ChatError : public std::runtime_error {
 public:
  enum class Code {
    InvalidConfig,
    RoomNotFound,
    RoomFull,
    NameTaken,
    RoomClosed,
    RoomNotRunning,
    RoomNotClosed,
    NotMember,
    ValidationError,
    FormatError,
    MetadataMissing,
    BadRequest,
  };
  ChatError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

std::string_view to_string(ChatError::Code c);

struct SessionConfig {
  control::ScenarioKind scenario_kind = control::ScenarioKind::StrangerChat;
  /// Seconds; nullopt takes the scenario's default.
  std::optional<std::int64_t> duration_s;
  control::ProfileKind profile = control::ProfileKind::Neutral;
  std::uint64_t seed = 0;
  std::string bot_name = "bartender";
  /// 0 means "derive from the scenario" (2 for triadic, else 1).
  int participants_expected = 0;
  /// Delay bot replies in proportion to their length.
  bool typing_delay = false;
  double typing_ms_per_char = 40.0;
  std::optional<std::string> avatar_url;

  int humans() const;
  /// Throws ChatError(InvalidConfig).
  void validate() const;

  /// Throws ChatError(InvalidConfig) on unknown keys or bad values.
  static SessionConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  bool operator==(const SessionConfig&) const = default;
};

struct Message {
  /// Seconds since the Unix epoch.
  std::int64_t timestamp_s = 0;
  std::string sender;
  std::string text;

  bool operator==(const Message&) const = default;
};

struct SessionLog {
  std::string room_id;
  SessionConfig config;
  std::vector<Message> messages;
  /// Participant name -> role name.
  std::map<std::string, std::string> roles;
  /// Participant name -> item id -> answer in 1..7.
  std::map<std::string, std::map<std::string, int>> questionnaire;
  std::int64_t started_at_s = 0;

  bool operator==(const SessionLog&) const = default;
};

/// `YYYY-MM-DDTHH:MM:SSZ`.
std::string iso8601(std::int64_t epoch_s);
/// Inverse of iso8601; throws ChatError(FormatError).
std::int64_t parse_iso8601(std::string_view s);

/// Backslash escaping for tab, newline, carriage return and backslash.
std::string escape_field(std::string_view s);
std::string unescape_field(std::string_view s);

std::string format_tsv(const SessionLog& log);
std::string format_json(const SessionLog& log);

/// Inverse of format_tsv/format_json. Throws ChatError(FormatError).
SessionLog parse_session_log(std::string_view tsv, std::string_view json);

/// Reads `<stem>.tsv` and its `<stem>.json` sidecar. Throws
/// ChatError(MetadataMissing) when the sidecar is absent.
SessionLog read_session_log(const std::string& tsv_path);

/// Writes `<dir>/<room>.tsv` and `<dir>/<room>.json`.
void write_session_log(const SessionLog& log, const std::string& dir);

}  // namespace affect::chat
