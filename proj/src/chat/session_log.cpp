#include "affect/chat/session_log.hpp"

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "affect/util/text.hpp"

namespace affect::chat {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(ChatError::Code c) {
  using C = ChatError::Code;
  switch (c) {
    case C::InvalidConfig: return "InvalidConfig";
    case C::RoomNotFound: return "RoomNotFound";
    case C::RoomFull: return "RoomFull";
    case C::NameTaken: return "NameTaken";
    case C::RoomClosed: return "RoomClosed";
    case C::RoomNotRunning: return "RoomNotRunning";
    case C::RoomNotClosed: return "RoomNotClosed";
    case C::NotMember: return "NotMember";
    case C::ValidationError: return "ValidationError";
    case C::FormatError: return "FormatError";
    case C::MetadataMissing: return "MetadataMissing";
    case C::BadRequest: return "BadRequest";
  }
  return "Unknown";
}

int SessionConfig::humans() const {
  if (participants_expected != 0) return participants_expected;
  return control::is_triadic(scenario_kind) ? 2 : 1;
}

void SessionConfig::validate() const {
  const auto bad = [](const std::string& m) { throw ChatError(ChatError::Code::InvalidConfig, m); };
  if (duration_s && *duration_s <= 0) bad("duration must be positive");
  if (control::is_triadic(scenario_kind) && humans() != 2) bad("bar-triadic-exclusion needs exactly 2 humans");
  if (!control::is_triadic(scenario_kind) && humans() != 1) bad(std::string(control::to_string(scenario_kind)) + " needs exactly 1 human");
  if (bot_name.empty() || text::contains_space(bot_name)) bad("bot_name must be a single word");
  if (!(typing_ms_per_char >= 0.0)) bad("typing_ms_per_char must be >= 0");
}

SessionConfig SessionConfig::from_json(const json& j) {
  const auto bad = [](const std::string& m) { throw ChatError(ChatError::Code::InvalidConfig, m); };
  if (!j.is_object()) bad("session config must be a JSON object");
  SessionConfig c;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "scenario" || key == "scenario_kind") {
        auto k = control::parse_scenario_kind(v.get<std::string>());
        if (!k) bad("unknown scenario '" + v.get<std::string>() + "'");
        c.scenario_kind = *k;
      } else if (key == "duration_s" || key == "duration") {
        if (!v.is_null()) c.duration_s = v.get<std::int64_t>();
      } else if (key == "profile") {
        auto p = control::parse_profile_kind(v.get<std::string>());
        if (!p) bad("unknown profile '" + v.get<std::string>() + "'");
        c.profile = *p;
      } else if (key == "seed") {
        c.seed = v.get<std::uint64_t>();
      } else if (key == "bot_name") {
        c.bot_name = v.get<std::string>();
      } else if (key == "participants_expected") {
        c.participants_expected = v.get<int>();
      } else if (key == "typing_delay") {
        c.typing_delay = v.get<bool>();
      } else if (key == "typing_ms_per_char") {
        c.typing_ms_per_char = v.get<double>();
      } else if (key == "avatar_url") {
        if (!v.is_null()) c.avatar_url = v.get<std::string>();
      } else {
        bad("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    bad(std::string("bad config value: ") + e.what());
  }
  c.validate();
  return c;
}

json SessionConfig::to_json() const {
  json j{{"scenario", control::to_string(scenario_kind)},
         {"profile", control::to_string(profile)},
         {"seed", seed},
         {"bot_name", bot_name},
         {"participants_expected", participants_expected},
         {"typing_delay", typing_delay},
         {"typing_ms_per_char", typing_ms_per_char}};
  j["duration_s"] = duration_s ? json(*duration_s) : json(nullptr);
  j["avatar_url"] = avatar_url ? json(*avatar_url) : json(nullptr);
  return j;
}

std::string iso8601(std::int64_t epoch_s) {
  const std::time_t t = static_cast<std::time_t>(epoch_s);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::int64_t parse_iso8601(std::string_view s) {
  std::tm tm{};
  char z = 0;
  const std::string str(s);
  int consumed = 0;
  if (std::sscanf(str.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c%n", &tm.tm_year, &tm.tm_mon, &tm.tm_mday, &tm.tm_hour,
                  &tm.tm_min, &tm.tm_sec, &z, &consumed) != 7 ||
      z != 'Z' || static_cast<std::size_t>(consumed) != str.size())
    throw ChatError(ChatError::Code::FormatError, "bad timestamp '" + str + "'");
  tm.tm_year -= 1900;
  tm.tm_mon -= 1;
  return static_cast<std::int64_t>(timegm(&tm));
}

std::string escape_field(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape_field(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\' || i + 1 == s.size()) {
      out += s[i];
      continue;
    }
    switch (s[++i]) {
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      case '\\': out += '\\'; break;
      default: throw ChatError(ChatError::Code::FormatError, "bad escape in field");
    }
  }
  return out;
}

namespace {
constexpr std::string_view kHeader = "timestamp\tinteractant\tutterance";
constexpr std::string_view kFormat = "affect-session-log/1";
}  // namespace

std::string format_tsv(const SessionLog& log) {
  std::string out(kHeader);
  out += '\n';
  for (const auto& m : log.messages)
    out += iso8601(m.timestamp_s) + '\t' + escape_field(m.sender) + '\t' + escape_field(m.text) + '\n';
  return out;
}

std::string format_json(const SessionLog& log) {
  json j;
  j["format"] = kFormat;
  j["room"] = log.room_id;
  j["config"] = log.config.to_json();
  j["seed"] = log.config.seed;
  j["roles"] = log.roles;
  j["questionnaire"] = log.questionnaire;
  j["started_at"] = iso8601(log.started_at_s);
  j["message_count"] = log.messages.size();
  return j.dump(2) + "\n";
}

SessionLog parse_session_log(std::string_view tsv, std::string_view json_text) {
  const auto bad = [](const std::string& m) { throw ChatError(ChatError::Code::FormatError, m); };
  SessionLog log;
  json j;
  try {
    j = json::parse(json_text);
    if (j.value("format", std::string()) != kFormat) bad("unknown log format");
    log.room_id = j.at("room").get<std::string>();
    log.config = SessionConfig::from_json(j.at("config"));
    log.roles = j.at("roles").get<std::map<std::string, std::string>>();
    log.questionnaire = j.at("questionnaire").get<std::map<std::string, std::map<std::string, int>>>();
    log.started_at_s = parse_iso8601(j.at("started_at").get<std::string>());
  } catch (const json::exception& e) {
    bad(std::string("bad log metadata: ") + e.what());
  } catch (const ChatError& e) {
    bad(std::string("bad log metadata: ") + e.what());
  }

  std::size_t lineno = 0;
  for (auto line : text::split(tsv, '\n')) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1) {
      if (line != kHeader) bad("missing TSV header");
      continue;
    }
    if (line.empty()) continue;
    const auto parts = text::split(line, '\t');
    if (parts.size() != 3) bad("line " + std::to_string(lineno) + ": expected 3 tab-separated fields");
    log.messages.push_back({parse_iso8601(parts[0]), unescape_field(parts[1]), unescape_field(parts[2])});
  }
  if (lineno == 0) bad("empty TSV");
  if (j.contains("message_count") && j["message_count"].get<std::size_t>() != log.messages.size())
    bad("message count does not match sidecar");
  return log;
}

SessionLog read_session_log(const std::string& tsv_path) {
  auto sidecar = fs::path(tsv_path).replace_extension(".json");
  if (!fs::exists(tsv_path)) throw ChatError(ChatError::Code::FormatError, "cannot open " + tsv_path);
  if (!fs::exists(sidecar)) throw ChatError(ChatError::Code::MetadataMissing, "no sidecar " + sidecar.string());
  return parse_session_log(text::read_file(tsv_path), text::read_file(sidecar.string()));
}

void write_session_log(const SessionLog& log, const std::string& dir) {
  fs::create_directories(dir);
  const auto write = [](const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + p.string());
  };
  write(fs::path(dir) / (log.room_id + ".tsv"), format_tsv(log));
  write(fs::path(dir) / (log.room_id + ".json"), format_json(log));
}

}  // namespace affect::chat
