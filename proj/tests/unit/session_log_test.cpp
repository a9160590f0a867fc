#include "doctest.h"
#include "support.hpp"

#include "affect/chat/session_log.hpp"
#include "affect/util/rng.hpp"

using namespace affect::chat;
using affect::control::ProfileKind;
using affect::control::ScenarioKind;

namespace {

SessionLog sample() {
  SessionLog log;
  log.room_id = "room-1";
  log.config.scenario_kind = ScenarioKind::BarTriadicExclusion;
  log.config.seed = 7;
  log.config.duration_s = 900;
  log.started_at_s = 1735689600;
  log.roles = {{"Maria", "included"}, {"Juliana", "excluded"}};
  log.messages = {{1735689600, "bartender", "hi, i am the bartender here."},
                  {1735689610, "Maria", "can I please have one beer"},
                  {1735689611, "bartender", "Maria, here you are! enjoy! [order served]"}};
  return log;
}

SessionConfig cfg(const char* json) { return SessionConfig::from_json(nlohmann::json::parse(json)); }

ChatError::Code code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ChatError& e) {
    return e.code();
  }
  FAIL("expected ChatError");
  return ChatError::Code::BadRequest;
}

}  // namespace

TEST_SUITE("session_log") {
  TEST_CASE("iso8601") {
    CHECK(iso8601(0) == "1970-01-01T00:00:00Z");
    CHECK(iso8601(1735689600) == "2025-01-01T00:00:00Z");
    CHECK(parse_iso8601("2025-01-01T00:15:00Z") == 1735690500);
    affect::Rng rng(1);
    for (int i = 0; i < 200; ++i) {
      const auto t = static_cast<std::int64_t>(rng.index(4'000'000'000ULL));
      CHECK(parse_iso8601(iso8601(t)) == t);
    }
    CHECK(code_of([] { parse_iso8601("yesterday"); }) == ChatError::Code::FormatError);
    CHECK(code_of([] { parse_iso8601("2025-01-01T00:00:00Zjunk"); }) == ChatError::Code::FormatError);
  }

  TEST_CASE("field escaping round-trips") {
    for (const std::string s : {"", "plain", "tab\there", "two\nlines", "back\\slash", "\\t literal", "\r\n"}) {
      const auto e = escape_field(s);
      CHECK(e.find('\t') == std::string::npos);
      CHECK(e.find('\n') == std::string::npos);
      CHECK(unescape_field(e) == s);
    }
    CHECK(code_of([] { unescape_field("bad\\q"); }) == ChatError::Code::FormatError);
  }

  TEST_CASE("TSV shape") {
    const auto tsv = format_tsv(sample());
    CHECK(tsv.rfind("timestamp\tinteractant\tutterance\n", 0) == 0);
    CHECK(tsv.find("\n2025-01-01T00:00:00Z\tbartender\thi, i am the bartender here.\n") != std::string::npos);
    CHECK(format_tsv(sample()) == tsv);
  }

  TEST_CASE("JSON sidecar holds config, roles, seed and questionnaire") {
    auto log = sample();
    log.questionnaire["Maria"] = {{"liking", 6}, {"belonging", 3}};
    const auto j = nlohmann::json::parse(format_json(log));
    CHECK(j["format"] == "affect-session-log/1");
    CHECK(j["seed"] == 7);
    CHECK(j["roles"]["Juliana"] == "excluded");
    CHECK(j["questionnaire"]["Maria"]["liking"] == 6);
    CHECK(j["config"]["scenario"] == "bar-triadic-exclusion");
    CHECK(j["message_count"] == 3);
  }

  TEST_CASE("property: parse(format(log)) == log") {
    affect::Rng rng(99);
    const std::vector<std::string> bits{"hi", "\t", "\n", "\\", "bartender", ", ", "ü", ":)", "\"q\"", " "};
    for (int trial = 0; trial < 100; ++trial) {
      auto log = sample();
      log.messages.clear();
      std::int64_t t = log.started_at_s;
      for (std::size_t k = 0, n = rng.index(20); k < n; ++k) {
        std::string text;
        for (std::size_t w = 0, m = 1 + rng.index(6); w < m; ++w) text += bits[rng.index(bits.size())];
        t += static_cast<std::int64_t>(rng.index(30));
        log.messages.push_back({t, k % 3 == 0 ? "bartender" : "Maria", text});
      }
      if (rng.bernoulli(0.5)) log.questionnaire["Juliana"] = {{"q" + std::to_string(rng.index(24)), 1 + int(rng.index(7))}};
      CHECK(parse_session_log(format_tsv(log), format_json(log)) == log);
    }
  }

  TEST_CASE("files on disk") {
    const auto dir = test::temp_dir("log");
    write_session_log(sample(), dir.string());
    CHECK(read_session_log((dir / "room-1.tsv").string()) == sample());
    std::filesystem::remove(dir / "room-1.json");
    CHECK(code_of([&] { read_session_log((dir / "room-1.tsv").string()); }) == ChatError::Code::MetadataMissing);
  }

  TEST_CASE("malformed logs") {
    const auto json = format_json(sample());
    CHECK(code_of([&] { parse_session_log("nope\n", json); }) == ChatError::Code::FormatError);
    CHECK(code_of([&] { parse_session_log("timestamp\tinteractant\tutterance\nx\ty\n", json); }) ==
          ChatError::Code::FormatError);
    CHECK(code_of([&] { parse_session_log(format_tsv(sample()), "{}"); }) == ChatError::Code::FormatError);
    auto short_log = sample();
    short_log.messages.pop_back();
    CHECK(code_of([&] { parse_session_log(format_tsv(short_log), json); }) == ChatError::Code::FormatError);
  }

  TEST_CASE("session config JSON") {
    const auto c = cfg(R"({"scenario":"bar-triadic-exclusion","seed":7,"profile":"neutral"})");
    CHECK(c.scenario_kind == ScenarioKind::BarTriadicExclusion);
    CHECK(c.humans() == 2);
    CHECK_FALSE(c.duration_s);
    CHECK(SessionConfig::from_json(c.to_json()) == c);

    const auto d = cfg(R"({"scenario_kind":"StrangerChat","duration":60,"profile":"negative"})");
    CHECK(d.profile == ProfileKind::Negative);
    CHECK(d.duration_s == 60);

    CHECK(code_of([] { cfg(R"({"scenario":"bar-dyadic","duration_s":0})"); }) == ChatError::Code::InvalidConfig);
    CHECK(code_of([] { cfg(R"({"scenario":"bar-dyadic","colour":"red"})"); }) == ChatError::Code::InvalidConfig);
    CHECK(code_of([] { cfg(R"({"scenario":"bar-triadic-exclusion","participants_expected":1})"); }) ==
          ChatError::Code::InvalidConfig);
    CHECK(code_of([] { cfg(R"({"scenario":"pub"})"); }) == ChatError::Code::InvalidConfig);
    CHECK(code_of([] { cfg(R"({"scenario":"bar-dyadic","seed":"x"})"); }) == ChatError::Code::InvalidConfig);
    CHECK(code_of([] { cfg(R"([1,2])"); }) == ChatError::Code::InvalidConfig);
  }
}
