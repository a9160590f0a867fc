#pragma once

// Session-level dialogue manager: perceives each utterance, gathers
// candidates from scenarios and pattern rules, routes through the triadic
// policy, and post-processes the chosen reply with the affective profile.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "affect/control/alds.hpp"
#include "affect/control/exclusion.hpp"
#include "affect/control/patterns.hpp"
#include "affect/control/profile.hpp"
#include "affect/control/state.hpp"
#include "affect/control/types.hpp"
#include "affect/perception/perceive.hpp"

namespace affect::control {

enum class ScenarioKind { StrangerChat, BarDyadic, BarTriadicExclusion };

/// "stranger-chat", "bar-dyadic", "bar-triadic-exclusion".
std::string_view to_string(ScenarioKind k);
/// Accepts the dashed names and the CamelCase enum names.
std::optional<ScenarioKind> parse_scenario_kind(std::string_view s);
inline bool is_triadic(ScenarioKind k) { return k == ScenarioKind::BarTriadicExclusion; }

/// Declarative description of one session type, loaded from
/// `sessions/<kind>.conf`. Keys may carry a `.<profile>` suffix that
/// overrides the plain key for that profile.
struct SessionScript {
  ScenarioKind kind = ScenarioKind::StrangerChat;
  std::vector<AldsScenario> scenarios;
  std::vector<PatternRule> patterns;
  /// Rules used for Excluded senders; empty means `patterns`.
  std::vector<PatternRule> excluded_patterns;
  std::string opening;
  std::string farewell;
  std::vector<std::string> fallbacks;
  std::int64_t default_duration_s = 120;
};

SessionScript load_session_script(const std::string& data_root, ScenarioKind kind, ProfileKind profile);

struct ResponseContext {
  const AffectiveProfile* profile = nullptr;
  const lexicon::LexiconBundle* bundle = nullptr;
  std::vector<std::string> fallbacks;
  std::vector<std::string> short_answers{"yes", "no", "perhaps", "hmm"};
  /// Triadic replies get "Name, " in front.
  std::optional<std::string> addressee;
};

/// Orders candidates by priority (high first), then rank, source, text and
/// target, so the choice does not depend on input order.
void sort_candidates(std::vector<ResponseCandidate>& candidates);

/// Omit yields nothing. Otherwise the best candidate (or a fallback when
/// there is none) is passed through the profile, shortened for
/// RespondShort, and prefixed with the addressee. Scripted candidates skip
/// the profile and prefix.
std::optional<ResponseCandidate> decide_response(std::vector<ResponseCandidate> candidates, Action action,
                                                 InformationState& state, const ResponseContext& context);

struct SessionSetup {
  std::string session_id;
  ScenarioKind kind = ScenarioKind::StrangerChat;
  ProfileKind profile = ProfileKind::Neutral;
  std::uint64_t seed = 0;
  std::string bot_name = "bartender";
  std::int64_t duration_ms = 120'000;
};

struct Outbound {
  std::string text;
  /// nullopt: addressed to everyone.
  std::optional<std::string> target;
  /// True for system-initiated turns (opening, side queries, farewell).
  bool initiated = false;
  Action action = Action::RespondFull;
  ResponseSource source = ResponseSource::Pattern;

  bool operator==(const Outbound&) const = default;
};

struct TraceEntry {
  std::string sender;
  std::string text;
  bool addressed = false;
  std::optional<Role> role;
  std::optional<Action> action;
  std::vector<Outbound> replies;
  std::vector<std::string> warnings;
};

class DialogueSession {
 public:
  DialogueSession(const perception::Perceiver& perceiver, const SessionScript& script, AffectiveProfile profile,
                  ExclusionPolicy policy, SessionSetup setup);

  /// Assigns roles to the humans (join order) and returns the opening
  /// line. Triadic sessions draw the Excluded participant from the seed.
  std::vector<Outbound> open(const std::vector<std::string>& humans);

  std::vector<Outbound> on_utterance(const std::string& sender, const std::string& text,
                                     std::int64_t timestamp_ms = 0);

  /// Emits the farewell exactly once when elapsed reaches the duration.
  std::vector<Outbound> on_tick(std::int64_t elapsed_ms);

  /// True if `text` contains the bot name as a word (any case).
  bool mentions_bot(std::string_view text) const;

  const InformationState& state() const { return state_; }
  const RoleAssignment& roles() const { return state_.roles; }
  const std::vector<TraceEntry>& trace() const { return trace_; }
  const SessionSetup& setup() const { return setup_; }
  bool opened() const { return opened_; }
  bool finished() const { return farewell_sent_; }

 private:
  std::optional<std::string> other_human(const std::string& name) const;
  Outbound emit(ResponseCandidate c, Action action, bool initiated);

  const perception::Perceiver* perceiver_;
  const SessionScript* script_;
  AffectiveProfile profile_;
  ExclusionPolicy policy_;
  SessionSetup setup_;
  InformationState state_;
  std::vector<std::string> humans_;
  std::vector<TraceEntry> trace_;
  bool opened_ = false;
  bool farewell_sent_ = false;
};

}  // namespace affect::control
