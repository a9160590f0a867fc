#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "affect/control/types.hpp"
#include "affect/perception/perceive.hpp"
#include "affect/util/rng.hpp"

namespace affect::control {

struct ActiveScenario {
  std::size_t scenario = 0;
  std::size_t step = 0;

  bool operator==(const ActiveScenario&) const = default;
};

/// Per-session dialogue state. Owned by exactly one session.
struct InformationState {
  std::string session_id;
  /// Utterances received so far per participant.
  std::map<std::string, std::size_t> turns;
  std::map<std::string, std::deque<perception::PerceptionReport>> history;
  std::size_t history_limit = 5;
  /// Active ALDS scenario per participant.
  std::map<std::string, ActiveScenario> active;
  ProfileKind profile = ProfileKind::Neutral;
  RoleAssignment roles;
  Rng rng;
  std::int64_t elapsed_ms = 0;
  std::int64_t duration_ms = 0;
  bool terminal = false;
  std::size_t system_turns = 0;
  std::optional<std::string> last_system_target;

  std::size_t turn_of(const std::string& participant) const;

  bool operator==(const InformationState&) const = default;
};

struct InboundEvent {
  std::string sender;
  perception::PerceptionReport report;
};

struct OutboundEvent {
  std::optional<std::string> target;
  std::string text;
};

struct TickEvent {
  std::int64_t elapsed_ms = 0;
};

using StateEvent = std::variant<InboundEvent, OutboundEvent, TickEvent>;

/// Pure transition. Inbound bumps the sender's counter and history,
/// outbound counts system turns, ticks advance elapsed time and set
/// `terminal` once elapsed reaches the duration.
InformationState advance_state(InformationState state, const StateEvent& event);

}  // namespace affect::control
