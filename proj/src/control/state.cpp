#include "affect/control/state.hpp"

namespace affect::control {

std::size_t InformationState::turn_of(const std::string& participant) const {
  auto it = turns.find(participant);
  return it == turns.end() ? 0 : it->second;
}

namespace {

struct Apply {
  InformationState& s;

  void operator()(const InboundEvent& e) const {
    ++s.turns[e.sender];
    auto& h = s.history[e.sender];
    h.push_back(e.report);
    while (h.size() > s.history_limit) h.pop_front();
  }

  void operator()(const OutboundEvent& e) const {
    ++s.system_turns;
    s.last_system_target = e.target;
  }

  void operator()(const TickEvent& e) const {
    if (e.elapsed_ms > s.elapsed_ms) s.elapsed_ms = e.elapsed_ms;
    if (!s.terminal && s.duration_ms > 0 && s.elapsed_ms >= s.duration_ms) s.terminal = true;
  }
};

}  // namespace

InformationState advance_state(InformationState state, const StateEvent& event) {
  std::visit(Apply{state}, event);
  return state;
}

}  // namespace affect::control
