#pragma once

// Triadic interaction policy: one human is Included (full attention), the
// other Excluded (short answers, redirection, occasional silence).

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "affect/control/state.hpp"
#include "affect/control/types.hpp"
#include "affect/perception/dialogue_act.hpp"
#include "affect/perception/perceive.hpp"
#include "affect/util/kv_config.hpp"
#include "affect/util/rng.hpp"

namespace affect::control {

struct ExclusionPolicy {
  std::vector<std::string> short_answers{"yes", "no", "perhaps", "hmm"};
  double omission_probability = 0.10;
  std::size_t omission_start_turn = 5;
  double redirect_probability = 0.25;
  double included_query_probability = 0.20;
  std::string redirect_template = "{excluded}, I think {included} might have a really good answer to it.";
  std::string included_query_template = "{included}, do you know what {excluded} is talking about?";
  std::set<perception::DialogueAct> question_acts{perception::DialogueAct::WhQuestion,
                                                  perception::DialogueAct::YesNoQuestion};
  /// Acts handled as bartender duties for either role; never omitted.
  std::set<perception::DialogueAct> duty_acts{perception::DialogueAct::Order, perception::DialogueAct::Greet,
                                              perception::DialogueAct::Bye};

  /// Throws ConfigError on out-of-range values or missing template slots.
  void validate(const std::string& source = "<policy>") const;
  bool operator==(const ExclusionPolicy&) const = default;
};

/// Keys mirror the field names; lists are '|'-separated. Missing keys keep
/// their defaults.
ExclusionPolicy parse_exclusion_policy(const KvConfig& config);
ExclusionPolicy load_exclusion_policy(const std::string& path);

/// First clause up to and including the first sentence punctuation, cut to
/// at most `max_words` words. Falls back to a random short answer when no
/// word survives.
std::string shorten_response(std::string_view text, const std::vector<std::string>& short_answers, Rng& rng,
                             std::size_t max_words = 5);

struct Route {
  Action action = Action::RespondFull;
  /// An IncludedSideQuery is due in addition to the response.
  bool side_query = false;

  bool operator==(const Route&) const = default;
};

/// Routes one utterance. `state` must already count the utterance in the
/// sender's turn counter; random draws come from `state.rng`. Throws
/// RolesMissing unless the state holds a valid triadic assignment.
Route exclusion_route(const perception::PerceptionReport& report, const std::string& sender, InformationState& state,
                      const ExclusionPolicy& policy);

/// Redirect / side-query texts with both role names filled in.
std::string fill_roles(std::string_view tmpl, const std::string& included, const std::string& excluded);

}  // namespace affect::control
