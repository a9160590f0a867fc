#pragma once

// Information-state dialogue scripting: scenarios with an initiation
// predicate and a sequence of steps, each pairing expected perception cues
// with a response template.

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "affect/control/state.hpp"
#include "affect/control/types.hpp"
#include "affect/perception/perceive.hpp"

namespace affect::control {

class ScriptError : public std::runtime_error {
 public:
  ScriptError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct CueAtom {
  enum class Kind { Always, DialogueAct, Sentiment, Entity, Category, Keyword };
  Kind kind = Kind::Always;
  std::string value;
  perception::DialogueAct act = perception::DialogueAct::Other;
  perception::SentimentClass sentiment = perception::SentimentClass::Neutral;

  bool operator==(const CueAtom&) const = default;
};

/// Conjunction of cue atoms; an empty conjunction is always true.
struct CuePredicate {
  std::vector<CueAtom> atoms;

  /// Parses `da=<Label> & sentiment=<class> & entity:<g> & category:<id> & kw:<word>`
  /// or `true`. Throws std::invalid_argument on malformed input.
  static CuePredicate parse(std::string_view text);
  bool evaluate(const perception::PerceptionReport& report) const;

  bool operator==(const CuePredicate&) const = default;
};

enum class MissPolicy { Retry, Abort, Skip };

struct AldsStep {
  CuePredicate expected;
  std::string response_template;
  /// Next step index; nullopt means END.
  std::optional<std::size_t> on_match;
  MissPolicy on_miss = MissPolicy::Abort;

  bool operator==(const AldsStep&) const = default;
};

struct AldsScenario {
  std::string id;
  std::set<std::string> tags;
  CuePredicate initiation;
  std::vector<AldsStep> steps;

  bool is_duty() const { return tags.count("duty") != 0; }
  bool operator==(const AldsScenario&) const = default;
};

/// Slot names allowed in response templates.
inline const std::set<std::string>& template_slots() {
  static const std::set<std::string> slots{"user", "other", "entity", "focus"};
  return slots;
}

std::vector<AldsScenario> parse_alds(std::string_view content, const std::string& source = "<memory>");
std::vector<AldsScenario> load_alds(const std::string& path);

struct ScenarioContext {
  std::string sender;
  std::optional<std::string> other;
  /// Excluded participants only trigger bartender-duty scenarios.
  bool duty_only = false;
};

struct ScenarioOutcome {
  std::vector<ResponseCandidate> candidates;
  /// Sender's active scenario after this utterance (nullopt: none).
  std::optional<ActiveScenario> active;
  std::optional<std::string> fired;
  std::vector<std::string> warnings;
};

ScenarioOutcome match_scenarios(const perception::PerceptionReport& report, const InformationState& state,
                                const std::vector<AldsScenario>& library, const ScenarioContext& context);

/// Writes the outcome's active-scenario delta into `state`.
void apply_outcome(const ScenarioOutcome& outcome, const std::string& sender, InformationState& state);

/// Fills `{slot}` markers; returns nullopt if a slot has no value.
std::optional<std::string> fill_template(std::string_view tmpl, const perception::PerceptionReport& report,
                                         const ScenarioContext& context);

}  // namespace affect::control
