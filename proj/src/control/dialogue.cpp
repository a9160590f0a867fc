#include "affect/control/dialogue.hpp"

#include <algorithm>
#include <filesystem>
#include <tuple>

#include "affect/util/kv_config.hpp"
#include "affect/util/text.hpp"

namespace affect::control {

namespace fs = std::filesystem;

std::string_view to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::StrangerChat: return "stranger-chat";
    case ScenarioKind::BarDyadic: return "bar-dyadic";
    case ScenarioKind::BarTriadicExclusion: return "bar-triadic-exclusion";
  }
  return "?";
}

std::optional<ScenarioKind> parse_scenario_kind(std::string_view s) {
  const auto l = text::to_lower(s);
  if (l == "stranger-chat" || l == "strangerchat") return ScenarioKind::StrangerChat;
  if (l == "bar-dyadic" || l == "bardyadic") return ScenarioKind::BarDyadic;
  if (l == "bar-triadic-exclusion" || l == "bartriadicexclusion") return ScenarioKind::BarTriadicExclusion;
  return std::nullopt;
}

namespace {

// `key.<profile>` wins over `key`.
std::optional<std::string> lookup(const KvConfig& cfg, const std::string& key, ProfileKind profile) {
  const auto specific = key + "." + std::string(to_string(profile));
  if (cfg.has(specific)) return cfg.get(specific);
  if (cfg.has(key)) return cfg.get(key);
  return std::nullopt;
}

std::vector<PatternRule> load_pattern_sets(const fs::path& dir, const std::optional<std::string>& names) {
  std::vector<PatternRule> out;
  if (!names) return out;
  for (const auto& name : text::split_list(*names, '|')) {
    auto rules = load_patterns((dir / (name + ".pat")).string());
    out.insert(out.end(), std::make_move_iterator(rules.begin()), std::make_move_iterator(rules.end()));
  }
  return out;
}

}  // namespace

SessionScript load_session_script(const std::string& data_root, ScenarioKind kind, ProfileKind profile) {
  const fs::path root(data_root);
  const auto path = root / "sessions" / (std::string(to_string(kind)) + ".conf");
  const auto cfg = KvConfig::load(path.string());
  const auto declared = parse_scenario_kind(cfg.get("kind"));
  if (declared != kind) throw ConfigError(path.string(), 0, "kind does not match file name");

  SessionScript s;
  s.kind = kind;
  if (auto f = lookup(cfg, "scenarios", profile))
    for (const auto& name : text::split_list(*f, '|')) {
      auto more = load_alds((root / "scenarios" / name).string());
      s.scenarios.insert(s.scenarios.end(), more.begin(), more.end());
    }
  s.patterns = load_pattern_sets(root / "patterns", lookup(cfg, "patterns", profile));
  s.excluded_patterns = load_pattern_sets(root / "patterns", lookup(cfg, "patterns_excluded", profile));
  s.opening = lookup(cfg, "opening", profile).value_or("");
  s.farewell = lookup(cfg, "farewell", profile).value_or("");
  if (s.farewell.empty()) throw ConfigError(path.string(), 0, "farewell must not be empty");
  if (auto f = lookup(cfg, "fallbacks", profile)) s.fallbacks = text::split_list(*f, '|');
  if (s.fallbacks.empty()) throw ConfigError(path.string(), 0, "fallbacks must not be empty");
  s.default_duration_s = cfg.get_int_or("duration_s", s.default_duration_s);
  if (s.default_duration_s <= 0) throw ConfigError(path.string(), 0, "duration_s must be positive");
  return s;
}

void sort_candidates(std::vector<ResponseCandidate>& c) {
  std::sort(c.begin(), c.end(), [](const ResponseCandidate& a, const ResponseCandidate& b) {
    return std::tie(b.priority, a.rank, a.source, a.text, a.target) <
           std::tie(a.priority, b.rank, b.source, b.text, b.target);
  });
}

std::optional<ResponseCandidate> decide_response(std::vector<ResponseCandidate> candidates, Action action,
                                                 InformationState& state, const ResponseContext& ctx) {
  if (action == Action::Omit) return std::nullopt;
  ResponseCandidate pick;
  if (!candidates.empty()) {
    sort_candidates(candidates);
    pick = std::move(candidates.front());
  } else if (action == Action::RespondShort && !ctx.short_answers.empty()) {
    pick = {ctx.short_answers[state.rng.index(ctx.short_answers.size())], ResponseSource::ShortAnswer,
            kFallbackPriority, ctx.addressee, 0};
  } else {
    const auto& pool = ctx.fallbacks.empty() ? ctx.short_answers : ctx.fallbacks;
    pick = {pool.empty() ? std::string("hmm") : pool[state.rng.index(pool.size())], ResponseSource::ShortAnswer,
            kFallbackPriority, ctx.addressee, 0};
  }
  if (pick.source == ResponseSource::Scripted) return pick;

  if (ctx.profile && ctx.bundle) pick = apply_profile(std::move(pick), *ctx.profile, *ctx.bundle, state.rng);
  if (action == Action::RespondShort) pick.text = shorten_response(pick.text, ctx.short_answers, state.rng);
  if (ctx.addressee) pick.text = *ctx.addressee + ", " + pick.text;
  return pick;
}

DialogueSession::DialogueSession(const perception::Perceiver& perceiver, const SessionScript& script,
                                 AffectiveProfile profile, ExclusionPolicy policy, SessionSetup setup)
    : perceiver_(&perceiver),
      script_(&script),
      profile_(std::move(profile)),
      policy_(std::move(policy)),
      setup_(std::move(setup)) {
  state_.session_id = setup_.session_id;
  state_.profile = setup_.profile;
  state_.rng = Rng(setup_.seed);
  state_.duration_ms = setup_.duration_ms;
}

std::vector<Outbound> DialogueSession::open(const std::vector<std::string>& humans) {
  if (opened_) return {};
  const std::size_t expected = is_triadic(setup_.kind) ? 2 : 1;
  if (humans.size() != expected)
    throw RolesMissing(std::string(to_string(setup_.kind)) + " needs " + std::to_string(expected) + " human(s)");
  humans_ = humans;
  if (expected == 1) {
    state_.roles.roles[humans[0]] = Role::Single;
  } else {
    const auto excluded = state_.rng.index(2);
    state_.roles.roles[humans[excluded]] = Role::Excluded;
    state_.roles.roles[humans[1 - excluded]] = Role::Included;
  }
  opened_ = true;
  if (script_->opening.empty()) return {};
  return {emit({script_->opening, ResponseSource::Scripted, kFallbackPriority, std::nullopt, 0},
               Action::BartenderDuty, true)};
}

bool DialogueSession::mentions_bot(std::string_view text) const {
  const auto name = text::to_lower(setup_.bot_name);
  for (const auto& t : perception::tokenize(text, perceiver_->bundle().modifiers))
    if (t.is_word() && t.lower == name) return true;
  return false;
}

std::optional<std::string> DialogueSession::other_human(const std::string& name) const {
  for (const auto& h : humans_)
    if (h != name) return h;
  return std::nullopt;
}

Outbound DialogueSession::emit(ResponseCandidate c, Action action, bool initiated) {
  Outbound out{std::move(c.text), std::move(c.target), initiated, action, c.source};
  state_ = advance_state(std::move(state_), OutboundEvent{out.target, out.text});
  return out;
}

std::vector<Outbound> DialogueSession::on_utterance(const std::string& sender, const std::string& text,
                                                    std::int64_t timestamp_ms) {
  if (!opened_ || state_.terminal || farewell_sent_) return {};
  TraceEntry entry;
  entry.sender = sender;
  entry.text = text;
  entry.role = state_.roles.role_of(sender);

  const auto report = perceiver_->perceive({text, sender, timestamp_ms, std::nullopt});
  state_ = advance_state(std::move(state_), InboundEvent{sender, report});

  const bool triadic = is_triadic(setup_.kind);
  // Included utterances always get a reaction; the Excluded one must use the keyword.
  entry.addressed = !triadic || mentions_bot(text) || entry.role == Role::Included;
  if (!entry.addressed) {
    trace_.push_back(std::move(entry));
    return {};
  }

  Route route;
  if (triadic) route = exclusion_route(report, sender, state_, policy_);
  entry.action = route.action;

  const bool excluded = entry.role == Role::Excluded;
  const ScenarioContext sctx{sender, other_human(sender), excluded};
  std::vector<ResponseCandidate> candidates;
  std::optional<ScenarioOutcome> outcome;

  if (route.action == Action::Redirect) {
    const auto included = state_.roles.holder(Role::Included).value_or("");
    candidates.push_back({fill_roles(policy_.redirect_template, included, sender), ResponseSource::Scripted,
                          kAldsPriority, sender, 0});
  } else if (route.action != Action::Omit) {
    outcome = match_scenarios(report, state_, script_->scenarios, sctx);
    candidates = outcome->candidates;
    entry.warnings = outcome->warnings;
    const auto& rules = excluded && !script_->excluded_patterns.empty() ? script_->excluded_patterns : script_->patterns;
    for (auto& c : match_patterns(text, rules, {text::to_lower(setup_.bot_name)})) {
      c.target = sender;
      candidates.push_back(std::move(c));
    }
  }

  ResponseContext rctx;
  rctx.profile = &profile_;
  rctx.bundle = &perceiver_->bundle();
  rctx.fallbacks = script_->fallbacks;
  rctx.short_answers = policy_.short_answers;
  if (triadic) rctx.addressee = sender;

  std::vector<Outbound> out;
  if (auto reply = decide_response(std::move(candidates), route.action, state_, rctx)) {
    if (outcome) apply_outcome(*outcome, sender, state_);
    reply->target = sender;
    out.push_back(emit(std::move(*reply), route.action, false));
  }
  if (route.side_query) {
    const auto included = state_.roles.holder(Role::Included).value_or("");
    const auto excl = state_.roles.holder(Role::Excluded).value_or("");
    out.push_back(emit({fill_roles(policy_.included_query_template, included, excl), ResponseSource::Scripted,
                        kFallbackPriority, included, 0},
                       Action::IncludedSideQuery, true));
  }
  entry.replies = out;
  trace_.push_back(std::move(entry));
  return out;
}

std::vector<Outbound> DialogueSession::on_tick(std::int64_t elapsed_ms) {
  state_ = advance_state(std::move(state_), TickEvent{elapsed_ms});
  if (!state_.terminal || farewell_sent_) return {};
  farewell_sent_ = true;
  return {emit({script_->farewell, ResponseSource::Scripted, kFallbackPriority, std::nullopt, 0},
               Action::BartenderDuty, true)};
}

}  // namespace affect::control
