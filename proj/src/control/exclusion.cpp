#include "affect/control/exclusion.hpp"

#include "affect/perception/tokenizer.hpp"
#include "affect/util/text.hpp"

namespace affect::control {

using perception::DialogueAct;

void ExclusionPolicy::validate(const std::string& source) const {
  const auto prob = [&](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(source, 0, std::string(name) + " must be in [0,1]");
  };
  prob(omission_probability, "omission_probability");
  prob(redirect_probability, "redirect_probability");
  prob(included_query_probability, "included_query_probability");
  if (omission_start_turn < 1) throw ConfigError(source, 0, "omission_start_turn must be >= 1");
  if (short_answers.empty()) throw ConfigError(source, 0, "short_answers must not be empty");
  for (const auto* t : {&redirect_template, &included_query_template})
    if (t->find("{included}") == std::string::npos || t->find("{excluded}") == std::string::npos)
      throw ConfigError(source, 0, "templates need both {included} and {excluded}");
}

namespace {

std::set<DialogueAct> parse_acts(const KvConfig& cfg, const std::string& key, std::set<DialogueAct> fallback) {
  if (!cfg.has(key)) return fallback;
  std::set<DialogueAct> out;
  for (const auto& name : cfg.get_list(key)) {
    const auto act = perception::parse_dialogue_act(name);
    if (!act) throw ConfigError(cfg.source(), 0, key + ": unknown dialogue act '" + name + "'");
    out.insert(*act);
  }
  return out;
}

}  // namespace

ExclusionPolicy parse_exclusion_policy(const KvConfig& cfg) {
  ExclusionPolicy p;
  if (cfg.has("short_answers")) p.short_answers = cfg.get_list("short_answers");
  p.omission_probability = cfg.get_double_or("omission_probability", p.omission_probability);
  const auto start = cfg.get_int_or("omission_start_turn", static_cast<std::int64_t>(p.omission_start_turn));
  if (start < 1) throw ConfigError(cfg.source(), 0, "omission_start_turn must be >= 1");
  p.omission_start_turn = static_cast<std::size_t>(start);
  p.redirect_probability = cfg.get_double_or("redirect_probability", p.redirect_probability);
  p.included_query_probability = cfg.get_double_or("included_query_probability", p.included_query_probability);
  p.redirect_template = cfg.get_or("redirect_template", p.redirect_template);
  p.included_query_template = cfg.get_or("included_query_template", p.included_query_template);
  p.question_acts = parse_acts(cfg, "question_acts", p.question_acts);
  p.duty_acts = parse_acts(cfg, "duty_acts", p.duty_acts);
  p.validate(cfg.source());
  return p;
}

ExclusionPolicy load_exclusion_policy(const std::string& path) { return parse_exclusion_policy(KvConfig::load(path)); }

std::string shorten_response(std::string_view text, const std::vector<std::string>& short_answers, Rng& rng,
                             std::size_t max_words) {
  const auto tokens = perception::tokenize(text);
  const auto sentence_end = [](const perception::Token& t) {
    return t.kind == perception::TokenKind::Punct && (t.surface == "." || t.surface == "!" || t.surface == "?");
  };
  std::size_t words = 0;
  bool closed = false;
  std::optional<std::size_t> first, last;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& t = tokens[i];
    if (sentence_end(t)) {
      if (words == 0) continue;  // leading "..." carries no clause
      last = i;
      while (i + 1 < tokens.size() && sentence_end(tokens[i + 1])) last = ++i;
      closed = true;
      break;
    }
    if (t.is_word()) {
      if (words == max_words) break;
      ++words;
    }
    if (t.kind != perception::TokenKind::Punct && !first) first = i;
    if (first) last = i;
  }
  if (words == 0) {
    if (short_answers.empty()) return "hmm";
    return short_answers[rng.index(short_answers.size())];
  }
  // A cut clause should not end on a dangling comma.
  while (!closed && tokens[*last].kind == perception::TokenKind::Punct) --*last;
  const auto begin = tokens[*first].begin;
  return std::string(text.substr(begin, tokens[*last].end() - begin));
}

Route exclusion_route(const perception::PerceptionReport& report, const std::string& sender, InformationState& state,
                      const ExclusionPolicy& policy) {
  if (!state.roles.valid() || !state.roles.is_triadic())
    throw RolesMissing("exclusion policy needs one Included and one Excluded participant");
  const auto role = state.roles.role_of(sender);
  if (!role) throw RolesMissing("sender '" + sender + "' has no role");

  if (policy.duty_acts.count(report.dialogue_act.label)) return {Action::BartenderDuty, false};

  if (*role == Role::Included) {
    const bool side = state.rng.bernoulli(policy.included_query_probability);
    return {Action::RespondFull, side};
  }

  if (state.turn_of(sender) >= policy.omission_start_turn && state.rng.bernoulli(policy.omission_probability))
    return {Action::Omit, false};
  if (policy.question_acts.count(report.dialogue_act.label) && state.rng.bernoulli(policy.redirect_probability))
    return {Action::Redirect, false};
  return {Action::RespondShort, false};
}

std::string fill_roles(std::string_view tmpl, const std::string& included, const std::string& excluded) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.size();) {
    if (tmpl.substr(i).starts_with("{included}")) {
      out += included;
      i += 10;
    } else if (tmpl.substr(i).starts_with("{excluded}")) {
      out += excluded;
      i += 10;
    } else {
      out += tmpl[i++];
    }
  }
  return out;
}

}  // namespace affect::control
