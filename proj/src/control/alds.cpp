#include "affect/control/alds.hpp"

#include <sstream>

#include "affect/util/text.hpp"

namespace affect::control {

namespace {

CueAtom parse_atom(std::string_view raw) {
  const auto s = std::string(text::trim(raw));
  CueAtom a;
  if (s == "true" || s == "*") return a;
  const auto prefixed = [&](std::string_view p) { return s.rfind(p, 0) == 0 && s.size() > p.size(); };
  if (prefixed("da=")) {
    a.kind = CueAtom::Kind::DialogueAct;
    a.value = s.substr(3);
    auto act = perception::parse_dialogue_act(a.value);
    if (!act) throw std::invalid_argument("unknown dialogue act '" + a.value + "'");
    a.act = *act;
  } else if (prefixed("sentiment=")) {
    a.kind = CueAtom::Kind::Sentiment;
    a.value = s.substr(10);
    auto c = perception::parse_sentiment_class(a.value);
    if (!c) throw std::invalid_argument("unknown sentiment class '" + a.value + "'");
    a.sentiment = *c;
  } else if (prefixed("entity:")) {
    a.kind = CueAtom::Kind::Entity;
    a.value = s.substr(7);
  } else if (prefixed("category:")) {
    a.kind = CueAtom::Kind::Category;
    a.value = text::to_lower(s.substr(9));
  } else if (prefixed("kw:")) {
    a.kind = CueAtom::Kind::Keyword;
    a.value = text::to_lower(s.substr(3));
  } else {
    throw std::invalid_argument("bad cue atom '" + s + "'");
  }
  return a;
}

void check_slots(std::string_view tmpl, const std::string& source, std::size_t line) {
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] != '{') continue;
    const auto close = tmpl.find('}', i);
    if (close == std::string_view::npos) throw ScriptError(source, line, "unterminated slot");
    const std::string name(tmpl.substr(i + 1, close - i - 1));
    if (!template_slots().count(name)) throw ScriptError(source, line, "unknown slot {" + name + "}");
    i = close;
  }
}

// Reads a double-quoted string starting at `pos` (which must point at '"').
std::string read_quoted(const std::string& line, std::size_t& pos, const std::string& source, std::size_t lineno) {
  if (pos >= line.size() || line[pos] != '"') throw ScriptError(source, lineno, "expected quoted template");
  std::string out;
  for (++pos; pos < line.size(); ++pos) {
    if (line[pos] == '\\' && pos + 1 < line.size()) {
      out += line[++pos];
    } else if (line[pos] == '"') {
      ++pos;
      return out;
    } else {
      out += line[pos];
    }
  }
  throw ScriptError(source, lineno, "unterminated template string");
}

}  // namespace

CuePredicate CuePredicate::parse(std::string_view text) {
  CuePredicate p;
  for (const auto& piece : text::split(text, '&')) {
    auto atom = parse_atom(piece);
    if (atom.kind != CueAtom::Kind::Always) p.atoms.push_back(std::move(atom));
  }
  return p;
}

bool CuePredicate::evaluate(const perception::PerceptionReport& r) const {
  for (const auto& a : atoms) {
    bool ok = true;
    switch (a.kind) {
      case CueAtom::Kind::Always: break;
      case CueAtom::Kind::DialogueAct: ok = r.dialogue_act.label == a.act; break;
      case CueAtom::Kind::Sentiment: ok = r.sentiment.klass == a.sentiment; break;
      case CueAtom::Kind::Entity: ok = r.has_entity(a.value); break;
      case CueAtom::Kind::Category: ok = r.has_category(a.value); break;
      case CueAtom::Kind::Keyword: ok = r.has_word(a.value); break;
    }
    if (!ok) return false;
  }
  return true;
}

std::vector<AldsScenario> parse_alds(std::string_view content, const std::string& source) {
  std::vector<AldsScenario> out;
  std::vector<std::vector<std::pair<std::optional<std::size_t>, std::size_t>>> targets;  // (next, line)
  std::size_t lineno = 0;
  const auto current = [&]() -> AldsScenario& {
    if (out.empty()) throw ScriptError(source, lineno, "directive outside SCENARIO");
    return out.back();
  };

  for (auto raw : text::split(content, '\n')) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line(text::trim(raw));
    if (line.empty() || line.front() == '#') continue;
    std::istringstream in(line);
    std::string keyword;
    in >> keyword;
    try {
      if (keyword == "SCENARIO") {
        AldsScenario s;
        in >> s.id;
        if (s.id.empty()) throw ScriptError(source, lineno, "scenario id missing");
        for (const auto& prev : out)
          if (prev.id == s.id) throw ScriptError(source, lineno, "duplicate scenario id " + s.id);
        out.push_back(std::move(s));
        targets.emplace_back();
      } else if (keyword == "TAG") {
        std::string tag;
        while (in >> tag) current().tags.insert(tag);
      } else if (keyword == "WHEN") {
        current().initiation = CuePredicate::parse(line.substr(4));
      } else if (keyword == "STEP") {
        auto& s = current();
        std::size_t index = 0;
        if (!(in >> index) || index != s.steps.size())
          throw ScriptError(source, lineno, "steps must be numbered 0, 1, 2, ... in order");
        std::string expect;
        in >> expect;
        if (expect != "EXPECT") throw ScriptError(source, lineno, "expected EXPECT");
        const auto say = line.find(" SAY ");
        if (say == std::string::npos) throw ScriptError(source, lineno, "expected SAY");
        const auto expect_at = line.find("EXPECT") + 6;
        AldsStep step;
        step.expected = CuePredicate::parse(line.substr(expect_at, say - expect_at));
        std::size_t pos = say + 5;
        while (pos < line.size() && line[pos] == ' ') ++pos;
        step.response_template = read_quoted(line, pos, source, lineno);
        check_slots(step.response_template, source, lineno);
        std::istringstream rest(line.substr(pos));
        std::string then_kw, next, else_kw, miss;
        rest >> then_kw >> next >> else_kw >> miss;
        if (then_kw != "THEN" || else_kw != "ELSE" || next.empty() || miss.empty())
          throw ScriptError(source, lineno, "expected THEN <n|END> ELSE <retry|abort|skip>");
        std::optional<std::size_t> target;
        if (next != "END") {
          try {
            target = std::stoul(next);
          } catch (const std::exception&) {
            throw ScriptError(source, lineno, "bad step target '" + next + "'");
          }
        }
        if (miss == "retry") step.on_miss = MissPolicy::Retry;
        else if (miss == "abort") step.on_miss = MissPolicy::Abort;
        else if (miss == "skip") step.on_miss = MissPolicy::Skip;
        else throw ScriptError(source, lineno, "bad miss policy '" + miss + "'");
        step.on_match = target;
        targets.back().emplace_back(target, lineno);
        s.steps.push_back(std::move(step));
      } else {
        throw ScriptError(source, lineno, "unknown directive '" + keyword + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw ScriptError(source, lineno, e.what());
    }
  }

  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].steps.empty()) throw ScriptError(source, lineno, "scenario " + out[i].id + " has no steps");
    for (const auto& [t, l] : targets[i])
      if (t && *t >= out[i].steps.size()) throw ScriptError(source, l, "step target out of range");
  }
  return out;
}

std::vector<AldsScenario> load_alds(const std::string& path) {
  std::string content;
  try {
    content = text::read_file(path);
  } catch (const std::runtime_error&) {
    throw ScriptError(path, 0, "cannot open file");
  }
  return parse_alds(content, path);
}

std::optional<std::string> fill_template(std::string_view tmpl, const perception::PerceptionReport& report,
                                         const ScenarioContext& context) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] != '{') {
      out += tmpl[i];
      continue;
    }
    const auto close = tmpl.find('}', i);
    if (close == std::string_view::npos) return std::nullopt;
    const auto name = tmpl.substr(i + 1, close - i - 1);
    std::optional<std::string> value;
    if (name == "user") value = context.sender;
    else if (name == "other") value = context.other;
    else if (name == "entity" && !report.entities.empty()) value = report.entities.front().phrase;
    else if (name == "focus" && !report.focus.focus_terms.empty()) value = report.focus.focus_terms.front();
    if (!value || value->empty()) return std::nullopt;
    out += *value;
    i = close;
  }
  return out;
}

namespace {

struct StepRun {
  bool matched = false;
  std::optional<ActiveScenario> next;
};

// Evaluates one step. On a match the filled template (if resolvable) is
// appended to the outcome.
StepRun run_step(const AldsScenario& scenario, std::size_t scenario_index, std::size_t step_index,
                 const perception::PerceptionReport& report, const ScenarioContext& context,
                 ScenarioOutcome& outcome) {
  const auto& step = scenario.steps[step_index];
  StepRun run;
  if (step.expected.evaluate(report)) {
    run.matched = true;
    if (auto text = fill_template(step.response_template, report, context)) {
      outcome.candidates.push_back({*text, ResponseSource::Alds, kAldsPriority, context.sender, 0});
      outcome.fired = scenario.id;
    } else {
      outcome.warnings.push_back("scenario " + scenario.id + " step " + std::to_string(step_index) +
                                 ": unresolved template slot, candidate dropped");
    }
    if (step.on_match) run.next = ActiveScenario{scenario_index, *step.on_match};
    return run;
  }
  switch (step.on_miss) {
    case MissPolicy::Retry: run.next = ActiveScenario{scenario_index, step_index}; break;
    case MissPolicy::Skip:
      if (step.on_match) run.next = ActiveScenario{scenario_index, *step.on_match};
      break;
    case MissPolicy::Abort: break;
  }
  return run;
}

}  // namespace

ScenarioOutcome match_scenarios(const perception::PerceptionReport& report, const InformationState& state,
                                const std::vector<AldsScenario>& library, const ScenarioContext& context) {
  ScenarioOutcome outcome;
  if (auto it = state.active.find(context.sender); it != state.active.end()) {
    const auto [si, step] = it->second;
    if (si < library.size() && step < library[si].steps.size()) {
      const auto& scenario = library[si];
      const auto run = run_step(scenario, si, step, report, context, outcome);
      const bool aborted = !run.matched && scenario.steps[step].on_miss == MissPolicy::Abort;
      if (!aborted) {
        outcome.active = run.next;
        return outcome;
      }
    }
  }

  for (std::size_t si = 0; si < library.size(); ++si) {
    const auto& scenario = library[si];
    if (context.duty_only && !scenario.is_duty()) continue;
    if (!scenario.initiation.evaluate(report)) continue;
    const auto run = run_step(scenario, si, 0, report, context, outcome);
    if (!run.matched && scenario.steps[0].on_miss == MissPolicy::Abort) continue;
    outcome.active = run.next;
    return outcome;
  }
  outcome.active = std::nullopt;
  return outcome;
}

void apply_outcome(const ScenarioOutcome& outcome, const std::string& sender, InformationState& state) {
  if (outcome.active) state.active[sender] = *outcome.active;
  else state.active.erase(sender);
}

}  // namespace affect::control
