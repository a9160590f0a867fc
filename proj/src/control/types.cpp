#include "affect/control/types.hpp"

#include "affect/util/text.hpp"

namespace affect::control {

std::string_view to_string(Role r) {
  switch (r) {
    case Role::Single: return "single";
    case Role::Included: return "included";
    case Role::Excluded: return "excluded";
  }
  return "single";
}

std::optional<Role> parse_role(std::string_view s) {
  const auto l = text::to_lower(s);
  if (l == "single") return Role::Single;
  if (l == "included") return Role::Included;
  if (l == "excluded") return Role::Excluded;
  return std::nullopt;
}

std::optional<Role> RoleAssignment::role_of(const std::string& name) const {
  auto it = roles.find(name);
  if (it == roles.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> RoleAssignment::holder(Role role) const {
  std::optional<std::string> found;
  for (const auto& [name, r] : roles) {
    if (r != role) continue;
    if (found) return std::nullopt;
    found = name;
  }
  return found;
}

bool RoleAssignment::is_triadic() const {
  for (const auto& [_, r] : roles)
    if (r != Role::Single) return true;
  return false;
}

bool RoleAssignment::valid() const {
  if (is_triadic()) return roles.size() == 2 && holder(Role::Included) && holder(Role::Excluded);
  return roles.size() == 1;
}

std::string_view to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::Positive: return "positive";
    case ProfileKind::Negative: return "negative";
    case ProfileKind::Neutral: return "neutral";
  }
  return "neutral";
}

std::optional<ProfileKind> parse_profile_kind(std::string_view s) {
  const auto l = text::to_lower(s);
  if (l == "positive") return ProfileKind::Positive;
  if (l == "negative") return ProfileKind::Negative;
  if (l == "neutral") return ProfileKind::Neutral;
  return std::nullopt;
}

std::string_view to_string(ResponseSource s) {
  switch (s) {
    case ResponseSource::Alds: return "alds";
    case ResponseSource::Pattern: return "pattern";
    case ResponseSource::ShortAnswer: return "short-answer";
    case ResponseSource::Scripted: return "scripted";
  }
  return "pattern";
}

std::string_view to_string(Action a) {
  switch (a) {
    case Action::RespondFull: return "RespondFull";
    case Action::RespondShort: return "RespondShort";
    case Action::Redirect: return "Redirect";
    case Action::Omit: return "Omit";
    case Action::IncludedSideQuery: return "IncludedSideQuery";
    case Action::BartenderDuty: return "BartenderDuty";
  }
  return "RespondFull";
}

}  // namespace affect::control
