#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace affect::control {

enum class Role { Single, Included, Excluded };

std::string_view to_string(Role r);
std::optional<Role> parse_role(std::string_view s);

/// Participant name -> role.
struct RoleAssignment {
  std::map<std::string, Role> roles;

  std::optional<Role> role_of(const std::string& name) const;
  /// Name holding `role`, if exactly one participant does.
  std::optional<std::string> holder(Role role) const;
  bool is_triadic() const;
  /// Exactly one Included and one Excluded (triadic) or one Single (dyadic).
  bool valid() const;

  bool operator==(const RoleAssignment&) const = default;
};

enum class ProfileKind { Positive, Negative, Neutral };

std::string_view to_string(ProfileKind k);
std::optional<ProfileKind> parse_profile_kind(std::string_view s);

enum class ResponseSource { Alds, Pattern, ShortAnswer, Scripted };

std::string_view to_string(ResponseSource s);

struct ResponseCandidate {
  std::string text;
  ResponseSource source = ResponseSource::Pattern;
  int priority = 0;
  /// nullopt means broadcast.
  std::optional<std::string> target;
  /// Order within the generating component (lower is better).
  int rank = 0;

  bool operator==(const ResponseCandidate&) const = default;
};

/// Priority ALDS (2) > Pattern (1) > ShortAnswer / fallback (0).
inline constexpr int kAldsPriority = 2;
inline constexpr int kPatternPriority = 1;
inline constexpr int kFallbackPriority = 0;

enum class Action { RespondFull, RespondShort, Redirect, Omit, IncludedSideQuery, BartenderDuty };

std::string_view to_string(Action a);

class RolesMissing : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace affect::control
