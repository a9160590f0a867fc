#pragma once

// Multi-room chat service with a joint floor: every member sees every
// message in the same order. Each room owns one dialogue session for the
// bot; all work for a room is serialized under the room's lock.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "affect/chat/clock.hpp"
#include "affect/chat/session_log.hpp"
#include "affect/control/dialogue.hpp"
#include "affect/perception/perceive.hpp"

namespace affect::chat {

enum class RoomState { Waiting, Running, Closed };
std::string_view to_string(RoomState s);

struct RoomEvent {
  enum class Kind { Message, Closed };
  Kind kind = Kind::Message;
  std::string room;
  Message message;
};

/// Receives room events for one member. Called with the room lock held, so
/// it must not call back into the service.
using Sink = std::function<void(const RoomEvent&)>;

struct JoinResult {
  std::uint64_t handle = 0;
  /// Messages already on the floor before this join.
  std::vector<Message> backlog;
  std::vector<std::string> members;
  RoomState state = RoomState::Waiting;
};

struct RoomInfo {
  std::string id;
  RoomState state = RoomState::Waiting;
  std::vector<std::string> members;
  std::size_t message_count = 0;
  std::int64_t remaining_s = 0;
};

class ChatService {
 public:
  /// Scripts, profiles and the triadic policy are read from `data_dir`.
  ChatService(const perception::Perceiver& perceiver, std::string data_dir, const Clock& clock);
  ~ChatService();

  /// Throws ChatError(InvalidConfig).
  std::string create_session(const SessionConfig& config);

  /// Adds a member. A name whose previous connection has left may rejoin
  /// and receives the full backlog. Throws RoomNotFound, RoomFull,
  /// NameTaken, RoomClosed.
  JoinResult join(const std::string& room, const std::string& name, Sink sink);

  /// Detaches a member's sink; the member keeps its seat.
  void leave(const std::string& room, std::uint64_t handle);

  /// Throws RoomNotFound, RoomNotRunning, NotMember.
  void post_message(const std::string& room, const std::string& name, const std::string& text);

  /// Delivers due delayed replies and closes the room once its time is up.
  void tick(const std::string& room);
  void tick_all();

  /// Throws RoomNotFound, RoomNotClosed.
  SessionLog export_log(const std::string& room) const;

  /// Answers must be integers in 1..7. Throws ValidationError, NotMember.
  void submit_questionnaire(const std::string& room, const std::string& name, const std::map<std::string, int>& answers);

  RoomInfo info(const std::string& room) const;
  std::vector<std::string> rooms() const;
  /// Dialogue trace of the bot in `room` (for analysis and tests).
  std::vector<control::TraceEntry> trace(const std::string& room) const;

 private:
  struct Member;
  struct Room;
  struct Pending;

  Room& find(const std::string& id) const;
  const control::SessionScript& script(control::ScenarioKind kind, control::ProfileKind profile);
  const control::AffectiveProfile& profile(control::ProfileKind kind);
  void broadcast(Room& room, Message message);
  void deliver_bot(Room& room, const std::vector<control::Outbound>& replies);
  void tick_locked(Room& room);

  const perception::Perceiver* perceiver_;
  std::string data_dir_;
  const Clock* clock_;
  control::ExclusionPolicy policy_;

  mutable std::mutex mu_;
  std::map<std::string, std::unique_ptr<Room>> rooms_;
  std::map<std::tuple<control::ScenarioKind, control::ProfileKind>, std::unique_ptr<control::SessionScript>> scripts_;
  std::map<control::ProfileKind, std::unique_ptr<control::AffectiveProfile>> profiles_;
  std::uint64_t next_room_ = 1;
  std::uint64_t next_handle_ = 1;
};

}  // namespace affect::chat
