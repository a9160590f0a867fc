#include "affect/chat/service.hpp"

#include <algorithm>
#include <deque>
#include <filesystem>

#include "affect/util/text.hpp"

namespace affect::chat {

namespace fs = std::filesystem;
using control::Outbound;

std::string_view to_string(RoomState s) {
  switch (s) {
    case RoomState::Waiting: return "waiting";
    case RoomState::Running: return "running";
    case RoomState::Closed: return "closed";
  }
  return "?";
}

struct ChatService::Member {
  std::string name;
  std::uint64_t handle = 0;
  Sink sink;
  bool connected = true;
};

struct ChatService::Pending {
  std::int64_t due_ms = 0;
  Outbound reply;
};

struct ChatService::Room {
  std::string id;
  SessionConfig config;
  std::int64_t duration_s = 0;
  RoomState state = RoomState::Waiting;
  std::vector<Member> members;
  SessionLog log;
  std::unique_ptr<control::DialogueSession> session;
  std::int64_t started_ms = 0;
  std::deque<Pending> pending;
  mutable std::mutex mu;
};

ChatService::ChatService(const perception::Perceiver& perceiver, std::string data_dir, const Clock& clock)
    : perceiver_(&perceiver),
      data_dir_(std::move(data_dir)),
      clock_(&clock),
      policy_(control::load_exclusion_policy((fs::path(data_dir_) / "exclusion.conf").string())) {}

ChatService::~ChatService() = default;

const control::SessionScript& ChatService::script(control::ScenarioKind kind, control::ProfileKind profile) {
  auto& slot = scripts_[{kind, profile}];
  if (!slot) slot = std::make_unique<control::SessionScript>(control::load_session_script(data_dir_, kind, profile));
  return *slot;
}

const control::AffectiveProfile& ChatService::profile(control::ProfileKind kind) {
  auto& slot = profiles_[kind];
  if (!slot) {
    const auto path = fs::path(data_dir_) / "profiles" / (std::string(control::to_string(kind)) + ".conf");
    slot = std::make_unique<control::AffectiveProfile>(control::load_profile(path.string(), perceiver_->bundle()));
  }
  return *slot;
}

ChatService::Room& ChatService::find(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = rooms_.find(id);
  if (it == rooms_.end()) throw ChatError(ChatError::Code::RoomNotFound, "no room '" + id + "'");
  return *it->second;
}

std::string ChatService::create_session(const SessionConfig& config) {
  config.validate();
  std::lock_guard lock(mu_);
  const control::SessionScript* s = nullptr;
  const control::AffectiveProfile* p = nullptr;
  try {
    s = &script(config.scenario_kind, config.profile);
    p = &profile(config.profile);
  } catch (const std::exception& e) {
    throw ChatError(ChatError::Code::InvalidConfig, e.what());
  }

  auto room = std::make_unique<Room>();
  room->id = "room-" + std::to_string(next_room_++);
  room->config = config;
  room->duration_s = config.duration_s.value_or(s->default_duration_s);
  room->config.duration_s = room->duration_s;
  room->config.participants_expected = config.humans();
  room->log.room_id = room->id;
  room->log.config = room->config;

  control::SessionSetup setup;
  setup.session_id = room->id;
  setup.kind = config.scenario_kind;
  setup.profile = config.profile;
  setup.seed = config.seed;
  setup.bot_name = config.bot_name;
  setup.duration_ms = room->duration_s * 1000;
  room->session = std::make_unique<control::DialogueSession>(*perceiver_, *s, *p, policy_, std::move(setup));

  const auto id = room->id;
  rooms_.emplace(id, std::move(room));
  return id;
}

void ChatService::broadcast(Room& room, Message message) {
  // Wall clocks can step backwards; the floor never does.
  if (!room.log.messages.empty()) message.timestamp_s = std::max(message.timestamp_s, room.log.messages.back().timestamp_s);
  room.log.messages.push_back(message);
  RoomEvent ev{RoomEvent::Kind::Message, room.id, std::move(message)};
  for (auto& m : room.members)
    if (m.connected && m.sink) m.sink(ev);
}

void ChatService::deliver_bot(Room& room, const std::vector<Outbound>& replies) {
  const auto now = clock_->now_ms();
  for (const auto& r : replies) {
    if (room.config.typing_delay && !r.initiated) {
      const auto delay = static_cast<std::int64_t>(static_cast<double>(r.text.size()) * room.config.typing_ms_per_char);
      room.pending.push_back({now + delay, r});
      continue;
    }
    broadcast(room, {now / 1000, room.config.bot_name, r.text});
  }
}

JoinResult ChatService::join(const std::string& room_id, const std::string& name, Sink sink) {
  auto& room = find(room_id);
  std::lock_guard lock(room.mu);
  if (room.state == RoomState::Closed) throw ChatError(ChatError::Code::RoomClosed, "room is closed");
  if (name.empty()) throw ChatError(ChatError::Code::ValidationError, "name must not be empty");
  if (text::to_lower(name) == text::to_lower(room.config.bot_name))
    throw ChatError(ChatError::Code::NameTaken, "name is reserved for the bot");

  JoinResult result;
  auto existing = std::find_if(room.members.begin(), room.members.end(), [&](const Member& m) { return m.name == name; });
  if (existing != room.members.end()) {
    if (existing->connected) throw ChatError(ChatError::Code::NameTaken, "name '" + name + "' is taken");
    {
      std::lock_guard g(mu_);
      existing->handle = next_handle_++;
    }
    existing->sink = std::move(sink);
    existing->connected = true;
    result.handle = existing->handle;
    result.backlog = room.log.messages;
  } else {
    if (static_cast<int>(room.members.size()) >= room.config.humans())
      throw ChatError(ChatError::Code::RoomFull, "room is full");
    Member m;
    m.name = name;
    m.sink = std::move(sink);
    {
      std::lock_guard g(mu_);
      m.handle = next_handle_++;
    }
    result.handle = m.handle;
    result.backlog = room.log.messages;
    room.members.push_back(std::move(m));

    if (static_cast<int>(room.members.size()) == room.config.humans()) {
      room.state = RoomState::Running;
      room.started_ms = clock_->now_ms();
      room.log.started_at_s = room.started_ms / 1000;
      std::vector<std::string> names;
      for (const auto& member : room.members) names.push_back(member.name);
      const auto opening = room.session->open(names);
      for (const auto& [who, role] : room.session->roles().roles) room.log.roles[who] = control::to_string(role);
      deliver_bot(room, opening);
    }
  }
  for (const auto& m : room.members) result.members.push_back(m.name);
  result.state = room.state;
  return result;
}

void ChatService::leave(const std::string& room_id, std::uint64_t handle) {
  auto& room = find(room_id);
  std::lock_guard lock(room.mu);
  for (auto& m : room.members)
    if (m.handle == handle) {
      m.connected = false;
      m.sink = nullptr;
    }
}

void ChatService::tick_locked(Room& room) {
  if (room.state != RoomState::Running) return;
  const auto now = clock_->now_ms();
  while (!room.pending.empty() && room.pending.front().due_ms <= now) {
    auto p = std::move(room.pending.front());
    room.pending.pop_front();
    broadcast(room, {now / 1000, room.config.bot_name, p.reply.text});
  }
  const auto farewell = room.session->on_tick(now - room.started_ms);
  if (farewell.empty()) return;
  room.pending.clear();
  for (const auto& f : farewell) broadcast(room, {now / 1000, room.config.bot_name, f.text});
  room.state = RoomState::Closed;
  RoomEvent ev{RoomEvent::Kind::Closed, room.id, {}};
  for (auto& m : room.members)
    if (m.connected && m.sink) m.sink(ev);
}

void ChatService::post_message(const std::string& room_id, const std::string& name, const std::string& text) {
  auto& room = find(room_id);
  std::lock_guard lock(room.mu);
  tick_locked(room);
  if (room.state != RoomState::Running) throw ChatError(ChatError::Code::RoomNotRunning, "room is not running");
  if (std::none_of(room.members.begin(), room.members.end(), [&](const Member& m) { return m.name == name; }))
    throw ChatError(ChatError::Code::NotMember, "'" + name + "' is not in this room");
  const auto now = clock_->now_ms();
  broadcast(room, {now / 1000, name, text});
  deliver_bot(room, room.session->on_utterance(name, text, now - room.started_ms));
}

void ChatService::tick(const std::string& room_id) {
  auto& room = find(room_id);
  std::lock_guard lock(room.mu);
  tick_locked(room);
}

void ChatService::tick_all() {
  for (const auto& id : rooms()) tick(id);
}

SessionLog ChatService::export_log(const std::string& room_id) const {
  auto& room = find(room_id);
  std::lock_guard lock(room.mu);
  if (room.state != RoomState::Closed) throw ChatError(ChatError::Code::RoomNotClosed, "room is still open");
  return room.log;
}

void ChatService::submit_questionnaire(const std::string& room_id, const std::string& name,
                                       const std::map<std::string, int>& answers) {
  auto& room = find(room_id);
  std::lock_guard lock(room.mu);
  if (std::none_of(room.members.begin(), room.members.end(), [&](const Member& m) { return m.name == name; }))
    throw ChatError(ChatError::Code::NotMember, "'" + name + "' is not in this room");
  if (answers.empty()) throw ChatError(ChatError::Code::ValidationError, "no answers");
  for (const auto& [item, value] : answers) {
    if (item.empty()) throw ChatError(ChatError::Code::ValidationError, "empty item id");
    if (value < 1 || value > 7)
      throw ChatError(ChatError::Code::ValidationError, "item '" + item + "' must be in 1..7");
  }
  room.log.questionnaire[name] = answers;
}

RoomInfo ChatService::info(const std::string& room_id) const {
  auto& room = find(room_id);
  std::lock_guard lock(room.mu);
  RoomInfo i;
  i.id = room.id;
  i.state = room.state;
  for (const auto& m : room.members) i.members.push_back(m.name);
  i.message_count = room.log.messages.size();
  if (room.state == RoomState::Waiting) i.remaining_s = room.duration_s;
  else if (room.state == RoomState::Running)
    i.remaining_s = std::max<std::int64_t>(0, room.duration_s - (clock_->now_ms() - room.started_ms) / 1000);
  return i;
}

std::vector<std::string> ChatService::rooms() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> out;
  for (const auto& [id, _] : rooms_) out.push_back(id);
  return out;
}

std::vector<control::TraceEntry> ChatService::trace(const std::string& room_id) const {
  auto& room = find(room_id);
  std::lock_guard lock(room.mu);
  return room.session->trace();
}

}  // namespace affect::chat
