#include "affect/chat/protocol.hpp"

#include "json.hpp"

namespace affect::chat {

using nlohmann::json;

ClientFrame parse_client_frame(std::string_view frame) {
  const auto bad = [](const std::string& m) { throw ChatError(ChatError::Code::BadRequest, m); };
  json j;
  try {
    j = json::parse(frame);
  } catch (const json::exception&) {
    bad("frame is not valid JSON");
  }
  if (!j.is_object() || !j.contains("op") || !j["op"].is_string()) bad("frame needs a string 'op'");
  ClientFrame f;
  const auto str = [&](const char* key, bool required) -> std::string {
    if (!j.contains(key)) {
      if (required) bad(std::string("missing '") + key + "'");
      return {};
    }
    if (!j[key].is_string()) bad(std::string("'") + key + "' must be a string");
    return j[key].get<std::string>();
  };
  const auto op = j["op"].get<std::string>();
  f.room = str("room", false);
  if (op == "join") {
    f.op = ClientFrame::Op::Join;
    f.name = str("name", true);
    if (f.room.empty()) bad("join needs a room");
  } else if (op == "say") {
    f.op = ClientFrame::Op::Say;
    f.text = str("text", true);
    f.name = str("name", false);
  } else if (op == "questionnaire") {
    f.op = ClientFrame::Op::Questionnaire;
    f.name = str("name", false);
    if (!j.contains("answers") || !j["answers"].is_object()) bad("questionnaire needs an 'answers' object");
    for (const auto& [item, v] : j["answers"].items()) {
      if (!v.is_number_integer()) throw ChatError(ChatError::Code::ValidationError, "answers must be integers");
      f.answers[item] = v.get<int>();
    }
  } else {
    bad("unknown op '" + op + "'");
  }
  return f;
}

std::string msg_frame(const std::string& room, const Message& m) {
  return json{{"op", "msg"}, {"room", room}, {"ts", iso8601(m.timestamp_s)}, {"sender", m.sender}, {"text", m.text}}
      .dump();
}

std::string joined_frame(const std::string& room, const std::string& name, const JoinResult& join,
                         std::int64_t remaining_s) {
  return json{{"op", "joined"},
              {"room", room},
              {"name", name},
              {"members", join.members},
              {"state", to_string(join.state)},
              {"remaining_s", remaining_s}}
      .dump();
}

std::string closed_frame(const std::string& room) { return json{{"op", "closed"}, {"room", room}}.dump(); }

std::string ack_frame(const std::string& room) { return json{{"op", "ack"}, {"room", room}}.dump(); }

std::string error_frame(std::string_view code, std::string_view message) {
  return json{{"op", "error"}, {"code", code}, {"message", message}}.dump();
}

Endpoint::Endpoint(ChatService& service, Send send) : service_(&service), send_(std::move(send)) {}

Endpoint::~Endpoint() { disconnect(); }

void Endpoint::on_event(const RoomEvent& ev) {
  auto frame = ev.kind == RoomEvent::Kind::Message ? msg_frame(ev.room, ev.message) : closed_frame(ev.room);
  std::lock_guard lock(mu_);
  if (joining_) held_.push_back(std::move(frame));
  else send_(frame);
}

void Endpoint::handle(std::string_view raw) {
  try {
    const auto f = parse_client_frame(raw);
    switch (f.op) {
      case ClientFrame::Op::Join: {
        if (room_) throw ChatError(ChatError::Code::BadRequest, "already joined " + *room_);
        {
          std::lock_guard lock(mu_);
          joining_ = true;
        }
        JoinResult r;
        try {
          r = service_->join(f.room, f.name, [this](const RoomEvent& ev) { on_event(ev); });
        } catch (...) {
          std::lock_guard lock(mu_);
          joining_ = false;
          held_.clear();
          throw;
        }
        room_ = f.room;
        name_ = f.name;
        handle_ = r.handle;
        const auto remaining = service_->info(f.room).remaining_s;
        std::lock_guard lock(mu_);
        send_(joined_frame(f.room, f.name, r, remaining));
        for (const auto& m : r.backlog) send_(msg_frame(f.room, m));
        for (const auto& h : held_) send_(h);
        held_.clear();
        joining_ = false;
        break;
      }
      case ClientFrame::Op::Say:
        if (!room_) throw ChatError(ChatError::Code::NotMember, "join a room first");
        if (!f.room.empty() && f.room != *room_) throw ChatError(ChatError::Code::NotMember, "not in room " + f.room);
        service_->post_message(*room_, *name_, f.text);
        break;
      case ClientFrame::Op::Questionnaire:
        if (!room_) throw ChatError(ChatError::Code::NotMember, "join a room first");
        service_->submit_questionnaire(*room_, *name_, f.answers);
        send_(ack_frame(*room_));
        break;
    }
  } catch (const ChatError& e) {
    send_(error_frame(to_string(e.code()), e.what()));
  }
}

void Endpoint::disconnect() {
  if (!room_) return;
  try {
    service_->leave(*room_, handle_);
  } catch (const ChatError&) {
  }
  room_.reset();
  name_.reset();
}

}  // namespace affect::chat
