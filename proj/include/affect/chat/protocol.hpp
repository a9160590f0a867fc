#pragma once

// JSON wire protocol, one object per frame.
//   client -> server: {"op":"join","room":R,"name":N}
//                     {"op":"say","room":R,"text":T}
//                     {"op":"questionnaire","room":R,"answers":{item:1..7}}
//   server -> client: {"op":"joined","room":R,"name":N,"members":[...],"state":S,"remaining_s":n}
//                     {"op":"msg","room":R,"ts":ISO8601,"sender":S,"text":T}
//                     {"op":"closed","room":R}
//                     {"op":"ack","room":R}
//                     {"op":"error","code":C,"message":M}

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "affect/chat/service.hpp"

namespace affect::chat {

struct ClientFrame {
  enum class Op { Join, Say, Questionnaire };
  Op op = Op::Say;
  std::string room;
  std::string name;
  std::string text;
  std::map<std::string, int> answers;
};

/// Throws ChatError(BadRequest) on malformed frames.
ClientFrame parse_client_frame(std::string_view frame);

std::string msg_frame(const std::string& room, const Message& m);
std::string joined_frame(const std::string& room, const std::string& name, const JoinResult& join,
                         std::int64_t remaining_s);
std::string closed_frame(const std::string& room);
std::string ack_frame(const std::string& room);
std::string error_frame(std::string_view code, std::string_view message);

/// Protocol state of one client connection. Frames produced for the client
/// go through `send`, which may be called from any thread that touches the
/// room, so it should only enqueue.
class Endpoint {
 public:
  using Send = std::function<void(const std::string& frame)>;

  Endpoint(ChatService& service, Send send);
  ~Endpoint();
  Endpoint(const Endpoint&) = delete;
  Endpoint& operator=(const Endpoint&) = delete;

  /// Handles one client frame; protocol errors become error frames.
  void handle(std::string_view frame);
  /// Releases the seat's connection (the member stays in the room).
  void disconnect();

  const std::optional<std::string>& room() const { return room_; }
  const std::optional<std::string>& name() const { return name_; }

 private:
  void on_event(const RoomEvent& ev);

  ChatService* service_;
  Send send_;
  std::optional<std::string> room_;
  std::optional<std::string> name_;
  std::uint64_t handle_ = 0;

  // Room events that arrive while join() is still running are held back so
  // the client sees "joined" and its backlog first.
  std::mutex mu_;
  bool joining_ = false;
  std::vector<std::string> held_;
};

}  // namespace affect::chat
