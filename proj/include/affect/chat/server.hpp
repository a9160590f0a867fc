#pragma once

// One port serving the WebSocket chat protocol on /ws and the session
// management endpoints:
//   POST /sessions                      body: SessionConfig JSON -> {"room":id}
//   GET  /sessions                      -> [{room info}, ...]
//   GET  /sessions/<id>                 -> room info
//   GET  /sessions/<id>/export          -> {"room":id,"tsv":..., "json":...}
//   POST /sessions/<id>/questionnaire   body: {"name":N,"answers":{item:1..7}}

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "affect/chat/service.hpp"

namespace affect::chat {

struct ServerOptions {
  std::string address = "127.0.0.1";
  std::uint16_t port = 8080;
  std::int64_t tick_ms = 250;
  /// Closed rooms are exported here automatically when set.
  std::optional<std::string> log_dir;
};

class Server {
 public:
  Server(ChatService& service, ServerOptions options);
  ~Server();

  /// Binds and serves until stop(). Returns the bound port via port() once
  /// listening (useful with port 0).
  void run();
  void stop();
  std::uint16_t port() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Parses "host:port" (or ":port" / "port"). Throws std::invalid_argument.
std::pair<std::string, std::uint16_t> parse_listen_address(const std::string& spec);

}  // namespace affect::chat
