#include "affect/chat/server.hpp"

#include <atomic>
#include <deque>
#include <iostream>
#include <set>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "affect/chat/protocol.hpp"
#include "json.hpp"

namespace affect::chat {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;
using nlohmann::json;

std::pair<std::string, std::uint16_t> parse_listen_address(const std::string& spec) {
  std::string host = "127.0.0.1";
  std::string port = spec;
  if (const auto colon = spec.rfind(':'); colon != std::string::npos) {
    if (colon > 0) host = spec.substr(0, colon);
    port = spec.substr(colon + 1);
  }
  std::size_t used = 0;
  unsigned long p = 0;
  try {
    p = std::stoul(port, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad listen address '" + spec + "'");
  }
  if (used != port.size() || p > 65535) throw std::invalid_argument("bad listen address '" + spec + "'");
  return {host, static_cast<std::uint16_t>(p)};
}

namespace {

http::status status_for(ChatError::Code c) {
  using C = ChatError::Code;
  switch (c) {
    case C::RoomNotFound: return http::status::not_found;
    case C::NotMember: return http::status::forbidden;
    case C::NameTaken:
    case C::RoomFull:
    case C::RoomClosed:
    case C::RoomNotRunning:
    case C::RoomNotClosed: return http::status::conflict;
    default: return http::status::bad_request;
  }
}

json info_json(const RoomInfo& i) {
  return {{"room", i.id},
          {"state", to_string(i.state)},
          {"members", i.members},
          {"message_count", i.message_count},
          {"remaining_s", i.remaining_s}};
}

using Request = http::request<http::string_body>;
using Response = http::response<http::string_body>;

Response respond(const Request& req, http::status status, const json& body) {
  Response res{status, req.version()};
  res.set(http::field::content_type, "application/json");
  res.set(http::field::access_control_allow_origin, "*");
  res.keep_alive(req.keep_alive());
  res.body() = body.dump();
  res.prepare_payload();
  return res;
}

Response route(ChatService& service, const Request& req) {
  const std::string target(req.target());
  std::vector<std::string> parts;
  for (std::size_t start = 1; start <= target.size();) {
    auto slash = target.find('/', start);
    if (slash == std::string::npos) slash = target.size();
    if (slash > start) parts.push_back(target.substr(start, slash - start));
    start = slash + 1;
  }
  try {
    if (parts.empty() || parts[0] != "sessions") return respond(req, http::status::not_found, {{"error", "NotFound"}});
    if (parts.size() == 1 && req.method() == http::verb::post) {
      json body;
      try {
        body = json::parse(req.body());
      } catch (const json::exception&) {
        throw ChatError(ChatError::Code::InvalidConfig, "body is not valid JSON");
      }
      const auto id = service.create_session(SessionConfig::from_json(body));
      return respond(req, http::status::created, {{"room", id}});
    }
    if (parts.size() == 1 && req.method() == http::verb::get) {
      json list = json::array();
      for (const auto& id : service.rooms()) list.push_back(info_json(service.info(id)));
      return respond(req, http::status::ok, list);
    }
    if (parts.size() == 2 && req.method() == http::verb::get)
      return respond(req, http::status::ok, info_json(service.info(parts[1])));
    if (parts.size() == 3 && parts[2] == "export" && req.method() == http::verb::get) {
      const auto log = service.export_log(parts[1]);
      return respond(req, http::status::ok, {{"room", log.room_id}, {"tsv", format_tsv(log)}, {"json", format_json(log)}});
    }
    if (parts.size() == 3 && parts[2] == "questionnaire" && req.method() == http::verb::post) {
      json body;
      try {
        body = json::parse(req.body());
      } catch (const json::exception&) {
        throw ChatError(ChatError::Code::ValidationError, "body is not valid JSON");
      }
      std::map<std::string, int> answers;
      if (!body.contains("name") || !body["name"].is_string() || !body.contains("answers") || !body["answers"].is_object())
        throw ChatError(ChatError::Code::ValidationError, "need 'name' and 'answers'");
      for (const auto& [item, v] : body["answers"].items()) {
        if (!v.is_number_integer()) throw ChatError(ChatError::Code::ValidationError, "answers must be integers");
        answers[item] = v.get<int>();
      }
      service.submit_questionnaire(parts[1], body["name"].get<std::string>(), answers);
      return respond(req, http::status::ok, {{"ok", true}});
    }
    return respond(req, http::status::not_found, {{"error", "NotFound"}});
  } catch (const ChatError& e) {
    return respond(req, status_for(e.code()), {{"error", to_string(e.code())}, {"message", e.what()}});
  }
}

class WsSession : public std::enable_shared_from_this<WsSession> {
 public:
  WsSession(tcp::socket socket, ChatService& service) : ws_(std::move(socket)), service_(service) {}

  void start(Request req) {
    std::weak_ptr<WsSession> weak = shared_from_this();
    endpoint_ = std::make_unique<Endpoint>(service_, [weak](const std::string& frame) {
      if (auto self = weak.lock()) self->enqueue(frame);
    });
    ws_.async_accept(req, [self = shared_from_this()](beast::error_code ec) {
      if (!ec) self->read();
    });
  }

 private:
  void read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) {
        self->endpoint_->disconnect();
        return;
      }
      const auto frame = beast::buffers_to_string(self->buffer_.data());
      self->buffer_.consume(self->buffer_.size());
      self->endpoint_->handle(frame);
      self->read();
    });
  }

  void enqueue(const std::string& frame) {
    net::post(ws_.get_executor(), [self = shared_from_this(), frame] {
      self->queue_.push_back(frame);
      if (self->queue_.size() == 1) self->write();
    });
  }

  void write() {
    ws_.text(true);
    ws_.async_write(net::buffer(queue_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return;
      self->queue_.pop_front();
      if (!self->queue_.empty()) self->write();
    });
  }

  websocket::stream<beast::tcp_stream> ws_;
  ChatService& service_;
  std::unique_ptr<Endpoint> endpoint_;
  beast::flat_buffer buffer_;
  std::deque<std::string> queue_;
};

class HttpSession : public std::enable_shared_from_this<HttpSession> {
 public:
  HttpSession(tcp::socket socket, ChatService& service) : stream_(std::move(socket)), service_(service) {}

  void start() { read(); }

 private:
  void read() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(60));
    http::async_read(stream_, buffer_, req_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return;
      self->dispatch();
    });
  }

  void dispatch() {
    if (websocket::is_upgrade(req_)) {
      if (req_.target() != "/ws") {
        reply(respond(req_, http::status::not_found, {{"error", "NotFound"}}));
        return;
      }
      stream_.expires_never();
      std::make_shared<WsSession>(stream_.release_socket(), service_)->start(std::move(req_));
      return;
    }
    reply(route(service_, req_));
  }

  void reply(Response res) {
    auto shared = std::make_shared<Response>(std::move(res));
    http::async_write(stream_, *shared, [self = shared_from_this(), shared](beast::error_code ec, std::size_t) {
      if (ec) return;
      if (shared->keep_alive()) self->read();
      else self->stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
    });
  }

  beast::tcp_stream stream_;
  ChatService& service_;
  beast::flat_buffer buffer_;
  Request req_;
};

}  // namespace

struct Server::Impl {
  ChatService& service;
  ServerOptions options;
  net::io_context io{1};
  tcp::acceptor acceptor{io};
  net::steady_timer timer{io};
  std::atomic<std::uint16_t> bound_port{0};
  std::set<std::string> exported;

  Impl(ChatService& s, ServerOptions o) : service(s), options(std::move(o)) {}

  void accept() {
    acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
      if (!ec) std::make_shared<HttpSession>(std::move(socket), service)->start();
      if (acceptor.is_open()) accept();
    });
  }

  void schedule_tick() {
    timer.expires_after(std::chrono::milliseconds(options.tick_ms));
    timer.async_wait([this](beast::error_code ec) {
      if (ec) return;
      service.tick_all();
      if (options.log_dir) export_closed();
      schedule_tick();
    });
  }

  void export_closed() {
    for (const auto& id : service.rooms()) {
      if (exported.count(id) || service.info(id).state != RoomState::Closed) continue;
      try {
        write_session_log(service.export_log(id), *options.log_dir);
        exported.insert(id);
      } catch (const std::exception& e) {
        std::cerr << "export of " << id << " failed: " << e.what() << '\n';
      }
    }
  }
};

Server::Server(ChatService& service, ServerOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {}

Server::~Server() = default;

void Server::run() {
  auto& i = *impl_;
  const tcp::endpoint ep{net::ip::make_address(i.options.address), i.options.port};
  i.acceptor.open(ep.protocol());
  i.acceptor.set_option(net::socket_base::reuse_address(true));
  i.acceptor.bind(ep);
  i.acceptor.listen();
  i.bound_port = i.acceptor.local_endpoint().port();
  i.accept();
  i.schedule_tick();
  i.io.run();
}

void Server::stop() {
  net::post(impl_->io, [this] {
    beast::error_code ec;
    impl_->acceptor.close(ec);
    impl_->timer.cancel();
    impl_->io.stop();
  });
}

std::uint16_t Server::port() const { return impl_->bound_port.load(); }

}  // namespace affect::chat
