#include "affect/chat/local.hpp"

#include <istream>
#include <map>
#include <memory>
#include <ostream>

#include "affect/chat/protocol.hpp"
#include "affect/chat/service.hpp"
#include "affect/util/text.hpp"
#include "json.hpp"

namespace affect::chat {

using nlohmann::json;

LocalRunResult run_local(const perception::Perceiver& perceiver, const std::string& data_dir,
                         const LocalRunOptions& options, std::istream& in, std::ostream& out) {
  ManualClock clock(options.start_epoch_s * 1000);
  ChatService service(perceiver, data_dir, clock);
  LocalRunResult result;
  result.room = service.create_session(options.config);

  std::map<std::string, std::unique_ptr<Endpoint>> endpoints;
  const auto endpoint_for = [&](const std::string& name) -> Endpoint& {
    auto& ep = endpoints[name];
    if (!ep)
      ep = std::make_unique<Endpoint>(service, [&out, name](const std::string& frame) {
        auto j = json::parse(frame);
        j["to"] = name;
        out << j.dump() << '\n';
      });
    return *ep;
  };
  const auto fail = [&](std::string_view code, std::string_view message) { out << error_frame(code, message) << '\n'; };
  const auto advance = [&](std::int64_t seconds) {
    for (std::int64_t s = 0; s < seconds; ++s) {
      clock.advance(1000);
      service.tick(result.room);
    }
  };

  std::string line;
  while (std::getline(in, line)) {
    if (text::trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception&) {
      fail("BadRequest", "frame is not valid JSON");
      continue;
    }
    if (!j.is_object() || !j.contains("op") || !j["op"].is_string()) {
      fail("BadRequest", "frame needs a string 'op'");
      continue;
    }
    const auto op = j["op"].get<std::string>();
    if (op == "advance") {
      if (!j.contains("seconds") || !j["seconds"].is_number_integer() || j["seconds"].get<std::int64_t>() < 0) {
        fail("BadRequest", "advance needs non-negative integer 'seconds'");
        continue;
      }
      advance(j["seconds"].get<std::int64_t>());
      continue;
    }
    if (!j.contains("name") || !j["name"].is_string()) {
      fail("BadRequest", "frames need the member 'name'");
      continue;
    }
    // There is exactly one room; clients may omit it.
    j["room"] = result.room;
    endpoint_for(j["name"].get<std::string>()).handle(j.dump());
  }

  if (options.close_at_eof && service.info(result.room).state == RoomState::Running)
    advance(service.info(result.room).remaining_s + 1);

  result.closed = service.info(result.room).state == RoomState::Closed;
  if (result.closed) {
    result.log = service.export_log(result.room);
    if (options.export_dir) write_session_log(*result.log, *options.export_dir);
  }
  return result;
}

}  // namespace affect::chat
