#pragma once

// Stdio adapter: a scripted client drives one room through JSON lines on
// an input stream, with a manual clock, and every frame a member receives
// is written to the output stream tagged with "to".
//
// Extra input ops on top of the wire protocol:
//   {"op":"advance","seconds":S}   move the clock forward, ticking each second
// "say" and "questionnaire" frames carry the speaking member in "name".

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "affect/chat/session_log.hpp"
#include "affect/perception/perceive.hpp"

namespace affect::chat {

struct LocalRunOptions {
  SessionConfig config;
  /// Clock start (seconds since epoch); fixed so transcripts are reproducible.
  std::int64_t start_epoch_s = 1735689600;
  /// Advance the clock to the end of the session when input runs out.
  bool close_at_eof = true;
  /// Write `<room>.tsv` / `<room>.json` here once the room is closed.
  std::optional<std::string> export_dir;
};

struct LocalRunResult {
  std::string room;
  bool closed = false;
  std::optional<SessionLog> log;
};

LocalRunResult run_local(const perception::Perceiver& perceiver, const std::string& data_dir,
                         const LocalRunOptions& options, std::istream& in, std::ostream& out);

}  // namespace affect::chat
