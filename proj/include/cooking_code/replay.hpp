#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cooking_code/session.hpp"

namespace cooking_code {

inline constexpr int kSessionLogVersion = 1;

class ReplayMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything needed to rebuild a session: its config (seed included), the
/// raw command lines in arrival order, and a digest of the events produced.
struct SessionLog {
    int version = kSessionLogVersion;
    GameConfig config;
    std::string session_id = "local";
    std::vector<LogEntry> entries;
    std::size_t event_count = 0;
    std::string event_digest;
};

std::string event_stream_digest(const std::vector<ServerEvent>& events);
// One compact JSON document per line, as sent on the wire.
std::string event_stream_text(const std::vector<ServerEvent>& events);

SessionLog make_log(const Session& session, const std::vector<ServerEvent>& events);

// Newline-delimited JSON: header, one line per command, trailer.
std::string write_log(const SessionLog& log);
// Throws ReplayMismatch for a foreign version or a header whose fingerprint
// no longer matches (e.g. an edited seed).
SessionLog read_log(std::string_view text);

struct ReplayResult {
    std::vector<ServerEvent> events;
    nlohmann::json final_state;
};

// Re-runs the log; throws ReplayMismatch when the recorded digest differs.
ReplayResult record_and_replay(const SessionLog& log);

}  // namespace cooking_code
