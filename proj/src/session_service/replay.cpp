#include "cooking_code/replay.hpp"

#include <sstream>

#include <fmt/format.h>

#include "cooking_code/checksum.hpp"

namespace cooking_code {

using nlohmann::json;

namespace {

std::string fingerprint(int version, const json& config, std::uint64_t seed, const std::string& session_id) {
    return crc32_tag(fmt::format("{}|{}|{}|{}", version, config.dump(), seed, session_id));
}

StoreErrorKind store_error_kind(const std::string& tag) {
    return tag == "corrupt" ? StoreErrorKind::Corrupt : StoreErrorKind::Io;
}

}  // namespace

std::string event_stream_text(const std::vector<ServerEvent>& events) {
    std::string out;
    for (const ServerEvent& e : events) {
        out += e.dump();
        out += '\n';
    }
    return out;
}

std::string event_stream_digest(const std::vector<ServerEvent>& events) {
    return crc32_tag(event_stream_text(events));
}

SessionLog make_log(const Session& session, const std::vector<ServerEvent>& events) {
    SessionLog log;
    log.config = session.config();
    log.session_id = session.session_id();
    log.entries = session.log();
    log.event_count = events.size();
    log.event_digest = event_stream_digest(events);
    return log;
}

std::string write_log(const SessionLog& log) {
    const json config = game_config_to_json(log.config);
    std::string out = json{{"type", "session_log"},
                           {"version", log.version},
                           {"config", config},
                           {"seed", log.config.seed},
                           {"session_id", log.session_id},
                           {"fingerprint", fingerprint(log.version, config, log.config.seed, log.session_id)}}
                          .dump();
    out += '\n';
    for (const LogEntry& entry : log.entries) {
        json line = {{"line", entry.line}};
        if (entry.loaded_profile) line["profile"] = *entry.loaded_profile;
        out += line.dump();
        out += '\n';
    }
    out += json{{"type", "log_end"}, {"event_count", log.event_count}, {"event_digest", log.event_digest}}.dump();
    out += '\n';
    return out;
}

SessionLog read_log(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    SessionLog log;
    bool have_header = false;
    bool have_trailer = false;
    while (std::getline(in, raw)) {
        if (raw.empty()) continue;
        json doc = json::parse(raw, nullptr, false);
        if (doc.is_discarded() || !doc.is_object()) throw ReplayMismatch("session log line is not JSON");
        if (!have_header) {
            if (doc.value("type", "") != "session_log") throw ReplayMismatch("missing session log header");
            log.version = doc.value("version", -1);
            if (log.version != kSessionLogVersion)
                throw ReplayMismatch(fmt::format("log version {} is not supported (expected {})", log.version,
                                                 kSessionLogVersion));
            const json& config = doc.at("config");
            const std::uint64_t seed = doc.at("seed").get<std::uint64_t>();
            log.session_id = doc.value("session_id", "local");
            if (doc.value("fingerprint", "") != fingerprint(log.version, config, seed, log.session_id))
                throw ReplayMismatch("log header does not match its fingerprint (config or seed edited)");
            try {
                log.config = game_config_from_json(config);
            } catch (const ConfigError& e) {
                throw ReplayMismatch(std::string("log config rejected: ") + e.what());
            }
            if (log.config.seed != seed) throw ReplayMismatch("log seed disagrees with its config");
            have_header = true;
        } else if (doc.value("type", "") == "log_end") {
            log.event_count = doc.at("event_count").get<std::size_t>();
            log.event_digest = doc.at("event_digest").get<std::string>();
            have_trailer = true;
        } else {
            if (have_trailer) throw ReplayMismatch("command after log trailer");
            LogEntry entry{doc.at("line").get<std::string>(), std::nullopt};
            if (doc.contains("profile")) entry.loaded_profile = doc.at("profile");
            log.entries.push_back(std::move(entry));
        }
    }
    if (!have_header) throw ReplayMismatch("empty session log");
    return log;
}

ReplayResult record_and_replay(const SessionLog& log) {
    const LogEntry* current = nullptr;
    ProfileHooks hooks;
    hooks.load = [&current](const std::string&) -> std::optional<PlayerProfile> {
        if (!current || !current->loaded_profile || current->loaded_profile->is_null()) return std::nullopt;
        const json& recorded = *current->loaded_profile;
        if (recorded.contains("store_error"))
            throw StoreError(store_error_kind(recorded.at("store_error").get<std::string>()),
                             recorded.value("message", "store error"));
        return profile_from_json(recorded);
    };

    Session session(log.config, std::move(hooks), log.session_id);
    ReplayResult result;
    result.events = session.start();
    for (const LogEntry& entry : log.entries) {
        current = &entry;
        auto events = session.handle_line(entry.line);
        result.events.insert(result.events.end(), events.begin(), events.end());
    }
    current = nullptr;
    if (!log.event_digest.empty()) {
        if (result.events.size() != log.event_count || event_stream_digest(result.events) != log.event_digest)
            throw ReplayMismatch(fmt::format("replay produced {} events with digest {}, log recorded {} with {}",
                                             result.events.size(), event_stream_digest(result.events),
                                             log.event_count, log.event_digest));
    }
    result.final_state = session.state_json();
    return result;
}

}  // namespace cooking_code
