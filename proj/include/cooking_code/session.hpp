#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cooking_code/expected.hpp"
#include "cooking_code/grading.hpp"
#include "cooking_code/kitchen_engine.hpp"
#include "cooking_code/profile_store.hpp"
#include "cooking_code/progression.hpp"

namespace cooking_code {

struct GameConfig {
    EngineConfig engine;
    std::uint64_t seed = 0;
    // Clients may send advance_ticks only in headless mode.
    bool headless = true;
    int tick_interval_ms = 1000;
    // Fixed level; unset means the per-day schedule.
    std::optional<int> difficulty;
    // Orders issued verbatim before generation takes over.
    std::vector<std::string> order_queue;
    AchievementCatalog achievements = default_catalog();
    Language language = Language::Spanish;
};

nlohmann::json game_config_to_json(const GameConfig& config);
GameConfig game_config_from_json(const nlohmann::json& doc);  // throws ConfigError
GameConfig load_game_config(const std::string& path);         // throws ConfigError

enum class CommandType : std::uint8_t {
    Join,
    Grab,
    Place,
    StartCook,
    TakeFromGrill,
    Deliver,
    RequestOrder,
    StartDay,
    AdvanceTicks,
};

std::string_view command_type_name(CommandType type);

struct ClientCommand {
    long long seq = 0;
    CommandType type = CommandType::Place;
    std::string player_id;                              // join
    Ingredient ingredient = Ingredient::BottomBread;     // grab
    int ticks = 1;                                      // advance_ticks
};

struct ProtocolError {
    std::string code;  // bad_request | unknown_type | bad_sequence | forbidden
    std::string message;
    std::optional<long long> seq;
};

Expected<ClientCommand, ProtocolError> parse_command(std::string_view line);
nlohmann::json command_to_json(const ClientCommand& command);

using ServerEvent = nlohmann::json;

/// Where a session gets and puts profiles. Either side may be empty.
struct ProfileHooks {
    std::function<std::optional<PlayerProfile>(const std::string&)> load;
    std::function<void(const PlayerProfile&)> save;
};

ProfileHooks store_hooks(ProfileStore& store);

struct LogEntry {
    std::string line;
    // What a join got from the profile store: a profile, null, or {"store_error":...}.
    std::optional<nlohmann::json> loaded_profile;
};

/// One player's game: kitchen, progression and the wire protocol around them.
/// Not thread-safe; the transport serializes calls per session.
class Session {
public:
    explicit Session(GameConfig config, ProfileHooks profiles = {}, std::string session_id = "local");

    // session_started and day_started. Call once, before anything else.
    std::vector<ServerEvent> start();
    std::vector<ServerEvent> handle_line(std::string_view line);
    std::vector<ServerEvent> handle(const ClientCommand& command);
    // Server-owned clock in live mode.
    std::vector<ServerEvent> advance_clock(int ticks);

    const GameConfig& config() const noexcept { return config_; }
    const std::string& session_id() const noexcept { return session_id_; }
    const KitchenEngine& engine() const noexcept { return engine_; }
    const PlayerStats& stats() const noexcept { return stats_; }
    const std::optional<std::string>& player_id() const noexcept { return player_id_; }
    int day_index() const noexcept { return day_offset_ + engine_.clock().day_index; }
    long long next_seq() const noexcept { return expected_seq_; }
    const std::vector<LogEntry>& log() const noexcept { return log_; }
    std::uint64_t rng_state() const noexcept { return rng_.state(); }

    nlohmann::json state_json() const;

private:
    ServerEvent stamp(ServerEvent event) const;
    ServerEvent error_event(std::string_view code, std::string_view message, std::optional<long long> seq) const;
    void append_engine_events(const std::vector<EngineEvent>& events, std::vector<ServerEvent>& out);
    void issue_next_order(std::vector<ServerEvent>& out);
    void on_day_ended(std::vector<ServerEvent>& out);
    void persist();

    std::vector<ServerEvent> join(const ClientCommand& command);
    std::vector<ServerEvent> deliver(const ClientCommand& command);

    GameConfig config_;
    ProfileHooks profiles_;
    std::string session_id_;
    KitchenEngine engine_;
    SplitMix64 rng_;
    PlayerStats stats_;
    std::optional<PlayerProfile> profile_;
    std::optional<std::string> player_id_;
    int day_offset_ = 0;
    long long expected_seq_ = 1;
    bool game_started_ = false;  // any non-join command applied
    std::size_t queue_pos_ = 0;
    int orders_issued_ = 0;
    std::vector<LogEntry> log_;
    std::optional<std::size_t> current_line_;  // log entry being handled
};

}  // namespace cooking_code
