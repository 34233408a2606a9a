#include "cooking_code/session.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace cooking_code {

using nlohmann::json;

namespace {

constexpr int kMaxAdvance = 1'000'000;

constexpr std::array<std::string_view, 9> kCommandNames = {
    "join", "grab", "place", "start_cook", "take_from_grill", "deliver", "request_order", "start_day", "advance_ticks",
};

long long unix_now() {
    using namespace std::chrono;
    return duration_cast<seconds>(system_clock::now().time_since_epoch()).count();
}

json item_json(const KitchenItem& item) {
    return {{"ingredient", canonical_token(item.ingredient)}, {"cook", cook_phase_name(item.cook)}};
}

std::string_view language_code(Language language) { return language == Language::Spanish ? "es" : "en"; }

}  // namespace

std::string_view command_type_name(CommandType type) { return kCommandNames[static_cast<std::size_t>(type)]; }

json game_config_to_json(const GameConfig& config) {
    json doc = engine_config_to_json(config.engine);
    doc["seed"] = config.seed;
    doc["headless"] = config.headless;
    doc["tick_interval_ms"] = config.tick_interval_ms;
    doc["difficulty"] = config.difficulty ? json(*config.difficulty) : json(nullptr);
    doc["order_queue"] = config.order_queue;
    doc["achievements"] = catalog_to_json(config.achievements);
    doc["language"] = language_code(config.language);
    return doc;
}

GameConfig game_config_from_json(const json& doc) {
    GameConfig config;
    config.engine = engine_config_from_json(doc);
    try {
        if (doc.contains("seed")) {
            if (!doc.at("seed").is_number_integer() || doc.at("seed").is_number_float())
                throw ConfigError("seed must be an integer");
            config.seed = doc.at("seed").get<std::uint64_t>();
        }
        if (doc.contains("headless")) config.headless = doc.at("headless").get<bool>();
        if (doc.contains("tick_interval_ms")) {
            config.tick_interval_ms = doc.at("tick_interval_ms").get<int>();
            if (config.tick_interval_ms < 1) throw ConfigError("tick_interval_ms must be positive");
        }
        if (doc.contains("difficulty") && !doc.at("difficulty").is_null()) {
            const int level = doc.at("difficulty").get<int>();
            if (level < 1 || level > 3) throw ConfigError("difficulty must be 1, 2 or 3");
            config.difficulty = level;
        }
        if (doc.contains("order_queue")) {
            config.order_queue = doc.at("order_queue").get<std::vector<std::string>>();
            for (const auto& text : config.order_queue) {
                try {
                    (void)parse(text);
                } catch (const ParseError& e) {
                    throw ConfigError(std::string("order_queue: ") + e.what());
                }
            }
        }
        if (doc.contains("achievements")) config.achievements = catalog_from_json(doc.at("achievements"));
        if (doc.contains("language")) {
            auto language = language_from_code(doc.at("language").get<std::string>());
            if (!language) throw ConfigError("language must be 'es' or 'en'");
            config.language = *language;
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return config;
}

GameConfig load_game_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return game_config_from_json(doc);
}

Expected<ClientCommand, ProtocolError> parse_command(std::string_view line) {
    json doc = json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) return Unexpected{ProtocolError{"bad_request", "malformed JSON", {}}};
    if (!doc.contains("seq") || !doc.at("seq").is_number_integer() || doc.at("seq").get<long long>() < 1)
        return Unexpected{ProtocolError{"bad_request", "missing or invalid 'seq'", {}}};
    ClientCommand command;
    command.seq = doc.at("seq").get<long long>();
    auto reject = [&](std::string code, std::string message) {
        return Unexpected{ProtocolError{std::move(code), std::move(message), command.seq}};
    };
    if (!doc.contains("type") || !doc.at("type").is_string()) return reject("bad_request", "missing 'type'");
    const std::string type = doc.at("type").get<std::string>();
    const auto it = std::find(kCommandNames.begin(), kCommandNames.end(), type);
    if (it == kCommandNames.end()) return reject("unknown_type", "unknown command type '" + type + "'");
    command.type = static_cast<CommandType>(it - kCommandNames.begin());

    switch (command.type) {
        case CommandType::Join: {
            if (!doc.contains("player_id") || !doc.at("player_id").is_string())
                return reject("bad_request", "join needs 'player_id'");
            command.player_id = doc.at("player_id").get<std::string>();
            if (!valid_player_id(command.player_id)) return reject("bad_request", "invalid 'player_id'");
            break;
        }
        case CommandType::Grab: {
            if (!doc.contains("ingredient") || !doc.at("ingredient").is_string())
                return reject("bad_request", "grab needs 'ingredient'");
            const std::string name = doc.at("ingredient").get<std::string>();
            auto ingredient = ingredient_from_token(name);
            if (!ingredient) return reject("bad_request", "unknown ingredient '" + name + "'");
            command.ingredient = *ingredient;
            break;
        }
        case CommandType::AdvanceTicks: {
            if (!doc.contains("n") || !doc.at("n").is_number_integer())
                return reject("bad_request", "advance_ticks needs integer 'n'");
            const long long n = doc.at("n").get<long long>();
            if (n < 1 || n > kMaxAdvance) return reject("bad_request", "'n' out of range");
            command.ticks = static_cast<int>(n);
            break;
        }
        default:
            break;
    }
    return command;
}

json command_to_json(const ClientCommand& command) {
    json doc = {{"seq", command.seq}, {"type", command_type_name(command.type)}};
    if (command.type == CommandType::Join) doc["player_id"] = command.player_id;
    if (command.type == CommandType::Grab) doc["ingredient"] = canonical_token(command.ingredient);
    if (command.type == CommandType::AdvanceTicks) doc["n"] = command.ticks;
    return doc;
}

ProfileHooks store_hooks(ProfileStore& store) {
    ProfileHooks hooks;
    hooks.load = [&store](const std::string& id) -> std::optional<PlayerProfile> {
        try {
            return store.load(id);
        } catch (const StoreError& e) {
            if (e.kind() == StoreErrorKind::NotFound) return std::nullopt;
            throw;
        }
    };
    hooks.save = [&store](const PlayerProfile& profile) { store.save(profile); };
    return hooks;
}

Session::Session(GameConfig config, ProfileHooks profiles, std::string session_id)
    : config_(std::move(config)),
      profiles_(std::move(profiles)),
      session_id_(std::move(session_id)),
      engine_(config_.engine),
      rng_(config_.seed) {}

ServerEvent Session::stamp(ServerEvent event) const {
    event["tick"] = engine_.total_ticks();
    return event;
}

ServerEvent Session::error_event(std::string_view code, std::string_view message,
                                 std::optional<long long> seq) const {
    return stamp({{"type", "error"},
                  {"code", code},
                  {"message", message},
                  {"seq", seq ? json(*seq) : json(nullptr)}});
}

std::vector<ServerEvent> Session::start() {
    stats_ = begin_day(std::move(stats_), day_index());
    return {
        stamp({{"type", "session_started"},
               {"session_id", session_id_},
               {"seed", config_.seed},
               {"headless", config_.headless},
               {"language", language_code(config_.language)}}),
        stamp({{"type", "day_started"},
               {"day_index", day_index()},
               {"inventory", snapshot_to_json(engine_.inventory().current())}}),
    };
}

std::vector<ServerEvent> Session::handle_line(std::string_view line) {
    log_.push_back({std::string(line), std::nullopt});
    auto command = parse_command(line);
    if (!command) {
        const ProtocolError& err = command.error();
        return {error_event(err.code, err.message, err.seq)};
    }
    current_line_ = log_.size() - 1;
    auto events = handle(*command);
    current_line_.reset();
    return events;
}

void Session::append_engine_events(const std::vector<EngineEvent>& events, std::vector<ServerEvent>& out) {
    for (const EngineEvent& e : events) {
        switch (e.kind) {
            case EngineEventKind::InventoryChanged:
                out.push_back({{"type", "inventory_update"},
                               {"ingredient", canonical_token(e.ingredient)},
                               {"count", e.count},
                               {"tick", e.tick}});
                break;
            case EngineEventKind::DayEnded:
                out.push_back({{"type", "day_ended"}, {"day_index", day_offset_ + e.day_index}, {"tick", e.tick}});
                on_day_ended(out);
                break;
            default: {
                json event = {{"type", "cook_event"}, {"event", event_kind_name(e.kind)}, {"tick", e.tick}};
                if (e.kind == EngineEventKind::CookProgress) event["fraction"] = e.fraction;
                out.push_back(std::move(event));
                break;
            }
        }
    }
}

void Session::persist() {
    if (!player_id_ || !profile_ || !profiles_.save) return;
    profile_->stats = stats_;
    profile_->updated_at = unix_now();
    profiles_.save(*profile_);
}

void Session::on_day_ended(std::vector<ServerEvent>& out) {
    auto update = close_day(std::move(stats_), config_.achievements, {day_index(), engine_.total_ticks()});
    stats_ = std::move(update.stats);
    for (const auto& def : update.unlocked) {
        out.push_back(stamp({{"type", "achievement_unlocked"},
                             {"id", def.id},
                             {"title", def.title(config_.language)}}));
    }
    json summary = summary_to_json(day_summary(stats_, day_index()));
    summary["type"] = "day_summary";
    out.push_back(stamp(std::move(summary)));
    try {
        persist();
    } catch (const StoreError& e) {
        out.push_back(error_event("profile_save_failed", e.what(), std::nullopt));
    }
}

void Session::issue_next_order(std::vector<ServerEvent>& out) {
    if (!engine_.day_active() || engine_.active_order()) return;
    OrderAst order;
    int level = 0;
    if (queue_pos_ < config_.order_queue.size()) {
        order = parse(config_.order_queue[queue_pos_++]);
    } else {
        const Difficulty difficulty = config_.difficulty ? Difficulty(*config_.difficulty)
                                                         : scheduled_difficulty(day_index());
        level = difficulty.level();
        auto generated = generate_order(difficulty, engine_.inventory().current(), rng_);
        if (!generated) {
            out.push_back(error_event("generation_failed", "the pantry cannot support another order", std::nullopt));
            return;
        }
        order = std::move(generated).value();
    }
    order.order_id = fmt::format("d{}-o{}", day_index(), ++orders_issued_);
    json event = {{"type", "order_issued"},
                  {"order_id", order.order_id},
                  {"order_text", render(order, config_.language)},
                  {"order_ast", ast_to_json(order)},
                  {"snapshot", snapshot_to_json(engine_.inventory().current())},
                  {"difficulty", level == 0 ? json(nullptr) : json(level)}};
    if (auto issued = engine_.issue_order(std::move(order)); !issued) {
        out.push_back(error_event(error_code(issued.error()), error_description(issued.error()), std::nullopt));
        return;
    }
    out.push_back(stamp(std::move(event)));
}

std::vector<ServerEvent> Session::join(const ClientCommand& command) {
    if (player_id_ || game_started_) {
        ++expected_seq_;
        return {player_id_ ? error_event("already_joined", "this session already has a player", command.seq)
                           : error_event("join_late", "join must come before any game command", command.seq)};
    }
    std::optional<PlayerProfile> loaded;
    if (profiles_.load) {
        try {
            loaded = profiles_.load(command.player_id);
        } catch (const StoreError& e) {
            ++expected_seq_;
            const bool corrupt = e.kind() == StoreErrorKind::Corrupt;
            if (current_line_)
                log_[*current_line_].loaded_profile =
                    json{{"store_error", corrupt ? "corrupt" : "io"}, {"message", e.what()}};
            return {error_event(corrupt ? "profile_corrupt" : "profile_unavailable", e.what(), command.seq)};
        }
    }
    if (current_line_) log_[*current_line_].loaded_profile = loaded ? profile_to_json(*loaded) : json(nullptr);
    ++expected_seq_;
    if (loaded) {
        profile_ = std::move(loaded);
        stats_ = profile_->stats;
        for (const DayRecord& day : stats_.days) day_offset_ = std::max(day_offset_, day.day_index + 1);
    } else {
        const long long now = unix_now();
        profile_ = PlayerProfile{command.player_id, {}, now, now};
        stats_ = PlayerStats{};
    }
    player_id_ = command.player_id;
    stats_ = begin_day(std::move(stats_), day_index());
    json achievements = json::array();
    for (const Unlock& u : stats_.achievements) achievements.push_back(u.id);
    return {stamp({{"type", "joined"},
                   {"player_id", command.player_id},
                   {"xp", stats_.xp},
                   {"day_index", day_index()},
                   {"achievements", achievements}})};
}

std::vector<ServerEvent> Session::deliver(const ClientCommand& command) {
    auto request = engine_.deliver();
    if (!request) return {error_event(error_code(request.error()), error_description(request.error()), command.seq)};
    std::vector<ServerEvent> out;
    const GradeReport report = grade(*request, config_.language);
    auto update = record_grade(report, request->order, std::move(stats_), config_.achievements,
                               {day_index(), engine_.total_ticks()});
    stats_ = std::move(update.stats);
    const DayRecord* today = stats_.day(day_index());
    out.push_back(stamp({{"type", "grade_result"},
                         {"order_id", request->order.order_id},
                         {"report", report_to_json(report)},
                         {"xp", stats_.xp},
                         {"day_score", today ? today->score : 0}}));
    for (const auto& def : update.unlocked) {
        out.push_back(stamp({{"type", "achievement_unlocked"},
                             {"id", def.id},
                             {"title", def.title(config_.language)}}));
    }
    try {
        persist();
    } catch (const StoreError& e) {
        out.push_back(error_event("profile_save_failed", e.what(), std::nullopt));
    }
    issue_next_order(out);
    return out;
}

std::vector<ServerEvent> Session::handle(const ClientCommand& command) {
    if (command.seq != expected_seq_) {
        return {error_event("bad_sequence", fmt::format("expected seq {}", expected_seq_), command.seq)};
    }
    if (command.type == CommandType::Join) return join(command);
    if (command.type == CommandType::AdvanceTicks && !config_.headless)
        return {error_event("forbidden", "the server owns the clock", command.seq)};

    ++expected_seq_;
    game_started_ = true;
    auto rule_error = [&](EngineError e) {
        return std::vector<ServerEvent>{error_event(error_code(e), error_description(e), command.seq)};
    };
    std::vector<ServerEvent> out;
    switch (command.type) {
        case CommandType::Grab: {
            auto held = engine_.grab(command.ingredient);
            if (!held) return rule_error(held.error());
            append_engine_events(engine_.take_events(), out);
            break;
        }
        case CommandType::Place: {
            auto stack = engine_.place_on_plate();
            if (!stack) return rule_error(stack.error());
            json items = json::array();
            for (const auto& item : stack->items) items.push_back(item_json(item));
            out.push_back(stamp({{"type", "plate_update"}, {"items", items}}));
            break;
        }
        case CommandType::StartCook: {
            auto ok = engine_.start_cook();
            if (!ok) return rule_error(ok.error());
            append_engine_events(engine_.take_events(), out);
            break;
        }
        case CommandType::TakeFromGrill: {
            auto held = engine_.take_from_grill();
            if (!held) return rule_error(held.error());
            out.push_back(stamp({{"type", "hand_update"}, {"item", item_json(*held)}}));
            break;
        }
        case CommandType::Deliver:
            return deliver(command);
        case CommandType::RequestOrder:
            if (!engine_.day_active()) return rule_error(EngineError::NoActiveDay);
            if (engine_.active_order()) return rule_error(EngineError::OrderAlreadyActive);
            issue_next_order(out);
            break;
        case CommandType::StartDay: {
            auto ok = engine_.start_day();
            if (!ok) return rule_error(ok.error());
            stats_ = begin_day(std::move(stats_), day_index());
            out.push_back(stamp({{"type", "day_started"},
                                 {"day_index", day_index()},
                                 {"inventory", snapshot_to_json(engine_.inventory().current())}}));
            break;
        }
        case CommandType::AdvanceTicks:
            append_engine_events(engine_.tick(command.ticks), out);
            break;
        case CommandType::Join:
            break;
    }
    return out;
}

std::vector<ServerEvent> Session::advance_clock(int ticks) {
    std::vector<ServerEvent> out;
    if (ticks >= 1) append_engine_events(engine_.tick(ticks), out);
    return out;
}

json Session::state_json() const {
    json achievements = json::array();
    for (const Unlock& u : stats_.achievements) achievements.push_back(u.id);
    const auto grill = engine_.grill_item();
    return {
        {"day_index", day_index()},
        {"tick", engine_.clock().tick},
        {"total_ticks", engine_.total_ticks()},
        {"day_active", engine_.day_active()},
        {"inventory", snapshot_to_json(engine_.inventory().current())},
        {"held", engine_.held() ? item_json(*engine_.held()) : json(nullptr)},
        {"plate", stack_to_json(engine_.plate())},
        {"grill", grill ? item_json(*grill) : json(nullptr)},
        {"active_order", engine_.active_order() ? ast_to_json(*engine_.active_order()) : json(nullptr)},
        {"player_id", player_id_ ? json(*player_id_) : json(nullptr)},
        {"xp", stats_.xp},
        {"achievements", achievements},
        {"next_seq", expected_seq_},
        {"rng_state", rng_.state()},
    };
}

}  // namespace cooking_code
