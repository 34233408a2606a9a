#include "cooking_code/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "cooking_code/replay.hpp"
#include "cooking_code/server.hpp"

namespace cooking_code::cli {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(" \t\r\n");
    return std::string(text.substr(first, last - first + 1));
}

json read_json_file(const std::string& path) {
    json doc = json::parse(read_file(path), nullptr, false);
    if (doc.is_discarded()) throw AstFormatError("'" + path + "' is not valid JSON");
    return doc;
}

// Order files hold either DSL text or a JSON AST.
OrderAst read_order(const std::string& path) {
    const std::string text = read_file(path);
    const std::string body = trim(text);
    if (!body.empty() && body.front() == '{') {
        json doc = json::parse(body, nullptr, false);
        if (doc.is_discarded()) throw AstFormatError("'" + path + "' is not valid JSON");
        return ast_from_json(doc);
    }
    return parse(text);
}

}  // namespace

GameConfig resolve_config(const CommonOptions& common) {
    GameConfig config = common.config_path ? load_game_config(*common.config_path) : GameConfig{};
    if (common.seed) config.seed = *common.seed;
    if (common.language) config.language = *common.language;
    return config;
}

std::vector<std::string> read_action_script(const std::string& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::exception& e) {
        throw ScriptError(e.what());
    }
    std::istringstream in(text);
    std::vector<std::string> lines;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        auto command = parse_command(line);
        if (!command) throw ScriptError(fmt::format("{}:{}: {}", path, line_no, command.error().message));
        const long long expected = static_cast<long long>(lines.size()) + 1;
        if (command->seq != expected)
            throw ScriptError(
                fmt::format("{}:{}: seq {} breaks the sequence (expected {})", path, line_no, command->seq, expected));
        lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> read_station_script(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<std::string> visits;
    std::string raw;
    while (std::getline(in, raw)) {
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (!line.empty()) visits.push_back(std::move(line));
    }
    return visits;
}

LayoutConfig resolve_layout(const std::string& preset_or_path) {
    const auto presets = layout_preset_names();
    if (std::find(presets.begin(), presets.end(), preset_or_path) != presets.end())
        return layout_preset(preset_or_path);
    std::ifstream probe(preset_or_path);
    if (!probe) throw LayoutError("unknown layout preset '" + preset_or_path + "'");
    try {
        return layout_from_json(read_json_file(preset_or_path));
    } catch (const LayoutError&) {
        throw;
    } catch (const std::exception& e) {
        throw LayoutError("layout '" + preset_or_path + "': " + e.what());
    }
}

int simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err) {
    GameConfig config;
    try {
        config = resolve_config(options.common);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    std::vector<std::string> script;
    try {
        script = read_action_script(options.script_path);
    } catch (const ScriptError& e) {
        err << "script error: " << e.what() << '\n';
        return kExitScript;
    }
    try {
        Session session(config);
        std::vector<ServerEvent> events = session.start();
        for (const std::string& line : script) {
            auto produced = session.handle_line(line);
            events.insert(events.end(), produced.begin(), produced.end());
        }
        out << event_stream_text(events);
        if (options.record_path) {
            std::ofstream log(*options.record_path, std::ios::binary | std::ios::trunc);
            log << write_log(make_log(session, events));
            if (!log) {
                err << "cannot write log '" << *options.record_path << "'\n";
                return kExitPanic;
            }
        }
    } catch (const std::exception& e) {
        err << "engine failure: " << e.what() << '\n';
        return kExitPanic;
    }
    return kExitOk;
}

int generate_orders(const GenerateOptions& options, std::ostream& out, std::ostream& err) {
    if (options.count < 1) {
        err << "--count must be at least 1\n";
        return kExitUsage;
    }
    if (options.difficulty < 1 || options.difficulty > 3) {
        err << "--difficulty must be 1, 2 or 3\n";
        return kExitUsage;
    }
    GameConfig config;
    InventorySnapshot snapshot;
    try {
        config = resolve_config(options.common);
        snapshot = config.engine.initial_inventory;
        if (options.inventory_path) snapshot = snapshot_from_json(read_json_file(*options.inventory_path), true);
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    SplitMix64 rng(config.seed);
    const Difficulty difficulty(options.difficulty);
    std::string buffer;
    for (int i = 0; i < options.count; ++i) {
        auto order = generate_order(difficulty, snapshot, rng);
        if (!order) {
            err << "inventory cannot support a level " << options.difficulty << " order\n";
            return kExitPanic;
        }
        buffer += ast_to_json(*order).dump();
        buffer += '\n';
    }
    out << buffer;
    return kExitOk;
}

int validate(const ValidateOptions& options, std::ostream& out, std::ostream& err) {
    GradeRequest request;
    GameConfig config;
    try {
        config = resolve_config(options.common);
        request.order = read_order(options.order_path);
        request.delivered = stack_from_json(read_json_file(options.stack_path));
        request.delivered.delivered = true;
        request.snapshot = options.snapshot_path ? snapshot_from_json(read_json_file(*options.snapshot_path), true)
                                                 : config.engine.initial_inventory;
    } catch (const ParseError& e) {
        err << options.order_path << ": " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << e.what() << '\n';
        return kExitConfig;
    }
    const GradeReport report = grade(request, config.language);
    out << report_to_json(report).dump() << '\n';
    return report.category == FeedbackCategory::Correct ? kExitOk : kExitNotCorrect;
}

int layout_cost(const LayoutCostOptions& options, std::ostream& out, std::ostream& err) {
    if (options.layouts.empty() || options.layouts.size() > 2) {
        err << "give one or two --layout values\n";
        return kExitUsage;
    }
    std::vector<std::string> visits;
    std::vector<double> costs;
    try {
        visits = read_station_script(options.script_path);
        for (const std::string& name : options.layouts) costs.push_back(travel_cost(visits, resolve_layout(name)));
    } catch (const LayoutError& e) {
        err << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << e.what() << '\n';
        return kExitConfig;
    }
    for (std::size_t i = 0; i < costs.size(); ++i)
        out << json{{"layout", options.layouts[i]}, {"travel_cost", costs[i]}, {"visits", visits.size()}}.dump()
            << '\n';
    if (costs.size() == 2) out << json{{"delta", costs[1] - costs[0]}}.dump() << '\n';
    return kExitOk;
}

int replay(const ReplayOptions& options, std::ostream& out, std::ostream& err) {
    SessionLog log;
    try {
        log = read_log(read_file(options.log_path));
    } catch (const ReplayMismatch& e) {
        err << "replay rejected: " << e.what() << '\n';
        return kExitReplayMismatch;
    } catch (const std::exception& e) {
        err << e.what() << '\n';
        return kExitConfig;
    }
    try {
        const ReplayResult result = record_and_replay(log);
        out << event_stream_text(result.events);
    } catch (const ReplayMismatch& e) {
        err << "replay diverged: " << e.what() << '\n';
        return kExitReplayMismatch;
    } catch (const std::exception& e) {
        err << "engine failure: " << e.what() << '\n';
        return kExitPanic;
    }
    return kExitOk;
}

int serve(const ServeOptions& options, std::istream& in, std::ostream& out, std::ostream& err) {
    GameConfig config;
    try {
        config = resolve_config(options.common);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    try {
        if (options.stdio) {
            ProfileStore store(ProfileStore::directory_from_env());
            return serve_stdio(config, store, in, out);
        }
        ServerOptions server_options;
        server_options.address = options.address;
        server_options.port = options.port;
        server_options.config = config;
        SessionServer server(std::move(server_options));
        err << "listening on ws://" << options.address << ':' << server.port() << std::endl;
        server.run();
    } catch (const std::exception& e) {
        err << "server failure: " << e.what() << '\n';
        return kExitPanic;
    }
    return kExitOk;
}

}  // namespace cooking_code::cli
