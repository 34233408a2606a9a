#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cooking_code/session.hpp"

namespace cooking_code::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,  // also: validate parse failures
    kExitScript = 2,
    kExitPanic = 3,
    kExitNotCorrect = 4,
    kExitReplayMismatch = 5,
    kExitUsage = 64,
};

class ScriptError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shared flags. Overrides apply on top of the config file (or the defaults).
struct CommonOptions {
    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<Language> language;
};

GameConfig resolve_config(const CommonOptions& common);  // throws ConfigError

// One ClientCommand JSON per line; blank lines and '#' lines are skipped.
// Throws ScriptError on a malformed command or a gap in seq.
std::vector<std::string> read_action_script(const std::string& path);
// One station name per line, '#' comments allowed.
std::vector<std::string> read_station_script(const std::string& path);
// Preset name or path to a layout JSON. Throws LayoutError / ConfigError.
LayoutConfig resolve_layout(const std::string& preset_or_path);

struct SimulateOptions {
    CommonOptions common;
    std::string script_path;
    std::optional<std::string> record_path;
};

struct GenerateOptions {
    CommonOptions common;
    int difficulty = 1;
    int count = 1;
    std::optional<std::string> inventory_path;
};

struct ValidateOptions {
    CommonOptions common;
    std::string order_path;
    std::string stack_path;
    std::optional<std::string> snapshot_path;
};

struct LayoutCostOptions {
    std::vector<std::string> layouts;
    std::string script_path;
};

struct ReplayOptions {
    std::string log_path;
};

struct ServeOptions {
    CommonOptions common;
    unsigned short port = 8080;
    std::string address = "127.0.0.1";
    bool stdio = false;
};

int simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err);
int generate_orders(const GenerateOptions& options, std::ostream& out, std::ostream& err);
int validate(const ValidateOptions& options, std::ostream& out, std::ostream& err);
int layout_cost(const LayoutCostOptions& options, std::ostream& out, std::ostream& err);
int replay(const ReplayOptions& options, std::ostream& out, std::ostream& err);
int serve(const ServeOptions& options, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace cooking_code::cli
