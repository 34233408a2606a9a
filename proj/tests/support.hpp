#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cooking_code/session.hpp"

namespace testing {

using namespace cooking_code;

// Fuzz ASTs independent of the order generator. Repeat counts 0..4.
OrderAst fuzz_order(SplitMix64& rng, int max_depth = 3);
InventorySnapshot random_snapshot(SplitMix64& rng, int max_count = 3);

// Enumerates every assignment of the If nodes (pre-order) and keeps the one
// agreeing with the snapshot. `flip` inverts one If in the chosen assignment.
ExpectedStack oracle_expand(const OrderAst& order, const InventorySnapshot& snapshot, int flip = -1);

// A delivered stack that matches `expected` item for item.
BurgerStack stack_for(const ExpectedStack& expected);

std::string fig2_text();
std::string fig4_text();
InventorySnapshot snapshot_with(std::initializer_list<std::pair<Ingredient, int>> counts, int others = 5);

/// Feeds commands to a Session with consecutive seq numbers.
class Driver {
public:
    explicit Driver(GameConfig config, ProfileHooks hooks = {});

    std::vector<ServerEvent> send(nlohmann::json command);
    // Sends a line as-is; the seq counter is untouched.
    std::vector<ServerEvent> send_raw(const std::string& line);
    // Assembles the active order correctly and delivers it.
    std::vector<ServerEvent> assemble_and_deliver();
    // Assembles `items` regardless of the order, then delivers.
    std::vector<ServerEvent> deliver_items(const std::vector<Ingredient>& items);

    Session& session() { return session_; }
    const std::vector<ServerEvent>& all_events() const { return events_; }
    const std::vector<std::string>& script() const { return script_; }

private:
    std::vector<ServerEvent> run(std::vector<nlohmann::json> commands);

    Session session_;
    long long seq_ = 1;
    std::vector<ServerEvent> events_;
    std::vector<std::string> script_;
};

std::vector<ServerEvent> of_type(const std::vector<ServerEvent>& events, std::string_view type);

/// Scratch directory removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace testing
