#include "support.hpp"

#include <random>

namespace testing {

using nlohmann::json;

namespace {

Ingredient random_ingredient(SplitMix64& rng) { return kAllIngredients[rng.below(kAllIngredients.size())]; }

std::vector<Block> fuzz_blocks(SplitMix64& rng, int depth, int max_depth, std::size_t min, std::size_t max) {
    std::vector<Block> blocks;
    const std::size_t n = min + rng.below(max - min + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const auto roll = rng.below(10);
        if (depth < max_depth && roll < 2) {
            If node{{random_ingredient(rng)}, fuzz_blocks(rng, depth + 1, max_depth, 0, 3), {}};
            if (rng.chance(1, 2)) node.else_body = fuzz_blocks(rng, depth + 1, max_depth, 0, 3);
            blocks.emplace_back(std::move(node));
        } else if (depth < max_depth && roll < 4) {
            blocks.emplace_back(Repeat{static_cast<int>(rng.below(5)), fuzz_blocks(rng, depth + 1, max_depth, 1, 3)});
        } else {
            blocks.emplace_back(Put{random_ingredient(rng)});
        }
    }
    return blocks;
}

// Conditions of every If in pre-order, branches and loop bodies included once.
void collect_conditions(const std::vector<Block>& blocks, std::vector<Ingredient>& out) {
    for (const Block& block : blocks) {
        if (const auto* i = std::get_if<If>(&block.node)) {
            out.push_back(i->condition.has);
            collect_conditions(i->then_body, out);
            collect_conditions(i->else_body, out);
        } else if (const auto* r = std::get_if<Repeat>(&block.node)) {
            collect_conditions(r->body, out);
        }
    }
}

// Replaces each If with its assigned branch and each Repeat with copies of
// its body, leaving a flat list of Puts.
std::vector<Ingredient> flatten(const std::vector<Block>& blocks, const std::vector<bool>& assignment,
                                std::size_t& cursor) {
    std::vector<Ingredient> out;
    for (const Block& block : blocks) {
        if (const auto* p = std::get_if<Put>(&block.node)) {
            out.push_back(p->ingredient);
        } else if (const auto* i = std::get_if<If>(&block.node)) {
            const bool value = assignment[cursor++];
            auto then_flat = flatten(i->then_body, assignment, cursor);
            auto else_flat = flatten(i->else_body, assignment, cursor);
            auto& chosen = value ? then_flat : else_flat;
            out.insert(out.end(), chosen.begin(), chosen.end());
        } else {
            const auto& r = std::get<Repeat>(block.node);
            const std::size_t start = cursor;
            std::vector<Ingredient> body;
            for (int k = 0; k < std::max(r.count, 1); ++k) {
                cursor = start;
                body = flatten(r.body, assignment, cursor);
                if (k < r.count) out.insert(out.end(), body.begin(), body.end());
            }
        }
    }
    return out;
}

}  // namespace

OrderAst fuzz_order(SplitMix64& rng, int max_depth) {
    OrderAst order;
    order.blocks = fuzz_blocks(rng, 0, max_depth, 1, 6);
    return order;
}

InventorySnapshot random_snapshot(SplitMix64& rng, int max_count) {
    InventorySnapshot s;
    for (Ingredient i : kAllIngredients) s.set(i, static_cast<int>(rng.below(static_cast<std::uint64_t>(max_count) + 1)));
    return s;
}

ExpectedStack oracle_expand(const OrderAst& order, const InventorySnapshot& snapshot, int flip) {
    std::vector<Ingredient> conditions;
    collect_conditions(order.blocks, conditions);
    const std::size_t k = conditions.size();
    if (k > 20) throw std::invalid_argument("oracle: too many conditions");
    std::optional<std::vector<bool>> consistent;
    for (std::uint64_t mask = 0; mask < (1ULL << k); ++mask) {
        std::vector<bool> assignment(k);
        bool agrees = true;
        for (std::size_t i = 0; i < k; ++i) {
            assignment[i] = (mask >> i) & 1U;
            agrees = agrees && assignment[i] == (snapshot.count(conditions[i]) >= 1);
        }
        if (!agrees) continue;
        if (consistent) throw std::logic_error("oracle: two consistent assignments");
        consistent = assignment;
    }
    if (!consistent) throw std::logic_error("oracle: no consistent assignment");
    if (flip >= 0) (*consistent)[static_cast<std::size_t>(flip)] = !(*consistent)[static_cast<std::size_t>(flip)];
    std::size_t cursor = 0;
    ExpectedStack out;
    for (Ingredient i : flatten(order.blocks, *consistent, cursor)) out.items.push_back({i, i == Ingredient::Meat});
    return out;
}

BurgerStack stack_for(const ExpectedStack& expected) {
    BurgerStack stack;
    for (const auto& item : expected.items)
        stack.items.push_back({item.ingredient, item.requires_cooked ? CookPhase::Cooked : CookPhase::NotApplicable});
    stack.delivered = true;
    return stack;
}

std::string fig2_text() {
    return "PONER pan_inferior\nSI HAY queso\n  PONER queso\nFIN\nPONER carne\nPONER pan_superior";
}

std::string fig4_text() { return "PONER pan_inferior\nREPETIR 2 VECES\n  PONER carne\nFIN\nPONER pan_superior"; }

InventorySnapshot snapshot_with(std::initializer_list<std::pair<Ingredient, int>> counts, int others) {
    InventorySnapshot s = InventorySnapshot::uniform(others);
    for (const auto& [i, n] : counts) s.set(i, n);
    return s;
}

Driver::Driver(GameConfig config, ProfileHooks hooks) : session_(std::move(config), std::move(hooks), "test") {
    events_ = session_.start();
}

std::vector<ServerEvent> Driver::send(json command) {
    command["seq"] = seq_++;
    const std::string line = command.dump();
    script_.push_back(line);
    auto out = session_.handle_line(line);
    events_.insert(events_.end(), out.begin(), out.end());
    return out;
}

std::vector<ServerEvent> Driver::send_raw(const std::string& line) {
    script_.push_back(line);
    auto out = session_.handle_line(line);
    events_.insert(events_.end(), out.begin(), out.end());
    return out;
}

std::vector<ServerEvent> Driver::run(std::vector<json> commands) {
    std::vector<ServerEvent> out;
    for (auto& c : commands) {
        auto produced = send(std::move(c));
        out.insert(out.end(), produced.begin(), produced.end());
    }
    return out;
}

std::vector<ServerEvent> Driver::deliver_items(const std::vector<Ingredient>& items) {
    std::vector<json> commands;
    for (Ingredient i : items) {
        commands.push_back({{"type", "grab"}, {"ingredient", canonical_token(i)}});
        if (i == Ingredient::Meat) {
            commands.push_back({{"type", "start_cook"}});
            commands.push_back({{"type", "advance_ticks"}, {"n", session_.config().engine.cook_ticks}});
            commands.push_back({{"type", "take_from_grill"}});
        }
        commands.push_back({{"type", "place"}});
    }
    commands.push_back({{"type", "deliver"}});
    return run(std::move(commands));
}

std::vector<ServerEvent> Driver::assemble_and_deliver() {
    const auto& engine = session_.engine();
    if (!engine.active_order()) throw std::logic_error("no active order");
    std::vector<Ingredient> items;
    for (const auto& e : oracle_expand(*engine.active_order(), *engine.active_snapshot()).items)
        items.push_back(e.ingredient);
    return deliver_items(items);
}

std::vector<ServerEvent> of_type(const std::vector<ServerEvent>& events, std::string_view type) {
    std::vector<ServerEvent> out;
    for (const auto& e : events)
        if (e.value("type", "") == type) out.push_back(e);
    return out;
}

TempDir::TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("cooking_code_test_" + std::to_string(rd()) + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

}  // namespace testing
