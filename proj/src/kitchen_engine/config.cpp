#include "cooking_code/kitchen_engine.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace cooking_code {

using nlohmann::json;

InventorySnapshot EngineConfig::default_inventory() {
    InventorySnapshot snapshot;
    snapshot.set(Ingredient::BottomBread, 20);
    snapshot.set(Ingredient::TopBread, 20);
    snapshot.set(Ingredient::Meat, 15);
    snapshot.set(Ingredient::Cheese, 8);
    snapshot.set(Ingredient::Lettuce, 8);
    snapshot.set(Ingredient::Ketchup, 10);
    return snapshot;
}

void EngineConfig::validate() const {
    if (day_length_ticks < 1) throw ConfigError("day_length_ticks must be positive");
    if (cook_ticks < 1) throw ConfigError("cook_ticks must be positive");
    if (burnt_enabled && burn_ticks <= cook_ticks) throw ConfigError("burn_ticks must exceed cook_ticks");
    if (!layout.stations.contains(kPlateStation)) throw ConfigError("layout has no 'plate' station");
    for (const auto& [name, pos] : layout.stations)
        if (!std::isfinite(pos.x) || !std::isfinite(pos.y))
            throw ConfigError("layout station '" + name + "' is not finite");
}

json engine_config_to_json(const EngineConfig& config) {
    return {
        {"day_length_ticks", config.day_length_ticks},
        {"cook_ticks", config.cook_ticks},
        {"burn_ticks", config.burn_ticks},
        {"burnt_enabled", config.burnt_enabled},
        {"initial_inventory", snapshot_to_json(config.initial_inventory)},
        {"layout", layout_to_json(config.layout)},
    };
}

namespace {

int positive_int(const json& doc, const char* key, int fallback) {
    if (!doc.contains(key)) return fallback;
    const json& value = doc.at(key);
    if (!value.is_number_integer()) throw ConfigError(std::string(key) + " must be an integer");
    const long long v = value.get<long long>();
    if (v < 1 || v > 100'000'000) throw ConfigError(std::string(key) + " out of range");
    return static_cast<int>(v);
}

}  // namespace

EngineConfig engine_config_from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    EngineConfig config;
    config.day_length_ticks = positive_int(doc, "day_length_ticks", config.day_length_ticks);
    config.cook_ticks = positive_int(doc, "cook_ticks", config.cook_ticks);
    config.burn_ticks = positive_int(doc, "burn_ticks", config.burn_ticks);
    if (doc.contains("burnt_enabled")) {
        if (!doc.at("burnt_enabled").is_boolean()) throw ConfigError("burnt_enabled must be a boolean");
        config.burnt_enabled = doc.at("burnt_enabled").get<bool>();
    }
    if (doc.contains("initial_inventory")) {
        const json& inv = doc.at("initial_inventory");
        if (!inv.is_object()) throw ConfigError("initial_inventory must be an object");
        for (const auto& [key, value] : inv.items()) {
            auto ingredient = ingredient_from_token(key);
            if (!ingredient) throw ConfigError("initial_inventory: unknown ingredient '" + key + "'");
            if (!value.is_number_integer() || value.get<long long>() < 0 || value.get<long long>() > 1'000'000)
                throw ConfigError("initial_inventory: bad count for '" + key + "'");
            config.initial_inventory.set(*ingredient, value.get<int>());
        }
    }
    if (doc.contains("layout")) {
        const json& layout = doc.at("layout");
        try {
            config.layout = layout.is_string() ? layout_preset(layout.get<std::string>()) : layout_from_json(layout);
        } catch (const LayoutError& e) {
            throw ConfigError(e.what());
        }
    }
    config.validate();
    return config;
}

json stack_to_json(const BurgerStack& stack) {
    json items = json::array();
    for (const KitchenItem& item : stack.items)
        items.push_back({{"ingredient", canonical_token(item.ingredient)}, {"cook", cook_phase_name(item.cook)}});
    return {{"items", items}, {"delivered", stack.delivered}};
}

BurgerStack stack_from_json(const json& doc) {
    const json* items = &doc;
    BurgerStack stack;
    if (doc.is_object()) {
        if (!doc.contains("items")) throw AstFormatError("stack: missing 'items'");
        items = &doc.at("items");
        if (doc.contains("delivered")) stack.delivered = doc.at("delivered").get<bool>();
    }
    if (!items->is_array()) throw AstFormatError("stack: 'items' must be an array");
    for (const json& entry : *items) {
        const json& name = entry.is_object() ? entry.value("ingredient", json()) : entry;
        if (!name.is_string()) throw AstFormatError("stack item needs an ingredient");
        auto ingredient = ingredient_from_token(name.get<std::string>());
        if (!ingredient) throw AstFormatError("stack: unknown ingredient '" + name.get<std::string>() + "'");
        KitchenItem item = KitchenItem::fresh(*ingredient);
        if (entry.is_object() && entry.contains("cook")) {
            auto phase = cook_phase_from_name(entry.at("cook").get<std::string>());
            if (!phase || *phase == CookPhase::Cooking) throw AstFormatError("stack: bad cook state");
            const bool meat = *ingredient == Ingredient::Meat;
            if (meat == (*phase == CookPhase::NotApplicable))
                throw AstFormatError("stack: cook state does not fit '" + name.get<std::string>() + "'");
            item.cook = *phase;
        }
        stack.items.push_back(item);
    }
    return stack;
}

}  // namespace cooking_code
