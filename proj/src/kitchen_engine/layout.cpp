#include "cooking_code/kitchen_engine.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace cooking_code {

using nlohmann::json;

namespace {

// Table-top coordinates in meters: x to the player's right, y away from the
// player, plate at the origin. Non-meat ingredients sit on the left with the
// breads closest to the plate; meat sits beside the grill on the right.
LayoutConfig base_layout() {
    LayoutConfig layout;
    layout.stations = {
        {"plate", {0.0, 0.0}},
        {"ketchup_station", {0.30, -0.10}},
        {"pan_inferior", {-0.22, -0.08}},
        {"pan_superior", {-0.22, 0.08}},
        {"lechuga", {-0.48, -0.08}},
        {"queso", {-0.48, 0.08}},
        {"carne", {0.50, 0.05}},
        {"grill", {0.75, 0.05}},
        {"order_display", {0.0, 0.90}},
    };
    return layout;
}

}  // namespace

const Vec2& LayoutConfig::position(std::string_view station) const {
    auto it = stations.find(station);
    if (it == stations.end()) throw LayoutError("unknown station '" + std::string(station) + "'");
    return it->second;
}

std::string_view container_station(Ingredient ingredient) {
    return ingredient == Ingredient::Ketchup ? std::string_view("ketchup_station") : canonical_token(ingredient);
}

LayoutConfig layout_preset(std::string_view name) {
    LayoutConfig layout = base_layout();
    if (name == "tray_front") {
        layout.stations.emplace("tray", Vec2{0.0, 0.40});
    } else if (name == "tray_side") {
        layout.stations.emplace("tray", Vec2{1.30, -0.60});
    } else {
        throw LayoutError("unknown layout preset '" + std::string(name) + "'");
    }
    return layout;
}

std::vector<std::string> layout_preset_names() { return {"tray_front", "tray_side"}; }

json layout_to_json(const LayoutConfig& layout) {
    json stations = json::object();
    for (const auto& [name, pos] : layout.stations) stations[name] = {pos.x, pos.y};
    return {{"stations", stations}};
}

LayoutConfig layout_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("stations") || !doc.at("stations").is_object())
        throw LayoutError("layout: expected {\"stations\":{...}}");
    LayoutConfig layout;
    for (const auto& [name, value] : doc.at("stations").items()) {
        if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number())
            throw LayoutError("layout: station '" + name + "' must be [x, y]");
        Vec2 pos{value[0].get<double>(), value[1].get<double>()};
        if (!std::isfinite(pos.x) || !std::isfinite(pos.y))
            throw LayoutError("layout: station '" + name + "' has a non-finite position");
        layout.stations.emplace(name, pos);
    }
    return layout;
}

double travel_cost(const std::vector<std::string>& visits, const LayoutConfig& layout) {
    Vec2 at = layout.position(kPlateStation);
    double total = 0.0;
    for (const std::string& station : visits) {
        const Vec2& next = layout.position(station);
        total += std::hypot(next.x - at.x, next.y - at.y);
        at = next;
    }
    return total;
}

}  // namespace cooking_code
