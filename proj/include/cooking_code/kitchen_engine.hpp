#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cooking_code/expected.hpp"
#include "cooking_code/order_lang.hpp"

namespace cooking_code {

enum class CookPhase : std::uint8_t {
    NotApplicable,  // every non-meat item
    Raw,
    Cooking,  // only while on the grill
    Cooked,
    Burnt,
};

std::string_view cook_phase_name(CookPhase phase);
std::optional<CookPhase> cook_phase_from_name(std::string_view name);

struct KitchenItem {
    Ingredient ingredient;
    CookPhase cook = CookPhase::NotApplicable;

    static KitchenItem fresh(Ingredient ingredient) {
        return {ingredient, ingredient == Ingredient::Meat ? CookPhase::Raw : CookPhase::NotApplicable};
    }
    friend bool operator==(const KitchenItem&, const KitchenItem&) = default;
};

struct BurgerStack {
    std::vector<KitchenItem> items;
    bool delivered = false;
    friend bool operator==(const BurgerStack&, const BurgerStack&) = default;
};

nlohmann::json stack_to_json(const BurgerStack& stack);
// Items may omit "cook"; meat then defaults to raw.
BurgerStack stack_from_json(const nlohmann::json& doc);

struct GradeRequest {
    OrderAst order;
    InventorySnapshot snapshot;  // frozen when the order was issued
    BurgerStack delivered;
};

/// Day-bounded ingredient counts. grabbed_today + current == initial_per_day.
class Inventory {
public:
    explicit Inventory(InventorySnapshot initial_per_day);

    const InventorySnapshot& initial_per_day() const noexcept { return initial_; }
    const InventorySnapshot& current() const noexcept { return current_; }
    int grabbed_today(Ingredient ingredient) const noexcept { return grabbed_[index_of(ingredient)]; }

    bool take(Ingredient ingredient);
    void reset();

private:
    InventorySnapshot initial_;
    InventorySnapshot current_;
    std::array<int, kIngredientCount> grabbed_{};
};

struct WorkdayClock {
    int tick = 0;  // day-relative
    int day_length_ticks = 300;
    int day_index = 0;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

class LayoutError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LayoutConfig {
    std::map<std::string, Vec2, std::less<>> stations;

    const Vec2& position(std::string_view station) const;
    friend bool operator==(const LayoutConfig&, const LayoutConfig&) = default;
};

inline constexpr std::string_view kPlateStation = "plate";
inline constexpr std::string_view kGrillStation = "grill";
inline constexpr std::string_view kTrayStation = "tray";
inline constexpr std::string_view kOrderDisplayStation = "order_display";

// Container station for an ingredient. Ketchup lives at "ketchup_station".
std::string_view container_station(Ingredient ingredient);

// Known names: "tray_front", "tray_side". Throws LayoutError otherwise.
LayoutConfig layout_preset(std::string_view name);
std::vector<std::string> layout_preset_names();

nlohmann::json layout_to_json(const LayoutConfig& layout);
LayoutConfig layout_from_json(const nlohmann::json& doc);

/// Sum of Euclidean distances along `visits`, starting from the plate.
double travel_cost(const std::vector<std::string>& visits, const LayoutConfig& layout);

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EngineConfig {
    int day_length_ticks = 300;
    int cook_ticks = 10;
    int burn_ticks = 30;
    bool burnt_enabled = true;
    InventorySnapshot initial_inventory = default_inventory();
    LayoutConfig layout = layout_preset("tray_front");

    static InventorySnapshot default_inventory();
    void validate() const;  // throws ConfigError
};

nlohmann::json engine_config_to_json(const EngineConfig& config);
// Missing keys keep their defaults; "layout" may be a preset name or an object.
EngineConfig engine_config_from_json(const nlohmann::json& doc);

enum class EngineEventKind : std::uint8_t {
    CookStarted,
    CookProgress,
    CookFinished,
    CookBurnt,
    SmokeVisible,
    CookingSound,
    InventoryChanged,
    DayEnded,
};

std::string_view event_kind_name(EngineEventKind kind);

struct EngineEvent {
    EngineEventKind kind;
    long long tick = 0;  // session-wide tick, never reset between days
    double fraction = 0.0;                 // CookProgress
    Ingredient ingredient = Ingredient::Meat;  // InventoryChanged
    int count = 0;                         // InventoryChanged
    int day_index = 0;                     // DayEnded

    friend bool operator==(const EngineEvent&, const EngineEvent&) = default;
};

enum class EngineError : std::uint8_t {
    Empty,           // grab from an empty container
    HandFull,
    NothingHeld,
    NotMeat,
    GrillBusy,
    AlreadyCooked,
    GrillEmpty,
    NoActiveOrder,
    EmptyStack,
    OrderAlreadyActive,
    NoActiveDay,
    DayInProgress,
};

std::string_view error_code(EngineError error);
std::string_view error_description(EngineError error);

struct DayReport {
    int day_index = 0;
    int orders_delivered = 0;
    long long ended_at_tick = 0;
};

/// Single-player kitchen state machine. Not thread-safe; callers serialize.
class KitchenEngine {
public:
    explicit KitchenEngine(EngineConfig config);

    Expected<KitchenItem, EngineError> grab(Ingredient ingredient);
    Expected<BurgerStack, EngineError> place_on_plate();
    Expected<Ok, EngineError> start_cook();
    Expected<KitchenItem, EngineError> take_from_grill();
    // Advances up to n ticks (n >= 1); stops early when the day ends.
    std::vector<EngineEvent> tick(int n);

    // Freezes the current inventory as the order's evaluation snapshot.
    Expected<Ok, EngineError> issue_order(OrderAst order);
    Expected<GradeRequest, EngineError> deliver();

    Expected<DayReport, EngineError> end_day();
    Expected<Ok, EngineError> start_day();

    // Events queued by mutating calls since the last drain.
    std::vector<EngineEvent> take_events();

    const EngineConfig& config() const noexcept { return config_; }
    const Inventory& inventory() const noexcept { return inventory_; }
    const WorkdayClock& clock() const noexcept { return clock_; }
    long long total_ticks() const noexcept { return total_ticks_; }
    bool day_active() const noexcept { return day_active_; }
    const std::optional<KitchenItem>& held() const noexcept { return held_; }
    const BurgerStack& plate() const noexcept { return plate_; }
    // Meat on the grill with its live state (Cooking/Cooked/Burnt).
    std::optional<KitchenItem> grill_item() const;
    int grill_elapsed() const noexcept { return grill_ ? grill_->elapsed : 0; }
    const std::optional<OrderAst>& active_order() const noexcept { return active_order_; }
    const std::optional<InventorySnapshot>& active_snapshot() const noexcept { return active_snapshot_; }
    int orders_delivered_today() const noexcept { return delivered_today_; }

private:
    struct GrillSlot {
        int elapsed = 0;
        CookPhase phase = CookPhase::Cooking;
    };

    void emit(EngineEvent event);
    void advance_one();
    DayReport close_day();

    EngineConfig config_;
    Inventory inventory_;
    WorkdayClock clock_;
    long long total_ticks_ = 0;
    bool day_active_ = true;
    std::optional<KitchenItem> held_;
    BurgerStack plate_;
    std::optional<GrillSlot> grill_;
    std::optional<OrderAst> active_order_;
    std::optional<InventorySnapshot> active_snapshot_;
    int delivered_today_ = 0;
    std::vector<EngineEvent> pending_;
};

}  // namespace cooking_code
