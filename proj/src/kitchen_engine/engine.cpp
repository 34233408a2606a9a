#include "cooking_code/kitchen_engine.hpp"

#include <array>

namespace cooking_code {

namespace {

constexpr std::array<std::string_view, 5> kPhaseNames = {"not_applicable", "raw", "cooking", "cooked", "burnt"};

}  // namespace

std::string_view cook_phase_name(CookPhase phase) { return kPhaseNames[static_cast<std::size_t>(phase)]; }

std::optional<CookPhase> cook_phase_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kPhaseNames.size(); ++i)
        if (kPhaseNames[i] == name) return static_cast<CookPhase>(i);
    return std::nullopt;
}

std::string_view event_kind_name(EngineEventKind kind) {
    switch (kind) {
        case EngineEventKind::CookStarted: return "cook_started";
        case EngineEventKind::CookProgress: return "cook_progress";
        case EngineEventKind::CookFinished: return "cook_finished";
        case EngineEventKind::CookBurnt: return "cook_burnt";
        case EngineEventKind::SmokeVisible: return "smoke_visible";
        case EngineEventKind::CookingSound: return "cooking_sound";
        case EngineEventKind::InventoryChanged: return "inventory_changed";
        case EngineEventKind::DayEnded: return "day_ended";
    }
    return "unknown";
}

std::string_view error_code(EngineError error) {
    switch (error) {
        case EngineError::Empty: return "grab_empty";
        case EngineError::HandFull: return "hand_full";
        case EngineError::NothingHeld: return "nothing_held";
        case EngineError::NotMeat: return "not_meat";
        case EngineError::GrillBusy: return "grill_busy";
        case EngineError::AlreadyCooked: return "already_cooked";
        case EngineError::GrillEmpty: return "grill_empty";
        case EngineError::NoActiveOrder: return "no_active_order";
        case EngineError::EmptyStack: return "empty_stack";
        case EngineError::OrderAlreadyActive: return "order_already_active";
        case EngineError::NoActiveDay: return "no_active_day";
        case EngineError::DayInProgress: return "day_in_progress";
    }
    return "unknown";
}

std::string_view error_description(EngineError error) {
    switch (error) {
        case EngineError::Empty: return "that container is empty";
        case EngineError::HandFull: return "your hand is already full";
        case EngineError::NothingHeld: return "you are not holding anything";
        case EngineError::NotMeat: return "only meat goes on the grill";
        case EngineError::GrillBusy: return "the grill is already in use";
        case EngineError::AlreadyCooked: return "this meat is no longer raw";
        case EngineError::GrillEmpty: return "the grill is empty";
        case EngineError::NoActiveOrder: return "there is no active order";
        case EngineError::EmptyStack: return "the plate is empty";
        case EngineError::OrderAlreadyActive: return "an order is already active";
        case EngineError::NoActiveDay: return "the workday is over";
        case EngineError::DayInProgress: return "the workday has already started";
    }
    return "unknown error";
}

Inventory::Inventory(InventorySnapshot initial_per_day) : initial_(initial_per_day), current_(initial_per_day) {}

bool Inventory::take(Ingredient ingredient) {
    const int have = current_.count(ingredient);
    if (have == 0) return false;
    current_.set(ingredient, have - 1);
    ++grabbed_[index_of(ingredient)];
    return true;
}

void Inventory::reset() {
    current_ = initial_;
    grabbed_.fill(0);
}

KitchenEngine::KitchenEngine(EngineConfig config)
    : config_((config.validate(), std::move(config))), inventory_(config_.initial_inventory) {
    clock_.day_length_ticks = config_.day_length_ticks;
}

void KitchenEngine::emit(EngineEvent event) {
    event.tick = total_ticks_;
    pending_.push_back(event);
}

std::vector<EngineEvent> KitchenEngine::take_events() {
    std::vector<EngineEvent> out;
    out.swap(pending_);
    return out;
}

Expected<KitchenItem, EngineError> KitchenEngine::grab(Ingredient ingredient) {
    if (!day_active_) return Unexpected{EngineError::NoActiveDay};
    if (held_) return Unexpected{EngineError::HandFull};
    if (!inventory_.take(ingredient)) return Unexpected{EngineError::Empty};
    held_ = KitchenItem::fresh(ingredient);
    emit({.kind = EngineEventKind::InventoryChanged,
          .ingredient = ingredient,
          .count = inventory_.current().count(ingredient)});
    return *held_;
}

Expected<BurgerStack, EngineError> KitchenEngine::place_on_plate() {
    if (!day_active_) return Unexpected{EngineError::NoActiveDay};
    if (!held_) return Unexpected{EngineError::NothingHeld};
    plate_.items.push_back(*held_);
    held_.reset();
    return plate_;
}

Expected<Ok, EngineError> KitchenEngine::start_cook() {
    if (!day_active_) return Unexpected{EngineError::NoActiveDay};
    if (!held_) return Unexpected{EngineError::NothingHeld};
    if (held_->ingredient != Ingredient::Meat) return Unexpected{EngineError::NotMeat};
    if (held_->cook != CookPhase::Raw) return Unexpected{EngineError::AlreadyCooked};
    if (grill_) return Unexpected{EngineError::GrillBusy};
    grill_ = GrillSlot{};
    held_.reset();
    emit({.kind = EngineEventKind::CookStarted});
    emit({.kind = EngineEventKind::CookingSound});
    return Ok{};
}

Expected<KitchenItem, EngineError> KitchenEngine::take_from_grill() {
    if (!day_active_) return Unexpected{EngineError::NoActiveDay};
    if (!grill_) return Unexpected{EngineError::GrillEmpty};
    if (held_) return Unexpected{EngineError::HandFull};
    // Partial cooking is discarded.
    const CookPhase phase = grill_->phase == CookPhase::Cooking ? CookPhase::Raw : grill_->phase;
    held_ = KitchenItem{Ingredient::Meat, phase};
    grill_.reset();
    return *held_;
}

std::optional<KitchenItem> KitchenEngine::grill_item() const {
    if (!grill_) return std::nullopt;
    return KitchenItem{Ingredient::Meat, grill_->phase};
}

void KitchenEngine::advance_one() {
    ++clock_.tick;
    ++total_ticks_;
    if (!grill_) return;
    ++grill_->elapsed;
    if (grill_->phase == CookPhase::Cooking && grill_->elapsed >= config_.cook_ticks) {
        grill_->phase = CookPhase::Cooked;
        emit({.kind = EngineEventKind::CookFinished});
        emit({.kind = EngineEventKind::SmokeVisible});
    }
    if (config_.burnt_enabled && grill_->phase == CookPhase::Cooked && grill_->elapsed >= config_.burn_ticks) {
        grill_->phase = CookPhase::Burnt;
        emit({.kind = EngineEventKind::CookBurnt});
    }
}

std::vector<EngineEvent> KitchenEngine::tick(int n) {
    if (n < 1) throw std::invalid_argument("tick count must be positive");
    if (day_active_) {
        bool day_over = false;
        for (int i = 0; i < n && !day_over; ++i) {
            advance_one();
            day_over = clock_.tick >= clock_.day_length_ticks;
        }
        if (grill_ && grill_->phase == CookPhase::Cooking) {
            emit({.kind = EngineEventKind::CookProgress,
                  .fraction = static_cast<double>(grill_->elapsed) / config_.cook_ticks});
        }
        if (day_over) close_day();
    }
    return take_events();
}

Expected<Ok, EngineError> KitchenEngine::issue_order(OrderAst order) {
    if (!day_active_) return Unexpected{EngineError::NoActiveDay};
    if (active_order_) return Unexpected{EngineError::OrderAlreadyActive};
    active_order_ = std::move(order);
    active_snapshot_ = inventory_.current();
    return Ok{};
}

Expected<GradeRequest, EngineError> KitchenEngine::deliver() {
    if (!day_active_) return Unexpected{EngineError::NoActiveDay};
    if (!active_order_) return Unexpected{EngineError::NoActiveOrder};
    if (plate_.items.empty()) return Unexpected{EngineError::EmptyStack};
    GradeRequest request{std::move(*active_order_), *active_snapshot_, std::move(plate_)};
    request.delivered.delivered = true;
    active_order_.reset();
    active_snapshot_.reset();
    plate_ = BurgerStack{};
    ++delivered_today_;
    return request;
}

DayReport KitchenEngine::close_day() {
    day_active_ = false;
    emit({.kind = EngineEventKind::DayEnded, .day_index = clock_.day_index});
    return DayReport{clock_.day_index, delivered_today_, total_ticks_};
}

Expected<DayReport, EngineError> KitchenEngine::end_day() {
    if (!day_active_) return Unexpected{EngineError::NoActiveDay};
    return close_day();
}

Expected<Ok, EngineError> KitchenEngine::start_day() {
    if (day_active_) return Unexpected{EngineError::DayInProgress};
    inventory_.reset();
    clock_.tick = 0;
    ++clock_.day_index;
    held_.reset();
    plate_ = BurgerStack{};
    grill_.reset();
    active_order_.reset();
    active_snapshot_.reset();
    delivered_today_ = 0;
    day_active_ = true;
    return Ok{};
}

}  // namespace cooking_code
