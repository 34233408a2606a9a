#include "cooking_code/progression.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace cooking_code {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 3> kOrderKindNames = {"sequential", "conditional", "iterative"};
constexpr std::array<std::string_view, 4> kAchievementKindNames = {"sequential", "conditional", "iterative",
                                                                   "day_perfect"};

DayRecord& day_record(PlayerStats& stats, int day_index) {
    for (DayRecord& day : stats.days)
        if (day.day_index == day_index) return day;
    DayRecord fresh;
    fresh.day_index = day_index;
    fresh.xp = stats.xp;
    stats.days.push_back(fresh);
    return stats.days.back();
}

bool rule_holds(const AchievementDef& def, const PlayerStats& stats, const DayRecord* closing_day) {
    switch (def.kind) {
        case AchievementKind::Sequential:
        case AchievementKind::Conditional:
        case AchievementKind::Iterative:
            return stats.correct_by_kind[static_cast<std::size_t>(def.kind)] >= def.threshold;
        case AchievementKind::DayPerfect:
            return closing_day && closing_day->attempted >= def.threshold &&
                   closing_day->correct == closing_day->attempted;
    }
    return false;
}

ProgressUpdate evaluate(PlayerStats stats, const AchievementCatalog& catalog, StatsClock when,
                        const DayRecord* closing_day) {
    ProgressUpdate update;
    for (const AchievementDef& def : catalog) {
        if (stats.unlocked(def.id) || !rule_holds(def, stats, closing_day)) continue;
        stats.achievements.push_back({def.id, when.day_index, when.tick});
        day_record(stats, when.day_index).unlocked.push_back(def.id);
        update.unlocked.push_back(def);
    }
    update.stats = std::move(stats);
    return update;
}

}  // namespace

std::string_view order_kind_name(OrderKind kind) { return kOrderKindNames[static_cast<std::size_t>(kind)]; }

OrderKind order_kind(const OrderAst& order) {
    if (contains_repeat(order.blocks)) return OrderKind::Iterative;
    if (contains_if(order.blocks)) return OrderKind::Conditional;
    return OrderKind::Sequential;
}

AchievementCatalog default_catalog() {
    return {
        {"seq_1", AchievementKind::Sequential, 1, "Primer pedido", "First order"},
        {"seq_10", AchievementKind::Sequential, 10, "Cocinero en serie", "Short-order cook"},
        {"if_1", AchievementKind::Conditional, 1, "Primera condición", "First condition"},
        {"if_10", AchievementKind::Conditional, 10, "Maestro de las condiciones", "Condition master"},
        {"loop_1", AchievementKind::Iterative, 1, "Primera repetición", "First loop"},
        {"loop_10", AchievementKind::Iterative, 10, "Rey de los bucles", "Loop champion"},
        {"day_perfect", AchievementKind::DayPerfect, 1, "Jornada perfecta", "Perfect workday"},
    };
}

json catalog_to_json(const AchievementCatalog& catalog) {
    json out = json::array();
    for (const AchievementDef& def : catalog) {
        out.push_back({{"id", def.id},
                       {"kind", kAchievementKindNames[static_cast<std::size_t>(def.kind)]},
                       {"threshold", def.threshold},
                       {"title_es", def.title_es},
                       {"title_en", def.title_en}});
    }
    return out;
}

AchievementCatalog catalog_from_json(const json& doc) {
    if (!doc.is_array()) throw std::invalid_argument("achievement catalog must be an array");
    AchievementCatalog catalog;
    for (const json& entry : doc) {
        AchievementDef def;
        def.id = entry.at("id").get<std::string>();
        const auto kind = entry.at("kind").get<std::string>();
        const auto it = std::find(kAchievementKindNames.begin(), kAchievementKindNames.end(), kind);
        if (it == kAchievementKindNames.end()) throw std::invalid_argument("unknown achievement kind '" + kind + "'");
        def.kind = static_cast<AchievementKind>(it - kAchievementKindNames.begin());
        def.threshold = entry.at("threshold").get<int>();
        if (def.threshold < 1) throw std::invalid_argument("achievement threshold must be positive");
        def.title_es = entry.value("title_es", def.id);
        def.title_en = entry.value("title_en", def.id);
        if (std::any_of(catalog.begin(), catalog.end(), [&](const auto& d) { return d.id == def.id; }))
            throw std::invalid_argument("duplicate achievement id '" + def.id + "'");
        catalog.push_back(std::move(def));
    }
    return catalog;
}

bool PlayerStats::unlocked(std::string_view id) const {
    return std::any_of(achievements.begin(), achievements.end(), [&](const Unlock& u) { return u.id == id; });
}

const DayRecord* PlayerStats::day(int day_index) const {
    for (const DayRecord& d : days)
        if (d.day_index == day_index) return &d;
    return nullptr;
}

PlayerStats begin_day(PlayerStats stats, int day_index) {
    day_record(stats, day_index);
    return stats;
}

ProgressUpdate record_grade(const GradeReport& report, const OrderAst& order, PlayerStats stats,
                            const AchievementCatalog& catalog, StatsClock when) {
    DayRecord& day = day_record(stats, when.day_index);
    ++day.attempted;
    if (report.category == FeedbackCategory::Correct) {
        ++day.correct;
        day.score += report.score_delta;
        stats.xp += report.score_delta;
        ++stats.correct_orders_total;
        ++stats.correct_by_kind[static_cast<std::size_t>(order_kind(order))];
    }
    day.xp = stats.xp;
    return evaluate(std::move(stats), catalog, when, nullptr);
}

ProgressUpdate close_day(PlayerStats stats, const AchievementCatalog& catalog, StatsClock when) {
    DayRecord& day = day_record(stats, when.day_index);
    day.closed = true;
    const DayRecord snapshot = day;
    return evaluate(std::move(stats), catalog, when, &snapshot);
}

DaySummary day_summary(const PlayerStats& stats, int day_index) {
    const DayRecord* day = stats.day(day_index);
    if (!day) throw UnknownDay("no record for day " + std::to_string(day_index));
    return {day->day_index, day->attempted, day->correct, day->score, day->xp, day->unlocked};
}

json summary_to_json(const DaySummary& summary) {
    return {{"day_index", summary.day_index},
            {"attempted", summary.attempted},
            {"correct", summary.correct},
            {"day_score", summary.day_score},
            {"xp", summary.xp},
            {"new_achievements", summary.new_achievements}};
}

json stats_to_json(const PlayerStats& stats) {
    json days = json::array();
    for (const DayRecord& d : stats.days) {
        days.push_back({{"day_index", d.day_index},
                        {"attempted", d.attempted},
                        {"correct", d.correct},
                        {"score", d.score},
                        {"xp", d.xp},
                        {"closed", d.closed},
                        {"unlocked", d.unlocked}});
    }
    json achievements = json::array();
    for (const Unlock& u : stats.achievements)
        achievements.push_back({{"id", u.id}, {"day_index", u.day_index}, {"tick", u.tick}});
    json by_kind = json::object();
    for (std::size_t k = 0; k < kOrderKindNames.size(); ++k)
        by_kind[std::string(kOrderKindNames[k])] = stats.correct_by_kind[k];
    return {{"xp", stats.xp},
            {"correct_orders_total", stats.correct_orders_total},
            {"correct_by_kind", by_kind},
            {"days", days},
            {"achievements", achievements}};
}

PlayerStats stats_from_json(const json& doc) {
    PlayerStats stats;
    stats.xp = doc.at("xp").get<long long>();
    stats.correct_orders_total = doc.at("correct_orders_total").get<int>();
    const json& by_kind = doc.at("correct_by_kind");
    for (std::size_t k = 0; k < kOrderKindNames.size(); ++k)
        stats.correct_by_kind[k] = by_kind.at(std::string(kOrderKindNames[k])).get<int>();
    for (const json& d : doc.at("days")) {
        DayRecord day;
        day.day_index = d.at("day_index").get<int>();
        day.attempted = d.at("attempted").get<int>();
        day.correct = d.at("correct").get<int>();
        day.score = d.at("score").get<int>();
        day.xp = d.at("xp").get<long long>();
        day.closed = d.at("closed").get<bool>();
        day.unlocked = d.at("unlocked").get<std::vector<std::string>>();
        stats.days.push_back(std::move(day));
    }
    for (const json& u : doc.at("achievements"))
        stats.achievements.push_back(
            {u.at("id").get<std::string>(), u.at("day_index").get<int>(), u.at("tick").get<long long>()});
    return stats;
}

}  // namespace cooking_code
