#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cooking_code/expected.hpp"
#include "cooking_code/grading.hpp"
#include "cooking_code/order_lang.hpp"

namespace cooking_code {

/// SplitMix64. The whole state is one word, so it serializes trivially.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Unbiased draw in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    bool chance(std::uint64_t numerator, std::uint64_t denominator) noexcept {
        return below(denominator) < numerator;
    }

    std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

/// 1 = sequential, 2 = adds If, 3 = adds Repeat.
class Difficulty {
public:
    explicit Difficulty(int level);
    int level() const noexcept { return level_; }
    friend bool operator==(Difficulty, Difficulty) = default;

private:
    int level_;
};

// min(3, 1 + day / 2)
Difficulty scheduled_difficulty(int day_index);

inline constexpr int kMinOrderLength = 3;
inline constexpr int kMaxOrderLength = 7;
inline constexpr int kMaxNesting = 2;

enum class GenerationError { Unsatisfiable };

Expected<OrderAst, GenerationError> generate_order(Difficulty difficulty, const InventorySnapshot& snapshot,
                                                    SplitMix64& rng);

/// Shortest and longest expansion over every branch assignment.
std::pair<int, int> expansion_length_range(const std::vector<Block>& blocks);

// True when the expansion under `snapshot` needs no more of any ingredient
// than the snapshot holds.
bool assemblable(const OrderAst& order, const InventorySnapshot& snapshot);

enum class OrderKind : std::uint8_t { Sequential, Conditional, Iterative };

std::string_view order_kind_name(OrderKind kind);
// Orders with a Repeat count as iterative even when they also contain an If.
OrderKind order_kind(const OrderAst& order);

enum class AchievementKind : std::uint8_t { Sequential, Conditional, Iterative, DayPerfect };

struct AchievementDef {
    std::string id;
    AchievementKind kind = AchievementKind::Conditional;
    int threshold = 1;
    std::string title_es;
    std::string title_en;

    const std::string& title(Language language) const { return language == Language::Spanish ? title_es : title_en; }
    friend bool operator==(const AchievementDef&, const AchievementDef&) = default;
};

using AchievementCatalog = std::vector<AchievementDef>;

AchievementCatalog default_catalog();
nlohmann::json catalog_to_json(const AchievementCatalog& catalog);
AchievementCatalog catalog_from_json(const nlohmann::json& doc);

struct Unlock {
    std::string id;
    int day_index = 0;
    long long tick = 0;
    friend bool operator==(const Unlock&, const Unlock&) = default;
};

struct DayRecord {
    int day_index = 0;
    int attempted = 0;
    int correct = 0;
    int score = 0;
    long long xp = 0;  // cumulative, as of the latest grade that day
    bool closed = false;
    std::vector<std::string> unlocked;
    friend bool operator==(const DayRecord&, const DayRecord&) = default;
};

struct PlayerStats {
    long long xp = 0;
    int correct_orders_total = 0;
    std::array<int, 3> correct_by_kind{};  // indexed by OrderKind
    std::vector<DayRecord> days;
    std::vector<Unlock> achievements;  // in unlock order

    bool unlocked(std::string_view id) const;
    const DayRecord* day(int day_index) const;
    friend bool operator==(const PlayerStats&, const PlayerStats&) = default;
};

nlohmann::json stats_to_json(const PlayerStats& stats);
PlayerStats stats_from_json(const nlohmann::json& doc);

struct ProgressUpdate {
    PlayerStats stats;
    std::vector<AchievementDef> unlocked;
};

struct StatsClock {
    int day_index = 0;
    long long tick = 0;
};

// Opens the day record if absent.
PlayerStats begin_day(PlayerStats stats, int day_index);

ProgressUpdate record_grade(const GradeReport& report, const OrderAst& order, PlayerStats stats,
                            const AchievementCatalog& catalog, StatsClock when);

// Marks the day closed and evaluates day-level rules (day_perfect).
ProgressUpdate close_day(PlayerStats stats, const AchievementCatalog& catalog, StatsClock when);

struct DaySummary {
    int day_index = 0;
    int attempted = 0;
    int correct = 0;
    int day_score = 0;
    long long xp = 0;
    std::vector<std::string> new_achievements;
    friend bool operator==(const DaySummary&, const DaySummary&) = default;
};

class UnknownDay : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

DaySummary day_summary(const PlayerStats& stats, int day_index);  // throws UnknownDay
nlohmann::json summary_to_json(const DaySummary& summary);

}  // namespace cooking_code
