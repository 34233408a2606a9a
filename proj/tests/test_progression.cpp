#include <doctest.h>

#include <nlohmann/json.hpp>

#include "cooking_code/progression.hpp"
#include "support.hpp"

using namespace cooking_code;

namespace {

GradeReport correct_report(const OrderAst& order) {
    GradeReport r;
    r.category = FeedbackCategory::Correct;
    r.score_delta = order_score(order);
    return r;
}

GradeReport wrong_report() {
    GradeReport r;
    r.category = FeedbackCategory::MissingIngredient;
    return r;
}

// Every branch assignment's expansion, for the bread and length checks.
std::vector<ExpectedStack> all_expansions(const OrderAst& order) {
    std::vector<ExpectedStack> out;
    const std::size_t k = count_if_blocks(order.blocks);
    for (int flip = -1; flip < static_cast<int>(k); ++flip)
        for (const auto& s : {InventorySnapshot::uniform(1), InventorySnapshot{}})
            out.push_back(testing::oracle_expand(order, s, flip));
    return out;
}

}  // namespace

TEST_CASE("generator structure over 1000 seeds per level") {
    const InventorySnapshot pantry = EngineConfig::default_inventory();
    for (int level = 1; level <= 3; ++level) {
        int with_if = 0;
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            SplitMix64 rng(seed);
            auto generated = generate_order(Difficulty(level), pantry, rng);
            REQUIRE(generated);
            const OrderAst& order = *generated;
            INFO("level " << level << " seed " << seed << "\n" << render(order, Language::Spanish));
            const bool has_if = contains_if(order.blocks);
            const bool has_repeat = contains_repeat(order.blocks);
            with_if += has_if;
            if (level == 1) CHECK_FALSE((has_if || has_repeat));
            if (level == 2) CHECK((has_if && !has_repeat));
            if (level == 3) CHECK(has_repeat);
            CHECK(nesting_depth(order.blocks) <= kMaxNesting);

            for (const ExpectedStack& e : all_expansions(order)) {
                REQUIRE(e.items.size() >= 3);
                CHECK(e.items.front().ingredient == Ingredient::BottomBread);
                CHECK(e.items.back().ingredient == Ingredient::TopBread);
                CHECK(e.items.size() <= (level == 1 ? 5u : 7u));
            }
            const ExpectedStack actual = testing::oracle_expand(order, pantry);
            std::array<int, kIngredientCount> need{};
            for (const auto& item : actual.items) ++need[index_of(item.ingredient)];
            for (Ingredient i : kAllIngredients) CHECK(need[index_of(i)] <= pantry.count(i));

            std::function<void(const std::vector<Block>&)> check_loops = [&](const std::vector<Block>& blocks) {
                for (const Block& b : blocks) {
                    if (const auto* r = std::get_if<Repeat>(&b.node)) {
                        CHECK(r->count >= 2);
                        CHECK(r->count <= 3);
                        check_loops(r->body);
                    } else if (const auto* i = std::get_if<If>(&b.node)) {
                        check_loops(i->then_body);
                        check_loops(i->else_body);
                    }
                }
            };
            check_loops(order.blocks);
        }
        if (level == 2) CHECK(with_if == 1000);
    }
}

TEST_CASE("generator: determinism and scarce pantries") {
    const InventorySnapshot pantry = EngineConfig::default_inventory();
    for (int level = 1; level <= 3; ++level) {
        SplitMix64 a(42);
        SplitMix64 b(42);
        for (int n = 0; n < 50; ++n) CHECK(*generate_order(Difficulty(level), pantry, a) ==
                                           *generate_order(Difficulty(level), pantry, b));
    }
    SplitMix64 rng(1);
    auto no_top = pantry;
    no_top.set(Ingredient::TopBread, 0);
    CHECK(generate_order(Difficulty(1), no_top, rng).error() == GenerationError::Unsatisfiable);

    InventorySnapshot thin = InventorySnapshot::uniform(1);
    CHECK(generate_order(Difficulty(3), thin, rng).error() == GenerationError::Unsatisfiable);
    CHECK(generate_order(Difficulty(2), thin, rng));

    // Random pantries: whatever comes out is assemblable.
    SplitMix64 dice(9);
    for (int n = 0; n < 500; ++n) {
        const InventorySnapshot s = testing::random_snapshot(dice, 3);
        const int level = 1 + static_cast<int>(dice.below(3));
        auto order = generate_order(Difficulty(level), s, dice);
        if (order) CHECK(assemblable(*order, s));
    }
}

TEST_CASE("difficulty schedule") {
    CHECK(scheduled_difficulty(0).level() == 1);
    CHECK(scheduled_difficulty(1).level() == 1);
    CHECK(scheduled_difficulty(2).level() == 2);
    CHECK(scheduled_difficulty(3).level() == 2);
    CHECK(scheduled_difficulty(4).level() == 3);
    CHECK(scheduled_difficulty(40).level() == 3);
    CHECK_THROWS(Difficulty(0));
    CHECK_THROWS(Difficulty(4));
}

TEST_CASE("order kinds") {
    CHECK(order_kind(parse("PONER carne")) == OrderKind::Sequential);
    CHECK(order_kind(parse(testing::fig2_text())) == OrderKind::Conditional);
    CHECK(order_kind(parse(testing::fig4_text())) == OrderKind::Iterative);
    CHECK(order_kind(parse("SI HAY queso REPETIR 2 VECES PONER queso FIN FIN")) == OrderKind::Iterative);
}

TEST_CASE("record_grade: conditional badges unlock once each") {
    const AchievementCatalog catalog = default_catalog();
    const OrderAst order = parse(testing::fig2_text());
    PlayerStats stats = begin_day({}, 0);
    std::vector<std::pair<int, std::string>> unlocks;
    for (int n = 1; n <= 12; ++n) {
        auto update = record_grade(correct_report(order), order, std::move(stats), catalog, {0, n});
        stats = std::move(update.stats);
        for (const auto& def : update.unlocked) unlocks.emplace_back(n, def.id);
    }
    CHECK(unlocks == std::vector<std::pair<int, std::string>>{{1, "if_1"}, {10, "if_10"}});
    CHECK(stats.xp == 12 * 15);
    CHECK(stats.correct_by_kind[static_cast<std::size_t>(OrderKind::Conditional)] == 12);
    CHECK(stats.correct_orders_total == 12);

    auto wrong = record_grade(wrong_report(), order, stats, catalog, {0, 20});
    CHECK(wrong.unlocked.empty());
    CHECK(wrong.stats.xp == stats.xp);
    CHECK(wrong.stats.day(0)->attempted == 13);
}

TEST_CASE("day summaries") {
    const AchievementCatalog catalog = default_catalog();
    const OrderAst seq = parse("PONER pan_inferior PONER carne PONER pan_superior");
    PlayerStats stats = begin_day({}, 0);
    for (int n = 0; n < 5; ++n) {
        const GradeReport r = n == 2 ? wrong_report() : correct_report(seq);
        stats = record_grade(r, seq, std::move(stats), catalog, {0, n}).stats;
    }
    stats = close_day(std::move(stats), catalog, {0, 300}).stats;
    const DaySummary day0 = day_summary(stats, 0);
    CHECK(day0.attempted == 5);
    CHECK(day0.correct == 4);
    CHECK(day0.day_score == 40);
    CHECK(day0.xp == 40);
    CHECK(day0.new_achievements == std::vector<std::string>{"seq_1"});

    stats = begin_day(std::move(stats), 1);
    const DaySummary empty = day_summary(stats, 1);
    CHECK(empty.attempted == 0);
    CHECK(empty.correct == 0);
    CHECK(empty.day_score == 0);
    stats = record_grade(correct_report(seq), seq, std::move(stats), catalog, {1, 5}).stats;
    auto closed = close_day(std::move(stats), catalog, {1, 600});
    CHECK(closed.unlocked.size() == 1);
    CHECK(closed.unlocked[0].id == "day_perfect");
    CHECK(day_summary(closed.stats, 1).xp >= day_summary(closed.stats, 0).xp);
    CHECK_THROWS_AS(day_summary(closed.stats, 7), UnknownDay);
}

TEST_CASE("mixed orders count as iterative only") {
    const auto catalog = default_catalog();
    const OrderAst mixed = parse("PONER pan_inferior SI HAY queso PONER queso FIN REPETIR 2 VECES PONER carne FIN "
                                 "PONER pan_superior");
    auto update = record_grade(correct_report(mixed), mixed, {}, catalog, {0, 1});
    CHECK(update.stats.correct_by_kind == std::array<int, 3>{0, 0, 1});
    REQUIRE(update.unlocked.size() == 1);
    CHECK(update.unlocked[0].id == "loop_1");
    CHECK(update.stats.xp == 20);
}

TEST_CASE("catalog and stats JSON") {
    const auto catalog = default_catalog();
    CHECK(catalog_from_json(catalog_to_json(catalog)) == catalog);
    CHECK_THROWS(catalog_from_json(nlohmann::json::parse(R"([{"id":"x","kind":"magic","threshold":1}])")));
    CHECK_THROWS(catalog_from_json(nlohmann::json::parse(R"([{"id":"x","kind":"conditional","threshold":0}])")));

    const OrderAst order = parse(testing::fig2_text());
    PlayerStats stats = record_grade(correct_report(order), order, {}, catalog, {0, 3}).stats;
    CHECK(stats_from_json(stats_to_json(stats)) == stats);
}
