#include "cooking_code/grading.hpp"

#include <algorithm>
#include <array>

#include <nlohmann/json.hpp>

namespace cooking_code {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 6> kCategoryNames = {
    "correct",        "missing_ingredient", "extra_ingredient",
    "wrong_position", "wrong_cook_state",   "wrong_conditional_branch",
};

// Pre-order lookup matching the numbering used by expand_with_flip.
const If* find_if_block(const std::vector<Block>& blocks, std::size_t& remaining) {
    for (const Block& block : blocks) {
        if (const auto* node = std::get_if<If>(&block.node)) {
            if (remaining == 0) return node;
            --remaining;
            if (const If* hit = find_if_block(node->then_body, remaining)) return hit;
            if (const If* hit = find_if_block(node->else_body, remaining)) return hit;
        } else if (const auto* node = std::get_if<Repeat>(&block.node)) {
            if (const If* hit = find_if_block(node->body, remaining)) return hit;
        }
    }
    return nullptr;
}

bool stacks_match(const std::vector<ExpectedItem>& expected, const std::vector<KitchenItem>& found) {
    return expected.size() == found.size() &&
           std::equal(expected.begin(), expected.end(), found.begin(), item_matches);
}

// Longest common subsequence on ingredient identity. Matched pairs with the
// wrong cook state, unmatched expected items and unmatched delivered items
// become defects, in stack order.
std::vector<Defect> align_defects(const std::vector<ExpectedItem>& expected, const std::vector<KitchenItem>& found) {
    const std::size_t m = expected.size();
    const std::size_t n = found.size();
    std::vector<std::vector<int>> suffix(m + 1, std::vector<int>(n + 1, 0));
    for (std::size_t i = m; i-- > 0;) {
        for (std::size_t j = n; j-- > 0;) {
            suffix[i][j] = expected[i].ingredient == found[j].ingredient
                               ? suffix[i + 1][j + 1] + 1
                               : std::max(suffix[i + 1][j], suffix[i][j + 1]);
        }
    }
    std::vector<Defect> defects;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < m || j < n) {
        if (i < m && j < n && expected[i].ingredient == found[j].ingredient &&
            suffix[i][j] == suffix[i + 1][j + 1] + 1) {
            if (!item_matches(expected[i], found[j])) defects.push_back({i, expected[i], found[j]});
            ++i;
            ++j;
        } else if (j == n || (i < m && suffix[i + 1][j] >= suffix[i][j + 1])) {
            defects.push_back({i, expected[i], std::nullopt});
            ++i;
        } else {
            defects.push_back({j, std::nullopt, found[j]});
            ++j;
        }
    }
    return defects;
}

}  // namespace

std::string_view category_name(FeedbackCategory category) { return kCategoryNames[static_cast<std::size_t>(category)]; }

std::optional<FeedbackCategory> category_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kCategoryNames.size(); ++i)
        if (kCategoryNames[i] == name) return static_cast<FeedbackCategory>(i);
    return std::nullopt;
}

int order_score(const OrderAst& order) {
    int score = 10;
    if (contains_if(order.blocks)) score += 5;
    if (contains_repeat(order.blocks)) score += 5;
    return score;
}

bool item_matches(const ExpectedItem& expected, const KitchenItem& found) {
    if (expected.ingredient != found.ingredient) return false;
    return expected.requires_cooked ? found.cook == CookPhase::Cooked : found.cook == CookPhase::NotApplicable;
}

GradeReport grade(const GradeRequest& request, Language language) {
    const ExpectedStack expected = expand(request.order, request.snapshot);
    const auto& found = request.delivered.items;

    GradeReport report;
    if (stacks_match(expected.items, found)) {
        report.category = FeedbackCategory::Correct;
        report.score_delta = order_score(request.order);
        report.message = feedback_text(report, language);
        return report;
    }

    report.defects = align_defects(expected.items, found);
    const bool cook_defect = std::any_of(report.defects.begin(), report.defects.end(),
                                         [](const Defect& d) { return d.expected && d.found; });

    std::optional<Ingredient> flipped;
    const std::size_t if_count = count_if_blocks(request.order.blocks);
    for (std::size_t k = 0; k < if_count && !flipped; ++k) {
        if (stacks_match(expand_with_flip(request.order, request.snapshot, k).items, found)) {
            std::size_t remaining = k;
            flipped = find_if_block(request.order.blocks, remaining)->condition.has;
        }
    }

    std::array<int, kIngredientCount> balance{};  // expected minus delivered
    for (const auto& item : expected.items) ++balance[index_of(item.ingredient)];
    for (const auto& item : found) --balance[index_of(item.ingredient)];
    const bool missing = std::any_of(balance.begin(), balance.end(), [](int b) { return b > 0; });
    const bool extra = std::any_of(balance.begin(), balance.end(), [](int b) { return b < 0; });

    if (cook_defect) {
        report.category = FeedbackCategory::WrongCookState;
    } else if (flipped) {
        report.category = FeedbackCategory::WrongConditionalBranch;
        report.flipped_condition = flipped;
    } else if (missing) {
        report.category = FeedbackCategory::MissingIngredient;
        // Lead with a defect whose ingredient is actually short.
        std::stable_partition(report.defects.begin(), report.defects.end(), [&](const Defect& d) {
            return d.expected && !d.found && balance[index_of(d.expected->ingredient)] > 0;
        });
    } else if (extra) {
        report.category = FeedbackCategory::ExtraIngredient;
        std::stable_partition(report.defects.begin(), report.defects.end(), [&](const Defect& d) {
            return !d.expected && d.found && balance[index_of(d.found->ingredient)] < 0;
        });
    } else {
        report.category = FeedbackCategory::WrongPosition;
        std::stable_partition(report.defects.begin(), report.defects.end(),
                              [](const Defect& d) { return d.expected && !d.found; });
    }
    if (report.category == FeedbackCategory::WrongCookState) {
        std::stable_partition(report.defects.begin(), report.defects.end(),
                              [](const Defect& d) { return d.expected && d.found; });
    }
    report.score_delta = 0;
    report.message = feedback_text(report, language);
    return report;
}

json report_to_json(const GradeReport& report) {
    json defects = json::array();
    for (const Defect& d : report.defects) {
        json entry = {
            {"index", d.index},
            {"expected", d.expected ? json(canonical_token(d.expected->ingredient)) : json(nullptr)},
            {"found", d.found ? json(canonical_token(d.found->ingredient)) : json(nullptr)},
        };
        if (d.found && d.found->ingredient == Ingredient::Meat) entry["found_cook"] = cook_phase_name(d.found->cook);
        defects.push_back(std::move(entry));
    }
    json out = {
        {"category", category_name(report.category)},
        {"defects", defects},
        {"message", report.message},
        {"score_delta", report.score_delta},
    };
    if (report.flipped_condition) out["condition"] = canonical_token(*report.flipped_condition);
    return out;
}

GradeReport report_from_json(const json& doc) {
    GradeReport report;
    const auto category = category_from_name(doc.at("category").get<std::string>());
    if (!category) throw AstFormatError("report: unknown category");
    report.category = *category;
    report.message = doc.at("message").get<std::string>();
    report.score_delta = doc.at("score_delta").get<int>();
    auto ingredient_of = [](const json& value) {
        auto ingredient = ingredient_from_token(value.get<std::string>());
        if (!ingredient) throw AstFormatError("report: unknown ingredient");
        return *ingredient;
    };
    for (const json& entry : doc.at("defects")) {
        Defect d;
        d.index = entry.at("index").get<std::size_t>();
        if (!entry.at("expected").is_null()) {
            const Ingredient ingredient = ingredient_of(entry.at("expected"));
            d.expected = ExpectedItem{ingredient, ingredient == Ingredient::Meat};
        }
        if (!entry.at("found").is_null()) {
            KitchenItem item = KitchenItem::fresh(ingredient_of(entry.at("found")));
            if (entry.contains("found_cook")) {
                auto phase = cook_phase_from_name(entry.at("found_cook").get<std::string>());
                if (!phase) throw AstFormatError("report: bad found_cook");
                item.cook = *phase;
            }
            d.found = item;
        }
        report.defects.push_back(d);
    }
    if (doc.contains("condition")) report.flipped_condition = ingredient_of(doc.at("condition"));
    return report;
}

}  // namespace cooking_code
