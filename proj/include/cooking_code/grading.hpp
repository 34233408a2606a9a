#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cooking_code/kitchen_engine.hpp"
#include "cooking_code/order_lang.hpp"

namespace cooking_code {

enum class FeedbackCategory : std::uint8_t {
    Correct,
    MissingIngredient,
    ExtraIngredient,
    WrongPosition,
    WrongCookState,
    WrongConditionalBranch,
};

std::string_view category_name(FeedbackCategory category);  // snake_case, as on the wire
std::optional<FeedbackCategory> category_from_name(std::string_view name);

/// One mismatch. A missing item has no `found`; an extra item has no `expected`.
/// `index` is 0-based: into the expected stack when `expected` is set,
/// otherwise into the delivered stack.
struct Defect {
    std::size_t index = 0;
    std::optional<ExpectedItem> expected;
    std::optional<KitchenItem> found;
    friend bool operator==(const Defect&, const Defect&) = default;
};

struct GradeReport {
    FeedbackCategory category = FeedbackCategory::Correct;
    std::vector<Defect> defects;
    std::string message;
    int score_delta = 0;
    // Ingredient of the If whose opposite branch was assembled.
    std::optional<Ingredient> flipped_condition;
    friend bool operator==(const GradeReport&, const GradeReport&) = default;
};

inline constexpr std::size_t kMaxFeedbackLength = 120;

/// Points for a correct delivery: 10, +5 with an If, +5 with a Repeat.
int order_score(const OrderAst& order);

bool item_matches(const ExpectedItem& expected, const KitchenItem& found);

GradeReport grade(const GradeRequest& request, Language language = Language::Spanish);

std::string feedback_text(const GradeReport& report, Language language);

nlohmann::json report_to_json(const GradeReport& report);
GradeReport report_from_json(const nlohmann::json& doc);

}  // namespace cooking_code
