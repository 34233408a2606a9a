#include "cooking_code/order_lang.hpp"

#include <algorithm>
#include <cctype>

namespace cooking_code {

namespace {

struct IngredientNames {
    std::string_view canonical;
    std::string_view alias;
    std::string_view display_es;
    std::string_view display_en;
};

constexpr std::array<IngredientNames, kIngredientCount> kNames = {{
    {"pan_inferior", "bottom_bread", "pan inferior", "bottom bread"},
    {"pan_superior", "top_bread", "pan superior", "top bread"},
    {"carne", "meat", "carne", "meat"},
    {"queso", "cheese", "queso", "cheese"},
    {"lechuga", "lettuce", "lechuga", "lettuce"},
    {"ketchup", "ketchup", "ketchup", "ketchup"},
}};

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) ==
                      std::tolower(static_cast<unsigned char>(y));
           });
}

}  // namespace

std::string_view canonical_token(Ingredient ingredient) { return kNames[index_of(ingredient)].canonical; }

std::string_view alias_token(Ingredient ingredient) { return kNames[index_of(ingredient)].alias; }

std::string_view token(Ingredient ingredient, Language language) {
    return language == Language::Spanish ? canonical_token(ingredient) : alias_token(ingredient);
}

std::string_view display_name(Ingredient ingredient, Language language) {
    const auto& names = kNames[index_of(ingredient)];
    return language == Language::Spanish ? names.display_es : names.display_en;
}

std::optional<Ingredient> ingredient_from_token(std::string_view text) {
    for (Ingredient ingredient : kAllIngredients) {
        const auto& names = kNames[index_of(ingredient)];
        if (iequals(text, names.canonical) || iequals(text, names.alias)) return ingredient;
    }
    return std::nullopt;
}

std::optional<Language> language_from_code(std::string_view code) {
    if (iequals(code, "es")) return Language::Spanish;
    if (iequals(code, "en")) return Language::English;
    return std::nullopt;
}

InventorySnapshot InventorySnapshot::uniform(int count) {
    InventorySnapshot snapshot;
    for (Ingredient ingredient : kAllIngredients) snapshot.set(ingredient, count);
    return snapshot;
}

void InventorySnapshot::set(Ingredient ingredient, int count) {
    if (count < 0) throw std::invalid_argument("inventory counts cannot be negative");
    counts_[index_of(ingredient)] = count;
}

}  // namespace cooking_code
