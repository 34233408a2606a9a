#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace cooking_code {

enum class Ingredient : std::uint8_t {
    BottomBread,
    TopBread,
    Meat,
    Cheese,
    Lettuce,
    Ketchup,
};

inline constexpr std::size_t kIngredientCount = 6;

inline constexpr std::array<Ingredient, kIngredientCount> kAllIngredients = {
    Ingredient::BottomBread, Ingredient::TopBread, Ingredient::Meat,
    Ingredient::Cheese,      Ingredient::Lettuce,  Ingredient::Ketchup,
};

enum class Language { Spanish, English };

// Spanish token, e.g. "pan_inferior". This is the form used in JSON.
std::string_view canonical_token(Ingredient ingredient);
// English alias, e.g. "bottom_bread".
std::string_view alias_token(Ingredient ingredient);
std::string_view token(Ingredient ingredient, Language language);
// Learner-facing name with spaces ("pan inferior", "bottom bread").
std::string_view display_name(Ingredient ingredient, Language language);
// Accepts canonical or alias tokens, ASCII case-insensitive.
std::optional<Ingredient> ingredient_from_token(std::string_view text);

std::optional<Language> language_from_code(std::string_view code);  // "es" | "en"

constexpr std::size_t index_of(Ingredient ingredient) noexcept {
    return static_cast<std::size_t>(ingredient);
}

/// Per-ingredient counts. Never negative.
class InventorySnapshot {
public:
    InventorySnapshot() = default;

    static InventorySnapshot uniform(int count);

    int count(Ingredient ingredient) const noexcept { return counts_[index_of(ingredient)]; }
    void set(Ingredient ingredient, int count);
    bool has(Ingredient ingredient) const noexcept { return count(ingredient) >= 1; }

    friend bool operator==(const InventorySnapshot&, const InventorySnapshot&) = default;

private:
    std::array<int, kIngredientCount> counts_{};
};

struct Condition {
    Ingredient has;

    bool holds(const InventorySnapshot& snapshot) const noexcept { return snapshot.has(has); }
    friend bool operator==(const Condition&, const Condition&) = default;
};

struct Block;

struct Put {
    Ingredient ingredient;
    friend bool operator==(const Put&, const Put&) = default;
};

struct If {
    Condition condition;
    std::vector<Block> then_body;
    std::vector<Block> else_body;
    friend bool operator==(const If&, const If&);
};

struct Repeat {
    int count = 1;
    std::vector<Block> body;
    friend bool operator==(const Repeat&, const Repeat&);
};

struct Block {
    std::variant<Put, If, Repeat> node;

    Block(Put p) : node(std::move(p)) {}
    Block(If i) : node(std::move(i)) {}
    Block(Repeat r) : node(std::move(r)) {}

    friend bool operator==(const Block&, const Block&) = default;
};

struct OrderAst {
    std::vector<Block> blocks;
    std::string order_id;

    friend bool operator==(const OrderAst&, const OrderAst&) = default;
};

struct ExpectedItem {
    Ingredient ingredient;
    bool requires_cooked = false;
    friend bool operator==(const ExpectedItem&, const ExpectedItem&) = default;
};

struct ExpectedStack {
    std::vector<ExpectedItem> items;
    friend bool operator==(const ExpectedStack&, const ExpectedStack&) = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, std::string found, std::vector<std::string> expected);

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string& found() const noexcept { return found_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    int line_;
    int column_;
    std::string found_;
    std::vector<std::string> expected_;
};

/// Thrown when an AST JSON document does not follow the interchange schema.
class AstFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

OrderAst parse(std::string_view text);
std::string render(const OrderAst& ast, Language language);

// Every `If` is evaluated against the same snapshot; nothing is consumed.
ExpectedStack expand(const OrderAst& ast, const InventorySnapshot& snapshot);
ExpectedStack expand(const std::vector<Block>& blocks, const InventorySnapshot& snapshot);

/// Number of If nodes in pre-order, which is also the numbering used by
/// expand_with_override.
std::size_t count_if_blocks(const std::vector<Block>& blocks);
bool contains_if(const std::vector<Block>& blocks);
bool contains_repeat(const std::vector<Block>& blocks);
// Top-level If/Repeat is depth 1; a sequence of Puts has depth 0.
int nesting_depth(const std::vector<Block>& blocks);

/// Expansion where the If with pre-order index `flipped_if` takes the branch
/// opposite to what the snapshot dictates.
ExpectedStack expand_with_flip(const OrderAst& ast, const InventorySnapshot& snapshot,
                               std::size_t flipped_if);

nlohmann::json ast_to_json(const OrderAst& ast);
OrderAst ast_from_json(const nlohmann::json& doc);

nlohmann::json snapshot_to_json(const InventorySnapshot& snapshot);
// Requires all six ingredients unless `missing_as_zero`.
InventorySnapshot snapshot_from_json(const nlohmann::json& doc, bool missing_as_zero = false);

}  // namespace cooking_code
