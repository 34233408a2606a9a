#include "cooking_code/order_lang.hpp"

#include <nlohmann/json.hpp>

namespace cooking_code {

using nlohmann::json;

namespace {

json blocks_to_json(const std::vector<Block>& blocks);

json block_to_json(const Block& block) {
    if (const auto* put = std::get_if<Put>(&block.node)) {
        return {{"put", canonical_token(put->ingredient)}};
    }
    if (const auto* node = std::get_if<If>(&block.node)) {
        return {{"if",
                 {{"has", canonical_token(node->condition.has)},
                  {"then", blocks_to_json(node->then_body)},
                  {"else", blocks_to_json(node->else_body)}}}};
    }
    const auto& node = std::get<Repeat>(block.node);
    return {{"repeat", {{"count", node.count}, {"body", blocks_to_json(node.body)}}}};
}

json blocks_to_json(const std::vector<Block>& blocks) {
    json out = json::array();
    for (const Block& block : blocks) out.push_back(block_to_json(block));
    return out;
}

Ingredient ingredient_field(const json& value, std::string_view where) {
    if (!value.is_string()) throw AstFormatError(std::string(where) + ": ingredient must be a string");
    auto ingredient = ingredient_from_token(value.get<std::string>());
    if (!ingredient) throw AstFormatError(std::string(where) + ": unknown ingredient '" + value.get<std::string>() + "'");
    return *ingredient;
}

std::vector<Block> blocks_from_json(const json& doc);

Block block_from_json(const json& doc) {
    if (!doc.is_object() || doc.size() != 1) throw AstFormatError("block must be an object with exactly one key");
    const std::string key = doc.begin().key();
    const json& value = doc.begin().value();
    if (key == "put") return Put{ingredient_field(value, "put")};
    if (key == "if") {
        if (!value.is_object() || !value.contains("has")) throw AstFormatError("if: missing 'has'");
        If node{Condition{ingredient_field(value.at("has"), "if.has")}, {}, {}};
        if (value.contains("then")) node.then_body = blocks_from_json(value.at("then"));
        if (value.contains("else")) node.else_body = blocks_from_json(value.at("else"));
        return node;
    }
    if (key == "repeat") {
        if (!value.is_object() || !value.contains("count") || !value.contains("body"))
            throw AstFormatError("repeat: needs 'count' and 'body'");
        const json& count = value.at("count");
        if (!count.is_number_integer() || count.get<long long>() < 0 || count.get<long long>() > 1'000'000)
            throw AstFormatError("repeat.count must be a non-negative integer");
        Repeat node{count.get<int>(), blocks_from_json(value.at("body"))};
        if (node.body.empty()) throw AstFormatError("repeat.body must not be empty");
        return node;
    }
    throw AstFormatError("unknown block kind '" + key + "'");
}

std::vector<Block> blocks_from_json(const json& doc) {
    if (!doc.is_array()) throw AstFormatError("block list must be an array");
    std::vector<Block> blocks;
    blocks.reserve(doc.size());
    for (const json& item : doc) blocks.push_back(block_from_json(item));
    return blocks;
}

}  // namespace

json ast_to_json(const OrderAst& ast) { return {{"blocks", blocks_to_json(ast.blocks)}}; }

OrderAst ast_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("blocks")) throw AstFormatError("order: missing 'blocks'");
    OrderAst ast;
    ast.blocks = blocks_from_json(doc.at("blocks"));
    if (ast.blocks.empty()) throw AstFormatError("order: 'blocks' must not be empty");
    return ast;
}

json snapshot_to_json(const InventorySnapshot& snapshot) {
    json out = json::object();
    for (Ingredient ingredient : kAllIngredients)
        out[std::string(canonical_token(ingredient))] = snapshot.count(ingredient);
    return out;
}

InventorySnapshot snapshot_from_json(const json& doc, bool missing_as_zero) {
    if (!doc.is_object()) throw AstFormatError("snapshot must be an object");
    InventorySnapshot snapshot;
    std::array<bool, kIngredientCount> seen{};
    for (const auto& [key, value] : doc.items()) {
        auto ingredient = ingredient_from_token(key);
        if (!ingredient) throw AstFormatError("snapshot: unknown ingredient '" + key + "'");
        if (!value.is_number_integer() || value.get<long long>() < 0 || value.get<long long>() > 1'000'000)
            throw AstFormatError("snapshot: count for '" + key + "' must be a non-negative integer");
        snapshot.set(*ingredient, value.get<int>());
        seen[index_of(*ingredient)] = true;
    }
    if (!missing_as_zero) {
        for (Ingredient ingredient : kAllIngredients)
            if (!seen[index_of(ingredient)])
                throw AstFormatError("snapshot: missing '" + std::string(canonical_token(ingredient)) + "'");
    }
    return snapshot;
}

}  // namespace cooking_code
